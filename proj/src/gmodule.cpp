#include "galmod/gmodule.hpp"

#include <random>

namespace galmod {

GModuleLattice make_module(const FiniteGroup& g, std::size_t rank, std::vector<QMatrix> action,
                           const ZLattice& lat) {
    std::size_t n = g.order(), m = lat.ambient();
    if (rank == 0 || m != rank * n) throw error("module: ambient dimension must be rank * |G|");
    if (action.size() != n) throw error("module: one action matrix per group element required");
    for (const auto& a : action)
        if (a.rows() != m || a.cols() != m) throw error("module: action matrix shape mismatch");
    if (!(action[0] == QMatrix::identity(m))) throw error("module: identity must act trivially");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (!(action[a] * action[b] == action[g.mul(a, b)]))
                throw error("module: action is not a group homomorphism");
    // V must be a free Q[G]-module, equivalently carry the regular character
    for (std::size_t a = 1; a < n; ++a) {
        Rat tr(0);
        for (std::size_t i = 0; i < m; ++i) tr += action[a].at(i, i);
        if (tr != 0) throw error("module: ambient space is not free over the group algebra");
    }
    if (lat.rank() != m) throw error("module: lattice must have full rank");
    for (std::size_t a = 1; a < n; ++a) {
        QMatrix t = action[a].transpose();
        for (std::size_t i = 0; i < m; ++i)
            if (!lat.contains(row_times(lat.basis_row(i), t)))
                throw error("module: lattice is not stable under the group action");
    }
    return {g, rank, std::move(action), lat};
}

GModuleLattice regular_module(const FiniteGroup& g, std::size_t rank) {
    std::size_t n = g.order(), m = rank * n;
    std::vector<QMatrix> action(n, QMatrix(m, m));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t k = 0; k < rank; ++k)
            for (std::size_t t = 0; t < n; ++t)
                action[s].at(k * n + g.mul(s, t), k * n + t) = 1;
    return make_module(g, rank, std::move(action), ZLattice::standard(m));
}

QMatrix action_matrix(const GModuleLattice& m, const std::vector<Rat>& lambda) {
    if (lambda.size() != static_cast<std::size_t>(m.group.order()))
        throw error("action_matrix: wrong coefficient count");
    QMatrix r(m.dim(), m.dim());
    for (std::size_t s = 0; s < lambda.size(); ++s) {
        if (lambda[s] == 0) continue;
        r = r + m.action[s].scaled(lambda[s]);
    }
    return r;
}

std::vector<Rat> act_on(const GModuleLattice& m, const std::vector<Rat>& lambda,
                        const std::vector<Rat>& x) {
    std::vector<Rat> out(m.dim(), Rat(0));
    for (std::size_t s = 0; s < lambda.size(); ++s) {
        if (lambda[s] == 0) continue;
        auto y = apply_col(m.action[s], x);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += lambda[s] * y[i];
    }
    return out;
}

Order make_order(const FiniteGroup& g, const ZLattice& lat) {
    std::size_t n = g.order();
    if (lat.ambient() != n || lat.rank() != n) throw error("order: full rank in Q[G] required");
    if (!lat.contains(ga_one(g))) throw error("order: 1 not in the lattice");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!lat.contains(ga_mul(g, lat.basis_row(i), lat.basis_row(j))))
                throw error("order: lattice is not closed under multiplication");
    return {g, lat};
}

PairingData trace_pairing(const FiniteGroup& g, std::size_t d) {
    std::size_t n = g.order();
    PairingData p{g, d, QMatrix(n * d, n * d)};
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t s = 0; s < n; ++s)
            p.gram.at(k * n + s, k * n + g.inverse(s)) = 1;
    return p;
}

Rat trace_pair(const FiniteGroup& g, const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::size_t n = g.order();
    if (a.size() != n || b.size() != n) throw error("trace_pair: size mismatch");
    Rat t(0);
    for (std::size_t s = 0; s < n; ++s) t += a[s] * b[g.inverse(s)];
    return t;
}

Rat s_pair(const PairingData& p, const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::size_t n = p.group.order();
    if (a.size() != n * p.d || b.size() != n * p.d) throw error("s_pair: size mismatch");
    Rat t(0);
    for (std::size_t k = 0; k < p.d; ++k)
        for (std::size_t s = 0; s < n; ++s) t += a[k * n + s] * b[k * n + p.group.inverse(s)];
    return t;
}

ZLattice dual_lattice(const ZLattice& m, const PairingData& p) {
    std::size_t dim = p.group.order() * p.d;
    if (m.ambient() != dim || m.rank() != dim) throw error("dual_lattice: full rank required");
    QMatrix bs = m.basis_matrix() * p.gram;
    QMatrix inv = bs.inverse();  // dual basis rows are the columns
    std::vector<std::vector<Rat>> rows;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Rat> r(dim);
        for (std::size_t i = 0; i < dim; ++i) r[i] = inv.at(i, j);
        rows.push_back(std::move(r));
    }
    return ZLattice::from_rows(dim, rows);
}

std::vector<Rat> pairing_map(const PairingData& p, const std::vector<Rat>& mu,
                             const std::vector<Rat>& nu) {
    std::size_t n = p.group.order();
    if (mu.size() != n * p.d || nu.size() != n * p.d) throw error("pairing_map: size mismatch");
    std::vector<Rat> out(n, Rat(0));
    for (std::size_t gidx = 0; gidx < n; ++gidx) {
        // s(g mu, nu): (g mu)_k has coefficient of rho equal to mu_k at g^-1 rho
        Rat v(0);
        for (std::size_t k = 0; k < p.d; ++k)
            for (std::size_t rho = 0; rho < n; ++rho)
                v += mu[k * n + p.group.mul(p.group.inverse(gidx), rho)] *
                     nu[k * n + p.group.inverse(rho)];
        out[p.group.inverse(gidx)] += v;
    }
    return out;
}

std::vector<Rat> tuple_left_mult(const PairingData& p, const std::vector<Rat>& delta,
                                 const std::vector<Rat>& mu) {
    std::size_t n = p.group.order();
    std::vector<Rat> out(n * p.d, Rat(0));
    for (std::size_t k = 0; k < p.d; ++k) {
        std::vector<Rat> part(mu.begin() + k * n, mu.begin() + (k + 1) * n);
        auto prod = ga_mul(p.group, delta, part);
        for (std::size_t s = 0; s < n; ++s) out[k * n + s] = prod[s];
    }
    return out;
}

namespace {

// Free-basis coordinates: rows (k, sigma) of the returned matrix hold
// sigma(v_k), so a flat tuple lambda maps to the ambient vector lambda * T.
QMatrix tuple_to_ambient(const GModuleLattice& x, const std::vector<std::vector<Rat>>& vs) {
    std::size_t n = x.group.order(), m = x.dim();
    QMatrix t(m, m);
    for (std::size_t k = 0; k < vs.size(); ++k)
        for (std::size_t s = 0; s < n; ++s)
            t.set_row(k * n + s, row_times(vs[k], x.action[s].transpose()));
    return t;
}

}  // namespace

QMatrix free_basis_matrix(const GModuleLattice& x, std::uint64_t seed) {
    std::size_t d = x.rank, m = x.dim();
    // random small combinations of X's rows until the G-orbit spans
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::vector<Rat>> vs;
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<Rat> v(m, Rat(0));
            for (std::size_t i = 0; i < m; ++i) {
                Rat c(coeff(rng));
                if (c == 0) continue;
                auto b = x.lat.basis_row(i);
                for (std::size_t j = 0; j < m; ++j) v[j] += c * b[j];
            }
            vs.push_back(std::move(v));
        }
        QMatrix t = tuple_to_ambient(x, vs);
        if (t.rank() == m) return t;
    }
    throw error("free_basis_matrix: no free basis found");
}

Order associated_order(const GModuleLattice& x, const GModuleLattice& y, std::uint64_t seed) {
    if (!(x.group == y.group) || x.rank != y.rank || x.dim() != y.dim())
        throw error("associated_order: modules live in different ambient spaces");
    for (std::size_t s = 0; s < x.action.size(); ++s)
        if (!(x.action[s] == y.action[s]))
            throw error("associated_order: modules carry different actions");
    std::size_t n = x.group.order(), d = x.rank, m = x.dim();

    QMatrix t = free_basis_matrix(x, seed);
    QMatrix tinv = t.inverse();

    PairingData pd = trace_pairing(x.group, d);
    ZLattice xt = lattice_apply(x.lat, tinv);
    ZLattice yt = lattice_apply(y.lat, tinv);
    ZLattice ydual = dual_lattice(yt, pd);

    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            rows.push_back(pairing_map(pd, xt.basis_row(i), ydual.basis_row(j)));
    ZLattice image = ZLattice::from_rows(n, rows);
    ZLattice result = dual_lattice(image, trace_pairing(x.group, 1));

    if (x.lat == y.lat) return make_order(x.group, result);
    return {x.group, result};
}

Order conductor(const Order& a, const Order& m) {
    if (!(a.group == m.group)) throw error("conductor: different groups");
    if (!m.lat.contains(a.lat)) throw error("conductor: first order must lie inside the second");
    const FiniteGroup& g = a.group;
    std::size_t n = g.order();
    // left translation action on Q[G] itself
    std::vector<QMatrix> action(n, QMatrix(n, n));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) action[s].at(g.mul(s, t), t) = 1;
    GModuleLattice xm = make_module(g, 1, action, m.lat);
    GModuleLattice xa = make_module(g, 1, std::move(action), a.lat);
    Order c = associated_order(xm, xa);
    if (!a.lat.contains(c.lat)) throw error("conductor: result not inside the order");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!c.lat.contains(ga_mul(g, m.lat.basis_row(i), c.lat.basis_row(j))))
                throw error("conductor: result is not two-sided");
            if (!c.lat.contains(ga_mul(g, c.lat.basis_row(j), m.lat.basis_row(i))))
                throw error("conductor: result is not two-sided");
        }
    return c;
}

ZLattice order_span(const Order& a, const GModuleLattice& x,
                    const std::vector<std::vector<Rat>>& alphas) {
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < a.lat.rank(); ++i) {
        auto lam = a.lat.basis_row(i);
        for (const auto& al : alphas) rows.push_back(act_on(x, lam, al));
    }
    return ZLattice::from_rows(x.dim(), rows);
}

}  // namespace galmod
