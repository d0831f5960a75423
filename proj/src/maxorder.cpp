#include "galmod/maxorder.hpp"

namespace galmod {

namespace {

// Block coordinates of an n x n matrix over F: entry (r, c) occupies the
// degree-sized chunk starting at (r*n + c)*deg, in power coordinates.  This
// matches the layout the splitting map uses inside each component.
std::vector<Rat> fmat_flat(const FMat& m) {
    std::size_t n = m.rows(), deg = m.field().degree();
    std::vector<Rat> out(n * n * deg, Rat(0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t t = 0; t < deg; ++t) out[(r * n + c) * deg + t] = m.at(r, c).c[t];
    return out;
}

FMat fmat_of_slice(const NumberField& f, std::size_t n, const std::vector<Rat>& v,
                   std::size_t off) {
    std::size_t deg = f.degree();
    FMat m(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<Rat> coef(deg);
            for (std::size_t t = 0; t < deg; ++t) coef[t] = v[off + (r * n + c) * deg + t];
            m.at(r, c) = FieldElem{f, std::move(coef)};
        }
    return m;
}

// Integer row vector x with x * m = target, if one exists.
std::optional<std::vector<Int>> solve_int_row(const QMatrix& m, const std::vector<Rat>& target) {
    std::size_t rows = m.rows(), cols = m.cols();
    Int den(1);
    auto fold = [&](const Rat& q) { Int d = q.get_den(); den = den / gcd(den, d) * d; };
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) fold(m.at(i, j));
    for (const Rat& q : target) fold(q);
    IntMat mi(rows, std::vector<Int>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) mi[i][j] = num(m.at(i, j) * Rat(den));
    std::vector<Int> ti(cols);
    for (std::size_t j = 0; j < cols; ++j) ti[j] = num(target[j] * Rat(den));

    HnfTransform ht = hnf_with_transform(mi);
    std::vector<Int> res = ti, y(ht.rank, Int(0));
    for (std::size_t r = 0; r < ht.rank; ++r) {
        std::size_t p = 0;
        while (p < cols && ht.h[r][p] == 0) ++p;
        if (p == cols) break;
        if (res[p] % ht.h[r][p] != 0) return std::nullopt;
        y[r] = res[p] / ht.h[r][p];
        for (std::size_t j = 0; j < cols; ++j) res[j] -= y[r] * ht.h[r][j];
    }
    for (const Int& v : res)
        if (v != 0) return std::nullopt;
    std::vector<Int> x(rows, Int(0));
    for (std::size_t r = 0; r < ht.rank; ++r)
        for (std::size_t t = 0; t < rows; ++t) x[t] += y[r] * ht.u[r][t];
    return x;
}

FieldElem ib_elem(const NumberField& f, std::size_t u) {
    return FieldElem{f, f.integral_basis().row(u)};
}

}  // namespace

SplitModule split_module(const GModuleLattice& x, const Wedderburn& w, std::uint64_t seed) {
    if (!(x.group == w.group)) throw error("split_module: group mismatch");
    std::size_t n = w.group.order(), d = x.rank, m = x.dim();
    QMatrix t = free_basis_matrix(x, seed);
    QMatrix split(m, m), unsplit(m, m);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                split.at(k * n + i, k * n + j) = w.to_flat.at(i, j);
                unsplit.at(k * n + i, k * n + j) = w.from_flat.at(i, j);
            }
    SplitModule out{x, t.inverse() * split, unsplit * t, {}};
    out.x_flat = lattice_apply(x.lat, out.to_tuple);
    return out;
}

std::vector<std::size_t> component_cols(const Wedderburn& w, std::size_t comp, std::size_t d) {
    std::size_t n = w.group.order();
    const WedderburnComponent& c = w.comps.at(comp);
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < c.qdim(); ++j) cols.push_back(k * n + c.offset + j);
    return cols;
}

std::vector<std::vector<FieldElem>> steinitz_free_basis(const NumberField& f, std::size_t r,
                                                        const ZLattice& l) {
    std::size_t deg = f.degree();
    if (l.ambient() != r * deg) throw error("steinitz_free_basis: ambient size mismatch");
    auto pack = [&](const std::vector<FieldElem>& v) {
        std::vector<Rat> row(r * deg);
        for (std::size_t p = 0; p < r; ++p) {
            auto c = nf_to_integral(v[p]);
            for (std::size_t t = 0; t < deg; ++t) row[p * deg + t] = c[t];
        }
        return row;
    };
    std::vector<std::vector<FieldElem>> gens;
    for (std::size_t i = 0; i < l.rank(); ++i) {
        auto row = l.basis_row(i);
        std::vector<FieldElem> v;
        for (std::size_t p = 0; p < r; ++p)
            v.push_back(nf_from_integral(
                f, std::vector<Rat>(row.begin() + p * deg, row.begin() + (p + 1) * deg)));
        gens.push_back(std::move(v));
    }
    for (const auto& v : gens)
        for (std::size_t u = 0; u < deg; ++u) {
            std::vector<FieldElem> sv;
            for (const FieldElem& e : v) sv.push_back(nf_mul(ib_elem(f, u), e));
            if (!l.contains(pack(sv))) throw error("steinitz_free_basis: not an O_F-module");
        }

    std::vector<std::vector<FieldElem>> basis;
    for (std::size_t p = 0; p < r; ++p) {
        // all surviving generators vanish at positions before p
        std::vector<FieldElem> comps;
        for (const auto& v : gens)
            if (!nf_is_zero(v[p])) comps.push_back(v[p]);
        if (comps.empty()) continue;
        FieldElem gp = principal_gen(ideal_from_generators(f, comps));

        QMatrix m(gens.size() * deg, deg);
        for (std::size_t t = 0; t < gens.size(); ++t)
            for (std::size_t u = 0; u < deg; ++u) {
                auto c = nf_to_integral(nf_mul(ib_elem(f, u), gens[t][p]));
                for (std::size_t j = 0; j < deg; ++j) m.at(t * deg + u, j) = c[j];
            }
        auto sol = solve_int_row(m, nf_to_integral(gp));
        if (!sol) throw error("steinitz_free_basis: generator not an integral combination");
        std::vector<FieldElem> z(r, nf_zero(f));
        for (std::size_t t = 0; t < gens.size(); ++t) {
            FieldElem ct = nf_zero(f);
            for (std::size_t u = 0; u < deg; ++u)
                ct = nf_add(ct, nf_mul_rat(ib_elem(f, u), Rat((*sol)[t * deg + u])));
            for (std::size_t j = 0; j < r; ++j) z[j] = nf_add(z[j], nf_mul(ct, gens[t][j]));
        }
        if (!nf_eq(z[p], gp)) throw error("steinitz_free_basis: pivot assembly failed");

        for (auto& v : gens) {
            if (nf_is_zero(v[p])) continue;
            FieldElem q = nf_div(v[p], gp);
            if (!nf_is_integral(q))
                throw error("steinitz_free_basis: coordinate ideal misses its generator");
            for (std::size_t j = 0; j < r; ++j) v[j] = nf_sub(v[j], nf_mul(q, z[j]));
        }
        basis.push_back(std::move(z));
        std::erase_if(gens, [](const std::vector<FieldElem>& v) {
            for (const FieldElem& e : v)
                if (!nf_is_zero(e)) return false;
            return true;
        });
    }
    if (!gens.empty()) throw error("steinitz_free_basis: unreduced generators left over");

    std::vector<std::vector<Rat>> rows;
    for (const auto& z : basis)
        for (std::size_t u = 0; u < deg; ++u) {
            std::vector<FieldElem> sv;
            for (const FieldElem& e : z) sv.push_back(nf_mul(ib_elem(f, u), e));
            rows.push_back(pack(sv));
        }
    if (!(ZLattice::from_rows(r * deg, rows) == l))
        throw error("steinitz_free_basis: basis does not span the module");
    return basis;
}

MaximalOrderData maximal_order_containing(const Order& a, const Wedderburn& w) {
    if (!(a.group == w.group)) throw error("maximal_order_containing: group mismatch");
    const FiniteGroup& g = a.group;
    std::size_t n = g.order();

    MaximalOrderData out{w, a, {}, {}, {}};
    std::vector<std::vector<Rat>> mrows;
    for (std::size_t i = 0; i < w.comps.size(); ++i) {
        const WedderburnComponent& c = w.comps[i];
        const NumberField& f = c.field;
        std::size_t nsz = c.dim, deg = f.degree(), qd = c.qdim();

        std::vector<FMat> imgs;
        for (std::size_t j = 0; j < n; ++j)
            imgs.push_back(block_of_flat(w, i, flat_of(w, a.lat.basis_row(j))));

        // column module of the image order inside F^nsz
        std::vector<std::vector<Rat>> zrows;
        for (const FMat& b : imgs)
            for (std::size_t u = 0; u < deg; ++u)
                for (std::size_t col = 0; col < nsz; ++col) {
                    std::vector<Rat> row(nsz * deg);
                    for (std::size_t p = 0; p < nsz; ++p) {
                        auto cc = nf_to_integral(nf_mul(ib_elem(f, u), b.at(p, col)));
                        for (std::size_t t = 0; t < deg; ++t) row[p * deg + t] = cc[t];
                    }
                    zrows.push_back(std::move(row));
                }
        auto zbasis = steinitz_free_basis(f, nsz, ZLattice::from_rows(nsz * deg, zrows));
        if (zbasis.size() != nsz)
            throw error("maximal_order_containing: column module is not full");
        FMat s(f, nsz, nsz);
        for (std::size_t k = 0; k < nsz; ++k)
            for (std::size_t p = 0; p < nsz; ++p) s.at(p, k) = zbasis[k][p];
        FMat sinv = s.inverse();

        // conjugated matrix order as a lattice in block coordinates
        std::vector<std::vector<Rat>> brows;
        for (std::size_t u = 0; u < deg; ++u)
            for (std::size_t k = 0; k < nsz; ++k)
                for (std::size_t l = 0; l < nsz; ++l) {
                    FMat e(f, nsz, nsz);
                    e.at(k, l) = ib_elem(f, u);
                    brows.push_back(fmat_flat(s * e * sinv));
                }
        ZLattice block = ZLattice::from_rows(qd, brows);
        for (const FMat& b : imgs)
            if (!block.contains(fmat_flat(b)))
                throw error("maximal_order_containing: input order escapes its enlargement");

        for (std::size_t j = 0; j < block.rank(); ++j) {
            std::vector<Rat> flat(n, Rat(0));
            auto row = block.basis_row(j);
            for (std::size_t t = 0; t < qd; ++t) flat[c.offset + t] = row[t];
            mrows.push_back(algebra_of_flat(w, flat));
        }
        out.comps.push_back(
            NiceComponent{std::move(s), std::move(sinv), whole_ring(f), std::move(block), {}, {}, {}});
    }
    out.m = make_order(g, ZLattice::from_rows(n, mrows));
    if (!out.m.lat.contains(a.lat))
        throw error("maximal_order_containing: order not inside the maximal order");
    Rat idx = lattice_index(out.m.lat, a.lat);
    if (idx.get_den() != 1 || idx <= 0)
        throw error("maximal_order_containing: index of the order is not a positive integer");
    out.cond = conductor(a, out.m);

    ZLattice condflat = lattice_apply(out.cond.lat, w.to_flat);
    for (std::size_t i = 0; i < w.comps.size(); ++i) {
        const WedderburnComponent& c = w.comps[i];
        const NumberField& f = c.field;
        std::size_t nsz = c.dim, deg = f.degree(), qd = c.qdim();
        NiceComponent& nc = out.comps[i];

        std::vector<std::vector<Rat>> crows;
        for (std::size_t j = 0; j < condflat.rank(); ++j) {
            auto row = condflat.basis_row(j);
            crows.emplace_back(row.begin() + c.offset, row.begin() + c.offset + qd);
        }
        nc.cond_block = ZLattice::from_rows(qd, crows);

        // central line: preimage of cond_block under c -> c * identity
        QMatrix cmat(deg, qd);
        for (std::size_t u = 0; u < deg; ++u)
            for (std::size_t k = 0; k < nsz; ++k)
                for (std::size_t t = 0; t < deg; ++t)
                    cmat.at(u, (k * nsz + k) * deg + t) = f.integral_basis().at(u, t);
        nc.g = ideal_from_lattice(
            f, integrality_lattice(cmat * nc.cond_block.basis_matrix().inverse()));
        if (!ideal_is_integral(nc.g))
            throw error("maximal_order_containing: central conductor ideal not integral");

        std::vector<std::vector<Rat>> frows;
        for (std::size_t j = 0; j < nc.g.lat.rank(); ++j) {
            FieldElem gg = nf_from_integral(f, nc.g.lat.basis_row(j));
            for (std::size_t b = 0; b < nc.block.rank(); ++b)
                frows.push_back(
                    fmat_flat(fmat_of_slice(f, nsz, nc.block.basis_row(b), 0).scaled(gg)));
        }
        nc.f_block = ZLattice::from_rows(qd, frows);
        if (!nc.cond_block.contains(nc.f_block))
            throw error("maximal_order_containing: central ideal escapes the conductor");
    }
    return out;
}

ComponentFreeBasis component_free_basis(const MaximalOrderData& mo, std::size_t comp,
                                        const SplitModule& sm) {
    const Wedderburn& w = mo.w;
    if (!(sm.x.group == w.group)) throw error("component_free_basis: group mismatch");
    const WedderburnComponent& c = w.comps.at(comp);
    const NiceComponent& nc = mo.comps.at(comp);
    const NumberField& f = c.field;
    std::size_t nsz = c.dim, deg = f.degree(), qd = c.qdim();
    std::size_t d = sm.x.rank, m = sm.x.dim();
    auto cols = component_cols(w, comp, d);

    // component slice of X, then its span under the component order
    std::vector<std::vector<Rat>> prows;
    for (std::size_t j = 0; j < sm.x_flat.rank(); ++j) {
        auto row = sm.x_flat.basis_row(j);
        std::vector<Rat> v(cols.size());
        for (std::size_t t = 0; t < cols.size(); ++t) v[t] = row[cols[t]];
        prows.push_back(std::move(v));
    }
    ZLattice px = ZLattice::from_rows(cols.size(), prows);
    std::vector<std::vector<Rat>> mxrows;
    for (std::size_t b = 0; b < nc.block.rank(); ++b) {
        FMat mb = fmat_of_slice(f, nsz, nc.block.basis_row(b), 0);
        for (std::size_t j = 0; j < px.rank(); ++j) {
            auto row = px.basis_row(j);
            std::vector<Rat> v;
            for (std::size_t k = 0; k < d; ++k) {
                auto prod = fmat_flat(mb * fmat_of_slice(f, nsz, row, k * qd));
                v.insert(v.end(), prod.begin(), prod.end());
            }
            mxrows.push_back(std::move(v));
        }
    }
    ZLattice mx = ZLattice::from_rows(cols.size(), mxrows);
    if (mx.rank() != d * qd)
        throw NotFreeOverMaximal("component_free_basis: component of M X is not full");

    // conjugate so the order becomes the plain matrix order, cut out row one
    std::vector<std::vector<Rat>> erows;
    for (std::size_t j = 0; j < mx.rank(); ++j) {
        auto row = mx.basis_row(j);
        std::vector<Rat> v(d * nsz * deg);
        for (std::size_t k = 0; k < d; ++k) {
            FMat y = nc.s_inv * fmat_of_slice(f, nsz, row, k * qd);
            for (std::size_t l = 0; l < nsz; ++l) {
                auto cc = nf_to_integral(y.at(0, l));
                for (std::size_t t = 0; t < deg; ++t) v[(k * nsz + l) * deg + t] = cc[t];
            }
        }
        erows.push_back(std::move(v));
    }
    auto omegas = steinitz_free_basis(f, d * nsz, ZLattice::from_rows(d * nsz * deg, erows));
    if (omegas.size() != d * nsz)
        throw NotFreeOverMaximal("component_free_basis: row-one module has deficient rank");

    ComponentFreeBasis out{comp, std::move(mx), std::move(omegas), {}, {}};
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rat> sliced;
        for (std::size_t k = 0; k < d; ++k) {
            FMat mat(f, nsz, nsz);
            for (std::size_t r = 0; r < nsz; ++r)
                for (std::size_t l = 0; l < nsz; ++l)
                    mat.at(r, l) = out.omegas[j * nsz + r][k * nsz + l];
            auto flat = fmat_flat(nc.s * mat);
            sliced.insert(sliced.end(), flat.begin(), flat.end());
        }
        out.betas_sliced.push_back(std::move(sliced));
    }

    // the order expansion of the betas must give M_i X back exactly
    std::vector<std::vector<Rat>> vrows;
    for (std::size_t b = 0; b < nc.block.rank(); ++b) {
        FMat mb = fmat_of_slice(f, nsz, nc.block.basis_row(b), 0);
        for (const auto& beta : out.betas_sliced) {
            std::vector<Rat> v;
            for (std::size_t k = 0; k < d; ++k) {
                auto prod = fmat_flat(mb * fmat_of_slice(f, nsz, beta, k * qd));
                v.insert(v.end(), prod.begin(), prod.end());
            }
            vrows.push_back(std::move(v));
        }
    }
    if (!(ZLattice::from_rows(cols.size(), vrows) == out.mx))
        throw error("component_free_basis: generators do not span the component");

    for (const auto& beta : out.betas_sliced) {
        std::vector<Rat> flat(m, Rat(0));
        for (std::size_t t = 0; t < cols.size(); ++t) flat[cols[t]] = beta[t];
        out.betas.push_back(row_times(flat, sm.to_ambient));
    }
    return out;
}

}  // namespace galmod
