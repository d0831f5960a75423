#include "galmod/groupalgebra.hpp"

#include <numeric>

namespace galmod {

std::vector<Rat> ga_mul(const FiniteGroup& g, const std::vector<Rat>& a,
                        const std::vector<Rat>& b) {
    std::size_t n = g.order();
    if (a.size() != n || b.size() != n) throw error("ga_mul: size mismatch");
    std::vector<Rat> c(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            c[g.mul(i, j)] += a[i] * b[j];
        }
    }
    return c;
}

std::vector<Rat> ga_one(const FiniteGroup& g) { return ga_from_element(g, 0); }

std::vector<Rat> ga_from_element(const FiniteGroup& g, int idx) {
    std::vector<Rat> v(g.order(), Rat(0));
    v.at(idx) = 1;
    return v;
}

namespace {

FMat scalar_mat(const NumberField& f, const FieldElem& e) {
    FMat m(f, 1, 1);
    m.at(0, 0) = e;
    return m;
}

// 1-dimensional components of an abelian group: Galois orbits of characters.
// A character is a tuple a with chi(t_j) = zeta_{m_j}^{a_j}; its order f gives
// the component field Q(zeta_f) and chi itself gives the image map.
void abelian_components(const FiniteGroup& g, std::vector<WedderburnComponent>& out) {
    const auto& m = g.abelian_factors();
    std::size_t k = m.size(), n = g.order();
    long expo = g.exponent();
    auto digits = [&](long idx) {
        std::vector<long> d(k);
        for (std::size_t j = 0; j < k; ++j) {
            d[j] = idx % m[j];
            idx /= m[j];
        }
        return d;
    };
    auto index_of = [&](const std::vector<long>& d) {
        long idx = 0, radix = 1;
        for (std::size_t j = 0; j < k; ++j) {
            idx += d[j] * radix;
            radix *= m[j];
        }
        return idx;
    };
    std::vector<bool> seen(n, false);
    for (long rep = 0; rep < static_cast<long>(n); ++rep) {
        if (seen[rep]) continue;
        auto a = digits(rep);
        for (long s = 1; s <= expo; ++s) {
            if (gcd_long(s, expo) != 1) continue;
            std::vector<long> sa(k);
            for (std::size_t j = 0; j < k; ++j) sa[j] = (s * a[j]) % m[j];
            seen[index_of(sa)] = true;
        }
        long f = 1;
        for (std::size_t j = 0; j < k; ++j) {
            long ord = m[j] / gcd_long(a[j], m[j]);
            f = std::lcm(f, ord);
        }
        WedderburnComponent c;
        c.field = f <= 2 ? NumberField::rationals() : NumberField::cyclotomic(f);
        c.dim = 1;
        // chi(t_j) = zeta_f^{c_j} with c_j = a_j f / m_j, integral by the
        // choice of f
        std::vector<long> cj(k);
        for (std::size_t j = 0; j < k; ++j) cj[j] = a[j] * f / m[j];
        for (std::size_t idx = 0; idx < n; ++idx) {
            auto d = digits(idx);
            long e = 0;
            for (std::size_t j = 0; j < k; ++j) e = (e + d[j] * cj[j]) % f;
            c.images.push_back(scalar_mat(c.field, zeta_power(c.field, f, e)));
        }
        out.push_back(std::move(c));
    }
}

void dihedral_components(const FiniteGroup& g, std::vector<WedderburnComponent>& out) {
    long n = g.dihedral_n();
    auto one_dim = [&](int chi_r, int chi_s) {
        WedderburnComponent c;
        c.field = NumberField::rationals();
        c.dim = 1;
        for (long idx = 0; idx < 2 * n; ++idx) {
            long i = idx < n ? idx : idx - n;
            int v = (chi_r == -1 && i % 2) ? -1 : 1;
            if (idx >= n && chi_s == -1) v = -v;
            c.images.push_back(scalar_mat(c.field, nf_from_rat(c.field, Rat(v))));
        }
        out.push_back(std::move(c));
    };
    one_dim(1, 1);
    one_dim(1, -1);
    if (n % 2 == 0) {
        one_dim(-1, 1);
        one_dim(-1, -1);
    }
    for (long d : divisors(n)) {
        if (d < 3) continue;
        WedderburnComponent c;
        c.dim = 2;
        FieldElem theta;
        if (euler_phi(d) <= 2) {
            c.field = NumberField::rationals();
            theta = nf_from_rat(c.field, Rat(d == 3 ? -1 : d == 4 ? 0 : 1));
        } else {
            c.field = NumberField::real_cyclotomic(d);
            theta = nf_gen(c.field);
        }
        // rotation with trace theta_d and a reflection normalizing it
        FMat r(c.field, 2, 2), s(c.field, 2, 2);
        r.at(0, 1) = nf_from_rat(c.field, Rat(-1));
        r.at(1, 0) = nf_one(c.field);
        r.at(1, 1) = theta;
        s.at(0, 0) = nf_one(c.field);
        s.at(0, 1) = theta;
        s.at(1, 1) = nf_from_rat(c.field, Rat(-1));
        std::vector<FMat> rpow(n, FMat::identity(c.field, 2));
        for (long i = 1; i < n; ++i) rpow[i] = rpow[i - 1] * r;
        for (long i = 0; i < n; ++i) c.images.push_back(rpow[i]);
        for (long j = 0; j < n; ++j) c.images.push_back(s * rpow[j]);
        out.push_back(std::move(c));
    }
}

}  // namespace

Wedderburn wedderburn(const FiniteGroup& g) {
    Wedderburn w;
    w.group = g;
    std::size_t n = g.order();
    if (g.is_abelian())
        abelian_components(g, w.comps);
    else if (g.dihedral_n() >= 3)
        dihedral_components(g, w.comps);
    else
        throw error("wedderburn: unsupported group");

    std::size_t total = 0;
    for (auto& c : w.comps) {
        c.offset = total;
        total += c.qdim();
    }
    if (total != n) throw error("wedderburn: component dimensions do not fill the algebra");

    for (const auto& c : w.comps)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (!c.images[g.mul(a, b)].equals(c.images[a] * c.images[b]))
                    throw error("wedderburn: image map is not a homomorphism");

    w.to_flat = QMatrix(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<Rat> flat(n, Rat(0));
        for (std::size_t i = 0; i < w.comps.size(); ++i)
            write_block(w, i, w.comps[i].images[a], flat);
        w.to_flat.set_row(a, flat);
    }
    w.from_flat = w.to_flat.inverse();

    std::vector<Rat> esum(n, Rat(0));
    for (std::size_t i = 0; i < w.comps.size(); ++i) {
        auto& c = w.comps[i];
        std::vector<Rat> flat(n, Rat(0));
        write_block(w, i, FMat::identity(c.field, c.dim), flat);
        c.idempotent = algebra_of_flat(w, flat);
        if (ga_mul(g, c.idempotent, c.idempotent) != c.idempotent)
            throw error("wedderburn: central element is not idempotent");
        for (std::size_t t = 0; t < n; ++t) esum[t] += c.idempotent[t];
    }
    if (esum != ga_one(g)) throw error("wedderburn: idempotents do not sum to 1");
    return w;
}

std::vector<Rat> flat_of(const Wedderburn& w, const std::vector<Rat>& a) {
    return row_times(a, w.to_flat);
}

std::vector<Rat> algebra_of_flat(const Wedderburn& w, const std::vector<Rat>& flat) {
    return row_times(flat, w.from_flat);
}

FMat block_of_flat(const Wedderburn& w, std::size_t i, const std::vector<Rat>& flat) {
    const auto& c = w.comps[i];
    std::size_t deg = c.field.degree();
    FMat m(c.field, c.dim, c.dim);
    for (std::size_t k = 0; k < c.dim; ++k)
        for (std::size_t l = 0; l < c.dim; ++l)
            for (std::size_t t = 0; t < deg; ++t)
                m.at(k, l).c[t] = flat[c.offset + (k * c.dim + l) * deg + t];
    return m;
}

void write_block(const Wedderburn& w, std::size_t i, const FMat& m, std::vector<Rat>& flat) {
    const auto& c = w.comps[i];
    std::size_t deg = c.field.degree();
    for (std::size_t k = 0; k < c.dim; ++k)
        for (std::size_t l = 0; l < c.dim; ++l)
            for (std::size_t t = 0; t < deg; ++t)
                flat[c.offset + (k * c.dim + l) * deg + t] = m.at(k, l).c[t];
}

}  // namespace galmod
