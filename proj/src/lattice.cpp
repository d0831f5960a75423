#include "galmod/lattice.hpp"

namespace galmod {

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void row_submul(std::vector<Int>& r, const Int& q, const std::vector<Int>& s) {
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= q * s[j];
}

}  // namespace

IntMat int_identity(std::size_t n) {
    IntMat m(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    IntMat r(n, std::vector<Int>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

HnfTransform hnf_with_transform(const IntMat& m) {
    std::size_t nr = m.size();
    std::size_t nc = nr ? m[0].size() : 0;
    IntMat w = m;
    IntMat u = int_identity(nr);
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t sel = r;
        while (sel < nr && w[sel][c] == 0) ++sel;
        if (sel == nr) continue;
        std::swap(w[r], w[sel]);
        std::swap(u[r], u[sel]);
        for (std::size_t i = r + 1; i < nr; ++i) {
            while (w[i][c] != 0) {
                Int q = floor_div(w[r][c], w[i][c]);
                row_submul(w[r], q, w[i]);
                row_submul(u[r], q, u[i]);
                std::swap(w[r], w[i]);
                std::swap(u[r], u[i]);
            }
        }
        if (w[r][c] < 0) {
            for (auto& x : w[r]) x = -x;
            for (auto& x : u[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(w[i][c], w[r][c]);
            if (q != 0) {
                row_submul(w[i], q, w[r]);
                row_submul(u[i], q, u[r]);
            }
        }
        ++r;
    }
    HnfTransform out;
    out.rank = r;
    out.h.assign(w.begin(), w.begin() + r);
    out.u = std::move(u);
    return out;
}

IntMat hnf_int(const IntMat& m) { return hnf_with_transform(m).h; }

IntMat int_inverse_unimodular(const IntMat& u) {
    std::size_t n = u.size();
    QMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q.at(i, j) = Rat(u[i][j]);
    Rat d = q.det();
    if (d != 1 && d != -1) throw error("int_inverse_unimodular: determinant not a unit");
    QMatrix inv = q.inverse();
    IntMat r(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_integer(inv.at(i, j))) throw error("int_inverse_unimodular: non-integer inverse");
            r[i][j] = num(inv.at(i, j));
        }
    return r;
}

// Pivot on the smallest nonzero entry of the working block.  Every pass that
// fails to finish introduces a strictly smaller nonzero entry, so the loop
// terminates.
SnfTransform snf_with_transform(const IntMat& m) {
    std::size_t n = m.size();
    if (n == 0) return {{}, {}, {}};
    if (m[0].size() != n) throw error("snf_with_transform: matrix not square");
    IntMat w = m;
    IntMat u = int_identity(n), v = int_identity(n);

    auto col_submul = [&](std::size_t dst, const Int& q, std::size_t src) {
        for (std::size_t i = 0; i < n; ++i) w[i][dst] -= q * w[i][src];
        for (std::size_t i = 0; i < n; ++i) v[i][dst] -= q * v[i][src];
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n; ++i) std::swap(w[i][a], w[i][b]);
        for (std::size_t i = 0; i < n; ++i) std::swap(v[i][a], v[i][b]);
    };

    for (std::size_t k = 0; k < n; ++k) {
        while (true) {
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j) {
                    if (w[i][j] == 0) continue;
                    if (pi == n || abs(w[i][j]) < abs(w[pi][pj])) { pi = i; pj = j; }
                }
            if (pi == n) throw error("snf_with_transform: singular matrix");
            if (pi != k) { std::swap(w[pi], w[k]); std::swap(u[pi], u[k]); }
            if (pj != k) col_swap(pj, k);
            const Int p = w[k][k];

            bool progress = false;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (w[i][k] == 0) continue;
                Int q = floor_div(w[i][k], p);
                row_submul(w[i], q, w[k]);
                row_submul(u[i], q, u[k]);
                if (w[i][k] != 0) progress = true;
            }
            if (progress) continue;
            for (std::size_t j = k + 1; j < n; ++j) {
                if (w[k][j] == 0) continue;
                Int q = floor_div(w[k][j], p);
                col_submul(j, q, k);
                if (w[k][j] != 0) progress = true;
            }
            if (progress) continue;
            // row and column k are clear; pull in any entry the pivot misses
            bool divisible = true;
            for (std::size_t i = k + 1; i < n && divisible; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    if (w[i][j] % p != 0) {
                        for (std::size_t t = 0; t < n; ++t) w[k][t] += w[i][t];
                        for (std::size_t t = 0; t < n; ++t) u[k][t] += u[i][t];
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (w[k][k] < 0) {
            for (std::size_t t = 0; t < n; ++t) w[k][t] = -w[k][t];
            for (std::size_t t = 0; t < n; ++t) u[k][t] = -u[k][t];
        }
    }
    SnfTransform out;
    out.d.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.d[k] = w[k][k];
    out.u = std::move(u);
    out.v = std::move(v);
    return out;
}

ZLattice ZLattice::from_rows(std::size_t ambient, const std::vector<std::vector<Rat>>& rows) {
    ZLattice l;
    l.ambient_ = ambient;
    Int den(1);
    for (const auto& r : rows) {
        if (r.size() != ambient) throw error("ZLattice: row length mismatch");
        for (const auto& x : r) {
            Int d = x.get_den();
            den = den / gcd(den, d) * d;
        }
    }
    IntMat im;
    im.reserve(rows.size());
    for (const auto& r : rows) {
        std::vector<Int> ir(ambient);
        for (std::size_t j = 0; j < ambient; ++j) {
            Rat s = r[j] * Rat(den);
            ir[j] = num(s);
        }
        im.push_back(std::move(ir));
    }
    IntMat h = hnf_int(im);
    Int g = den;
    for (const auto& r : h)
        for (const auto& x : r) g = gcd(g, x);
    if (g == 0) g = 1;
    for (auto& r : h)
        for (auto& x : r) x /= g;
    l.den_ = den / g;
    l.mat_ = std::move(h);
    return l;
}

ZLattice ZLattice::standard(std::size_t n) {
    ZLattice l;
    l.ambient_ = n;
    l.den_ = 1;
    l.mat_ = int_identity(n);
    return l;
}

ZLattice ZLattice::zero(std::size_t ambient) {
    ZLattice l;
    l.ambient_ = ambient;
    l.den_ = 1;
    return l;
}

std::vector<Rat> ZLattice::basis_row(std::size_t i) const {
    std::vector<Rat> r(ambient_);
    for (std::size_t j = 0; j < ambient_; ++j) r[j] = Rat(mat_[i][j], den_);
    for (auto& x : r) x.canonicalize();
    return r;
}

QMatrix ZLattice::basis_matrix() const {
    QMatrix b(rank(), ambient_);
    for (std::size_t i = 0; i < rank(); ++i) {
        auto r = basis_row(i);
        b.set_row(i, r);
    }
    return b;
}

namespace {

// Echelon back-substitution over the Hermite basis.  Integral = demand
// integer coefficients.
std::optional<std::vector<Rat>> echelon_coords(const IntMat& mat, const Int& den,
                                               const std::vector<Rat>& v, bool integral) {
    std::size_t nc = v.size();
    std::vector<Rat> w(nc);
    for (std::size_t j = 0; j < nc; ++j) w[j] = v[j] * Rat(den);
    std::vector<Rat> x;
    x.reserve(mat.size());
    for (const auto& row : mat) {
        std::size_t p = 0;
        while (p < nc && row[p] == 0) ++p;
        Rat c = w[p] / Rat(row[p]);
        if (integral && !is_integer(c)) return std::nullopt;
        if (c != 0)
            for (std::size_t j = p; j < nc; ++j) w[j] -= c * Rat(row[j]);
        x.push_back(std::move(c));
    }
    for (const auto& y : w)
        if (y != 0) return std::nullopt;
    return x;
}

}  // namespace

bool ZLattice::contains(const std::vector<Rat>& v) const {
    if (v.size() != ambient_) throw error("ZLattice::contains: dimension mismatch");
    return echelon_coords(mat_, den_, v, true).has_value();
}

bool ZLattice::contains(const ZLattice& o) const {
    if (o.ambient_ != ambient_) throw error("ZLattice::contains: ambient mismatch");
    for (std::size_t i = 0; i < o.rank(); ++i)
        if (!contains(o.basis_row(i))) return false;
    return true;
}

std::optional<std::vector<Int>> ZLattice::coords(const std::vector<Rat>& v) const {
    auto x = echelon_coords(mat_, den_, v, true);
    if (!x) return std::nullopt;
    std::vector<Int> r(x->size());
    for (std::size_t i = 0; i < x->size(); ++i) r[i] = num((*x)[i]);
    return r;
}

std::optional<std::vector<Rat>> ZLattice::rational_coords(const std::vector<Rat>& v) const {
    return echelon_coords(mat_, den_, v, false);
}

ZLattice lattice_sum(const ZLattice& a, const ZLattice& b) {
    if (a.ambient() != b.ambient()) throw error("lattice_sum: ambient mismatch");
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < a.rank(); ++i) rows.push_back(a.basis_row(i));
    for (std::size_t i = 0; i < b.rank(); ++i) rows.push_back(b.basis_row(i));
    return ZLattice::from_rows(a.ambient(), rows);
}

ZLattice lattice_intersect(const ZLattice& a, const ZLattice& b) {
    if (a.ambient() != b.ambient()) throw error("lattice_intersect: ambient mismatch");
    std::size_t nc = a.ambient();
    if (a.rank() == 0 || b.rank() == 0) return ZLattice::zero(nc);
    // scale both to a common denominator D; then D*(a cap b) = (Da) cap (Db)
    Int D = a.denominator() / gcd(a.denominator(), b.denominator()) * b.denominator();
    Int fa = D / a.denominator(), fb = D / b.denominator();
    IntMat stacked;
    for (const auto& r : a.int_rows()) {
        std::vector<Int> s(nc);
        for (std::size_t j = 0; j < nc; ++j) s[j] = r[j] * fa;
        stacked.push_back(std::move(s));
    }
    std::size_t na = stacked.size();
    for (const auto& r : b.int_rows()) {
        std::vector<Int> s(nc);
        for (std::size_t j = 0; j < nc; ++j) s[j] = r[j] * fb;
        stacked.push_back(std::move(s));
    }
    HnfTransform ht = hnf_with_transform(stacked);
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = ht.rank; i < stacked.size(); ++i) {
        // kernel row (x|y): x*Da + y*Db = 0, so x*Da lies in the intersection
        std::vector<Rat> v(nc, Rat(0));
        for (std::size_t k = 0; k < na; ++k) {
            if (ht.u[i][k] == 0) continue;
            for (std::size_t j = 0; j < nc; ++j) v[j] += Rat(ht.u[i][k] * stacked[k][j]);
        }
        for (auto& x : v) {
            x /= Rat(D);
            x.canonicalize();
        }
        rows.push_back(std::move(v));
    }
    return ZLattice::from_rows(nc, rows);
}

Rat lattice_index(const ZLattice& x, const ZLattice& y) {
    if (x.ambient() != y.ambient()) throw error("lattice_index: ambient mismatch");
    if (x.rank() != y.rank()) throw error("lattice_index: rank mismatch");
    std::size_t r = x.rank();
    QMatrix t(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        auto c = x.rational_coords(y.basis_row(i));
        if (!c) throw error("lattice_index: second lattice not inside the span of the first");
        t.set_row(i, *c);
    }
    Rat d = t.det();
    if (d < 0) d = -d;
    if (d == 0) throw error("lattice_index: degenerate");
    return d;
}

ZLattice lattice_scale(const ZLattice& l, const Rat& c) {
    if (c == 0) return ZLattice::zero(l.ambient());
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < l.rank(); ++i) rows.push_back(scale_row(c, l.basis_row(i)));
    return ZLattice::from_rows(l.ambient(), rows);
}

ZLattice lattice_apply(const ZLattice& l, const QMatrix& m) {
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < l.rank(); ++i) rows.push_back(row_times(l.basis_row(i), m));
    return ZLattice::from_rows(m.cols(), rows);
}

ZLattice integrality_lattice(const QMatrix& m) {
    std::size_t r = m.rows(), c = m.cols();
    Int den(1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            Int q = m.at(i, j).get_den();
            den = den / gcd(den, q) * q;
        }
    IntMat cols(c, std::vector<Int>(r));  // rows here = columns of den*m
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) cols[j][i] = num(m.at(i, j) * Rat(den));
    IntMat h = hnf_int(cols);
    if (h.size() != r) throw error("integrality_lattice: full row rank required");
    // x * m integral iff x * H^T in den * Z^r; basis rows den * (H^T)^{-1}
    QMatrix ht(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) ht.at(i, j) = Rat(h[j][i]);
    QMatrix inv = ht.inverse();
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < r; ++i) rows.push_back(scale_row(Rat(den), inv.row(i)));
    return ZLattice::from_rows(r, rows);
}

SmithBasis smith_basis(const ZLattice& ambient, const ZLattice& sub) {
    if (ambient.rank() != sub.rank())
        throw error("smith_basis: equal ranks required");
    std::size_t r = ambient.rank();
    IntMat t(r, std::vector<Int>(r));
    for (std::size_t i = 0; i < r; ++i) {
        auto c = ambient.coords(sub.basis_row(i));
        if (!c) throw error("smith_basis: sublattice not contained in ambient lattice");
        t[i] = *c;
    }
    SnfTransform s = snf_with_transform(t);
    // sub rows = T * ambient rows and U T V = D, so with B' = V^{-1} * ambient
    // rows the sublattice is spanned by D * B'.
    IntMat vinv = int_inverse_unimodular(s.v);
    QMatrix amb = ambient.basis_matrix();
    QMatrix vq(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) vq.at(i, j) = Rat(vinv[i][j]);
    SmithBasis out;
    out.divisors = s.d;
    out.ambient_basis = vq * amb;
    return out;
}

}  // namespace galmod
