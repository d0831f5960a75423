#include "galmod/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace galmod {

namespace {

// Dense polynomials over Q, ascending coefficients.
using Poly = std::vector<Rat>;

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// Remainder modulo a monic polynomial.
Poly poly_rem(Poly a, const Poly& f) {
    std::size_t d = f.size() - 1;
    poly_trim(a);
    while (a.size() > d) {
        Rat lead = a.back();
        std::size_t shift = a.size() - 1 - d;
        if (lead != 0)
            for (std::size_t i = 0; i < d; ++i) a[shift + i] -= lead * f[i];
        a.pop_back();
        poly_trim(a);
    }
    return a;
}

// s with s*a = gcd(a, f) mod f; used for inversion, so gcd must be constant.
Poly poly_invert(const Poly& a, const Poly& f) {
    Poly r0 = f, r1 = poly_rem(a, f);
    Poly s0 = {}, s1 = {Rat(1)};
    while (!r1.empty()) {
        // divide r0 by r1
        Poly q;
        Poly rem = r0;
        poly_trim(rem);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, Rat(0));
            Rat lead_inv = 1 / r1.back();
            while (rem.size() >= r1.size() && !rem.empty()) {
                Rat c = rem.back() * lead_inv;
                std::size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
                poly_trim(rem);
            }
        }
        Poly s2 = s0;
        {
            Poly qs = poly_mul(q, s1);
            if (s2.size() < qs.size()) s2.resize(qs.size(), Rat(0));
            for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            poly_trim(s2);
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    poly_trim(r0);
    if (r0.size() != 1) throw error("nf_inv: element not invertible");
    Rat g_inv = 1 / r0[0];
    for (auto& x : s0) x *= g_inv;
    return poly_rem(s0, f);
}

// Cyclotomic polynomials with integer coefficients, cached.
const std::vector<Int>& cyclotomic_poly(long n) {
    static std::map<long, std::vector<Int>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // x^n - 1 divided by all lower-level cyclotomic polynomials
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (long d : divisors(n)) {
        if (d == n) continue;
        const std::vector<Int>& phi_d = cyclotomic_poly(d);
        // exact division num /= phi_d (phi_d monic)
        std::vector<Int> q(num.size() - phi_d.size() + 1, Int(0));
        std::vector<Int> rem = num;
        for (std::size_t s = q.size(); s-- > 0;) {
            Int c = rem[s + phi_d.size() - 1];
            q[s] = c;
            if (c != 0)
                for (std::size_t i = 0; i < phi_d.size(); ++i) rem[s + i] -= c * phi_d[i];
        }
        for (const auto& x : rem)
            if (x != 0) throw error("cyclotomic_poly: division not exact");
        num = std::move(q);
    }
    return cache.emplace(n, std::move(num)).first->second;
}

long normalize_conductor(long n) {
    if (n <= 0) throw error("cyclotomic: conductor must be positive");
    if (n % 4 == 2) n /= 2;
    return n;
}

}  // namespace

struct NumberField::Rep {
    FieldKind kind = FieldKind::rationals;
    long n = 0;
    std::vector<Rat> poly;
    std::size_t deg = 1;
    QMatrix ib, ib_inv;
    Rat disc;
    std::size_t s2 = 0;
};

namespace {
Rat compute_disc(const NumberField& f);
}  // namespace

FieldKind NumberField::kind() const { return rep_->kind; }
long NumberField::conductor() const {
    if (rep_->kind != FieldKind::cyclotomic && rep_->kind != FieldKind::real_cyclotomic)
        throw error("conductor: not a cyclotomic kind");
    return rep_->n;
}
std::size_t NumberField::degree() const { return rep_->deg; }
const std::vector<Rat>& NumberField::poly() const { return rep_->poly; }
const QMatrix& NumberField::integral_basis() const { return rep_->ib; }
const QMatrix& NumberField::integral_basis_inverse() const { return rep_->ib_inv; }
const Rat& NumberField::discriminant() const { return rep_->disc; }
std::size_t NumberField::complex_pairs() const { return rep_->s2; }

bool NumberField::operator==(const NumberField& o) const {
    if (rep_ == o.rep_) return true;
    if (!rep_ || !o.rep_) return false;
    return rep_->kind == o.rep_->kind && rep_->n == o.rep_->n && rep_->poly == o.rep_->poly &&
           rep_->ib == o.rep_->ib;
}

NumberField NumberField::rationals() {
    static NumberField cached = [] {
        Rep r;
        r.kind = FieldKind::rationals;
        r.poly = {Rat(0), Rat(1)};
        r.deg = 1;
        r.ib = QMatrix::identity(1);
        r.ib_inv = QMatrix::identity(1);
        r.disc = 1;
        r.s2 = 0;
        NumberField f;
        f.rep_ = std::make_shared<const Rep>(std::move(r));
        return f;
    }();
    return cached;
}

NumberField NumberField::cyclotomic(long n) {
    n = normalize_conductor(n);
    if (n <= 2) return rationals();
    static std::map<long, NumberField> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Rep r;
    r.kind = FieldKind::cyclotomic;
    r.n = n;
    const auto& phi = cyclotomic_poly(n);
    r.poly.assign(phi.size(), Rat(0));
    for (std::size_t i = 0; i < phi.size(); ++i) r.poly[i] = Rat(phi[i]);
    r.deg = phi.size() - 1;
    r.ib = QMatrix::identity(r.deg);
    r.ib_inv = r.ib;
    r.s2 = r.deg / 2;
    NumberField f;
    f.rep_ = std::make_shared<const Rep>(std::move(r));
    {
        Rep r2 = *f.rep_;
        r2.disc = compute_disc(f);
        f.rep_ = std::make_shared<const Rep>(std::move(r2));
    }
    return cache.emplace(n, f).first->second;
}

NumberField NumberField::real_cyclotomic(long n) {
    if (n >= 5 && euler_phi(n) < 4)
        throw error("real_cyclotomic: degree below 2, use rationals");
    if (n < 5) throw error("real_cyclotomic: conductor must be >= 5");
    static std::map<long, NumberField> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Rep r;
    r.kind = FieldKind::real_cyclotomic;
    r.n = n;
    // palindromic reduction: Phi_n(x)/x^k written in y = x + 1/x via
    // x^j + x^-j = p_j(y), p_0 = 2, p_1 = y, p_j = y p_{j-1} - p_{j-2}
    const auto& phi = cyclotomic_poly(n);
    std::size_t k = (phi.size() - 1) / 2;
    std::vector<Poly> p(k + 1);
    p[0] = {Rat(2)};
    if (k >= 1) p[1] = {Rat(0), Rat(1)};
    for (std::size_t j = 2; j <= k; ++j) {
        p[j] = poly_mul({Rat(0), Rat(1)}, p[j - 1]);
        if (p[j].size() < p[j - 2].size()) p[j].resize(p[j - 2].size(), Rat(0));
        for (std::size_t i = 0; i < p[j - 2].size(); ++i) p[j][i] -= p[j - 2][i];
    }
    Poly psi = {Rat(phi[k])};
    for (std::size_t j = 1; j <= k; ++j) {
        if (psi.size() < p[j].size()) psi.resize(p[j].size(), Rat(0));
        for (std::size_t i = 0; i < p[j].size(); ++i) psi[i] += Rat(phi[k + j]) * p[j][i];
    }
    poly_trim(psi);
    if (psi.size() != k + 1 || psi.back() != 1)
        throw error("real_cyclotomic: defining polynomial not monic");
    r.poly = std::move(psi);
    r.deg = k;
    r.ib = QMatrix::identity(k);
    r.ib_inv = r.ib;
    r.s2 = 0;
    NumberField f;
    f.rep_ = std::make_shared<const Rep>(std::move(r));
    {
        Rep r2 = *f.rep_;
        r2.disc = compute_disc(f);
        f.rep_ = std::make_shared<const Rep>(std::move(r2));
    }
    return cache.emplace(n, f).first->second;
}

NumberField NumberField::generic(const std::vector<Rat>& monic_poly, const QMatrix& integral_basis) {
    if (monic_poly.size() < 2 || monic_poly.back() != 1)
        throw error("generic field: polynomial must be monic of degree >= 1");
    std::size_t deg = monic_poly.size() - 1;
    if (integral_basis.rows() != deg || integral_basis.cols() != deg)
        throw error("generic field: integral basis must be square of the field degree");
    Rep r;
    r.kind = FieldKind::generic;
    r.poly = monic_poly;
    r.deg = deg;
    r.ib = integral_basis;
    r.ib_inv = integral_basis.inverse();
    r.s2 = 0;
    NumberField f;
    f.rep_ = std::make_shared<const Rep>(std::move(r));
    // the basis must be a ring containing 1
    std::vector<Rat> one(deg, Rat(0));
    one[0] = 1;
    auto c1 = row_times(one, f.rep_->ib_inv);
    for (const auto& x : c1)
        if (!is_integer(x)) throw error("generic field: 1 not in the integral basis span");
    for (std::size_t i = 0; i < deg; ++i)
        for (std::size_t j = i; j < deg; ++j) {
            FieldElem a{f, integral_basis.row(i)}, b{f, integral_basis.row(j)};
            auto prod = nf_to_integral(nf_mul(a, b));
            for (const auto& x : prod)
                if (!is_integer(x))
                    throw error("generic field: integral basis not multiplicatively closed");
        }
    {
        Rep r2 = *f.rep_;
        r2.disc = compute_disc(f);
        f.rep_ = std::make_shared<const Rep>(std::move(r2));
    }
    return f;
}

FieldElem nf_zero(const NumberField& f) { return {f, std::vector<Rat>(f.degree(), Rat(0))}; }

FieldElem nf_one(const NumberField& f) {
    auto e = nf_zero(f);
    e.c[0] = 1;
    return e;
}

FieldElem nf_from_rat(const NumberField& f, const Rat& q) {
    auto e = nf_zero(f);
    e.c[0] = q;
    return e;
}

FieldElem nf_gen(const NumberField& f) {
    auto e = nf_zero(f);
    if (f.degree() < 2) throw error("nf_gen: field is Q");
    e.c[1] = 1;
    return e;
}

static void check_same(const FieldElem& a, const FieldElem& b) {
    if (!(a.f == b.f)) throw error("field element operation across different fields");
}

FieldElem nf_add(const FieldElem& a, const FieldElem& b) {
    check_same(a, b);
    FieldElem r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

FieldElem nf_sub(const FieldElem& a, const FieldElem& b) {
    check_same(a, b);
    FieldElem r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

FieldElem nf_neg(const FieldElem& a) {
    FieldElem r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

FieldElem nf_mul(const FieldElem& a, const FieldElem& b) {
    check_same(a, b);
    Poly p = poly_rem(poly_mul(a.c, b.c), a.f.poly());
    p.resize(a.f.degree(), Rat(0));
    return {a.f, std::move(p)};
}

FieldElem nf_mul_rat(const FieldElem& a, const Rat& q) {
    FieldElem r = a;
    for (auto& x : r.c) x *= q;
    return r;
}

FieldElem nf_inv(const FieldElem& a) {
    if (nf_is_zero(a)) throw error("nf_inv: zero element");
    Poly p = poly_invert(a.c, a.f.poly());
    p.resize(a.f.degree(), Rat(0));
    return {a.f, std::move(p)};
}

FieldElem nf_div(const FieldElem& a, const FieldElem& b) { return nf_mul(a, nf_inv(b)); }

FieldElem nf_pow(const FieldElem& a, long e) {
    if (e < 0) return nf_pow(nf_inv(a), -e);
    FieldElem r = nf_one(a.f), base = a;
    while (e) {
        if (e & 1) r = nf_mul(r, base);
        base = nf_mul(base, base);
        e >>= 1;
    }
    return r;
}

bool nf_eq(const FieldElem& a, const FieldElem& b) {
    check_same(a, b);
    return a.c == b.c;
}

bool nf_is_zero(const FieldElem& a) {
    for (const auto& x : a.c)
        if (x != 0) return false;
    return true;
}

QMatrix nf_mult_matrix(const FieldElem& e) {
    std::size_t d = e.f.degree();
    QMatrix m(d, d);
    FieldElem p = e;
    m.set_row(0, p.c);
    for (std::size_t i = 1; i < d; ++i) {
        // multiply by x
        Poly sh(p.c.size() + 1, Rat(0));
        for (std::size_t j = 0; j < p.c.size(); ++j) sh[j + 1] = p.c[j];
        Poly red = poly_rem(std::move(sh), e.f.poly());
        red.resize(d, Rat(0));
        p.c = std::move(red);
        m.set_row(i, p.c);
    }
    return m;
}

Rat nf_norm(const FieldElem& e) { return nf_mult_matrix(e).det(); }

Rat nf_trace(const FieldElem& e) {
    QMatrix m = nf_mult_matrix(e);
    Rat t(0);
    for (std::size_t i = 0; i < m.rows(); ++i) t += m.at(i, i);
    return t;
}

namespace {
Rat compute_disc(const NumberField& f) {
    std::size_t d = f.degree();
    QMatrix gram(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            FieldElem a{f, f.integral_basis().row(i)};
            FieldElem b{f, f.integral_basis().row(j)};
            Rat t = nf_trace(nf_mul(a, b));
            gram.at(i, j) = t;
            gram.at(j, i) = t;
        }
    return gram.det();
}
}  // namespace

std::vector<Rat> nf_to_integral(const FieldElem& e) {
    return row_times(e.c, e.f.integral_basis_inverse());
}

FieldElem nf_from_integral(const NumberField& f, const std::vector<Rat>& v) {
    return {f, row_times(v, f.integral_basis())};
}

bool nf_is_integral(const FieldElem& e) {
    for (const auto& x : nf_to_integral(e))
        if (!is_integer(x)) return false;
    return true;
}

FieldElem zeta_power(const NumberField& f, long m, long k) {
    if (m <= 0) throw error("zeta_power: order must be positive");
    k %= m;
    if (k < 0) k += m;
    int sign = 1;
    long u = m;
    if (m % 4 == 2) {
        u = m / 2;
        if (k % 2 == 0) {
            k = (k / 2) % u;
        } else {
            sign = -1;
            k = ((k - u) / 2 % u + u) % u;
        }
    }
    if (u <= 2) {
        if (f.degree() != 1) throw error("zeta_power: field does not match order");
        Rat v(sign);
        if (u == 2 && k == 1) v = -v;
        return nf_from_rat(f, v);
    }
    if (f.kind() != FieldKind::cyclotomic || f.conductor() != u)
        throw error("zeta_power: field conductor does not match order");
    Poly p(k + 1, Rat(0));
    p[k] = Rat(sign);
    Poly red = poly_rem(std::move(p), f.poly());
    red.resize(f.degree(), Rat(0));
    return {f, std::move(red)};
}

FieldElem cyclotomic_galois(const FieldElem& e, long a) {
    const NumberField& f = e.f;
    if (f.kind() == FieldKind::rationals) return e;
    if (f.kind() != FieldKind::cyclotomic) throw error("cyclotomic_galois: wrong field kind");
    long n = f.conductor();
    if (gcd_long(((a % n) + n) % n, n) != 1) throw error("cyclotomic_galois: exponent not coprime");
    FieldElem r = nf_zero(f);
    for (std::size_t i = 0; i < e.c.size(); ++i) {
        if (e.c[i] == 0) continue;
        r = nf_add(r, nf_mul_rat(zeta_power(f, n, a * static_cast<long>(i)), e.c[i]));
    }
    return r;
}

namespace {

// Real cyclotomic units need elements of Q(zeta_n) rewritten in the power
// basis of theta = zeta + 1/zeta.  Rows of B are theta^j over the zeta basis.
FieldElem express_real(const NumberField& real_f, const NumberField& cyc_f, long n,
                       const FieldElem& val) {
    std::size_t dr = real_f.degree(), dc = cyc_f.degree();
    QMatrix b(dr, dc);
    FieldElem theta = nf_add(zeta_power(cyc_f, n, 1), zeta_power(cyc_f, n, -1));
    FieldElem pw = nf_one(cyc_f);
    for (std::size_t j = 0; j < dr; ++j) {
        b.set_row(j, pw.c);
        pw = nf_mul(pw, theta);
    }
    // pick dr independent columns of b and solve the square system there
    std::vector<std::size_t> cols;
    {
        QMatrix wt = b;
        std::size_t r = 0;
        for (std::size_t c = 0; c < dc && r < dr; ++c) {
            std::size_t p = r;
            while (p < dr && wt.at(p, c) == 0) ++p;
            if (p == dr) continue;
            if (p != r)
                for (std::size_t j = 0; j < dc; ++j) std::swap(wt.at(p, j), wt.at(r, j));
            Rat inv = 1 / wt.at(r, c);
            for (std::size_t i = r + 1; i < dr; ++i) {
                if (wt.at(i, c) == 0) continue;
                Rat fmul = wt.at(i, c) * inv;
                for (std::size_t j = c; j < dc; ++j) wt.at(i, j) -= fmul * wt.at(r, j);
            }
            cols.push_back(c);
            ++r;
        }
        if (r != dr) throw error("express_real: powers of theta not independent");
    }
    QMatrix sq(dr, dr);
    std::vector<Rat> rhs(dr);
    for (std::size_t j = 0; j < dr; ++j) {
        for (std::size_t i = 0; i < dr; ++i) sq.at(i, j) = b.at(i, cols[j]);
        rhs[j] = val.c[cols[j]];
    }
    std::vector<Rat> y = solve_row(sq, rhs);
    // consistency: y really reproduces the value on every coordinate
    auto full = row_times(y, b);
    if (full != val.c) throw error("express_real: value is not in the real subfield");
    return {real_f, y};
}

void append_cyclotomic_units(const NumberField& f, long n, std::vector<FieldElem>& out) {
    // units at every admissible level d | n
    for (long d : divisors(n)) {
        if (d < 3 || d % 4 == 2) continue;
        bool prime_power = [&] {
            long m = d, p = 0;
            for (long q = 2; q * q <= m; ++q)
                if (m % q == 0) { p = q; break; }
            if (p == 0) return true;  // d prime
            while (m % p == 0) m /= p;
            return m == 1;
        }();
        FieldElem base = nf_sub(nf_one(f), zeta_power(f, n, n / d));  // 1 - zeta_d
        for (long a = 2; a < d; ++a) {
            if (gcd_long(a, d) != 1) continue;
            FieldElem num = nf_sub(nf_one(f), zeta_power(f, n, (n / d) * a));  // 1 - zeta_d^a
            FieldElem u = prime_power ? nf_div(num, base) : num;
            Rat nm = nf_norm(u);
            if (nm != 1 && nm != -1) throw error("unit catalog: cyclotomic ratio is not a unit");
            out.push_back(std::move(u));
        }
    }
}

}  // namespace

std::vector<FieldElem> unit_generators(const NumberField& f) {
    switch (f.kind()) {
        case FieldKind::rationals:
            return {nf_from_rat(f, Rat(-1))};
        case FieldKind::cyclotomic: {
            long n = f.conductor();
            if (n > 20) throw error("unit catalog: conductor above 20 not admitted");
            std::vector<FieldElem> out;
            out.push_back(nf_from_rat(f, Rat(-1)));
            out.push_back(nf_gen(f));  // zeta
            append_cyclotomic_units(f, n, out);
            return out;
        }
        case FieldKind::real_cyclotomic: {
            long n = f.conductor();
            if (n > 20) throw error("unit catalog: conductor above 20 not admitted");
            NumberField cyc = NumberField::cyclotomic(n);
            std::vector<FieldElem> out;
            out.push_back(nf_from_rat(f, Rat(-1)));
            for (long d : divisors(n)) {
                if (d % 4 == 2 || euler_phi(d) < 4) continue;
                for (long a = 2; a <= d - 2; ++a) {
                    if (gcd_long(a, d) != 1) continue;
                    // xi_a = zeta_d^{(1-a)/2} (1 - zeta_d^a)/(1 - zeta_d); for
                    // odd a the half exponent is exact, for even a (odd d only)
                    // 2 is invertible mod d and the ambiguity is just a sign
                    long e;
                    if ((1 - a) % 2 == 0) {
                        e = (1 - a) / 2;
                    } else {
                        e = (((1 - a) % d + d) % d) * mod_inverse(2, d) % d;
                    }
                    FieldElem num = nf_sub(nf_one(cyc), zeta_power(cyc, n, (n / d) * a));
                    FieldElem den_ = nf_sub(nf_one(cyc), zeta_power(cyc, n, n / d));
                    FieldElem xi = nf_mul(zeta_power(cyc, n, (n / d) * e), nf_div(num, den_));
                    FieldElem u = express_real(f, cyc, n, xi);
                    Rat nm = nf_norm(u);
                    if (nm != 1 && nm != -1)
                        throw error("unit catalog: real cyclotomic ratio is not a unit");
                    out.push_back(std::move(u));
                }
            }
            return out;
        }
        default:
            throw error("unit catalog: generic fields are not supported");
    }
}

FracIdeal whole_ring(const NumberField& f) { return {f, ZLattice::standard(f.degree())}; }

FracIdeal ideal_from_generators(const NumberField& f, const std::vector<FieldElem>& gens) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& g : gens) {
        for (std::size_t t = 0; t < f.degree(); ++t) {
            FieldElem w{f, f.integral_basis().row(t)};
            rows.push_back(nf_to_integral(nf_mul(w, g)));
        }
    }
    return {f, ZLattice::from_rows(f.degree(), rows)};
}

FracIdeal ideal_from_lattice(const NumberField& f, const ZLattice& module_lat) {
    if (module_lat.ambient() != f.degree() || module_lat.rank() != f.degree())
        throw error("ideal_from_lattice: full-rank lattice required");
    for (std::size_t i = 0; i < module_lat.rank(); ++i) {
        FieldElem g = nf_from_integral(f, module_lat.basis_row(i));
        for (std::size_t t = 0; t < f.degree(); ++t) {
            FieldElem w{f, f.integral_basis().row(t)};
            if (!module_lat.contains(nf_to_integral(nf_mul(w, g))))
                throw error("ideal_from_lattice: lattice is not an O-module");
        }
    }
    return {f, module_lat};
}

FracIdeal ideal_mul(const FracIdeal& a, const FracIdeal& b) {
    if (!(a.f == b.f)) throw error("ideal_mul: different fields");
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < a.lat.rank(); ++i) {
        FieldElem x = nf_from_integral(a.f, a.lat.basis_row(i));
        for (std::size_t j = 0; j < b.lat.rank(); ++j) {
            FieldElem y = nf_from_integral(a.f, b.lat.basis_row(j));
            rows.push_back(nf_to_integral(nf_mul(x, y)));
        }
    }
    return {a.f, ZLattice::from_rows(a.f.degree(), rows)};
}

FracIdeal ideal_inverse(const FracIdeal& a) {
    const NumberField& f = a.f;
    std::size_t d = f.degree();
    if (a.lat.rank() != d) throw error("ideal_inverse: full-rank ideal required");
    // x in a^-1 iff x * g is integral for each basis generator g; stack the
    // multiplication matrices (in integral-basis coordinates) side by side.
    QMatrix c(d, d * d);
    for (std::size_t j = 0; j < d; ++j) {
        FieldElem g = nf_from_integral(f, a.lat.basis_row(j));
        // column block j: matrix sending x (ib coords) to ib coords of x*g
        for (std::size_t i = 0; i < d; ++i) {
            FieldElem wi{f, f.integral_basis().row(i)};
            auto prod = nf_to_integral(nf_mul(wi, g));
            for (std::size_t k = 0; k < d; ++k) c.at(i, j * d + k) = prod[k];
        }
    }
    FracIdeal out{f, integrality_lattice(c)};
    if (!ideal_eq(ideal_mul(a, out), whole_ring(f)))
        throw error("ideal_inverse: product with inverse is not the whole ring");
    return out;
}

Rat ideal_norm(const FracIdeal& a) {
    return lattice_index(ZLattice::standard(a.f.degree()), a.lat);
}

bool ideal_is_integral(const FracIdeal& a) {
    return ZLattice::standard(a.f.degree()).contains(a.lat);
}

bool ideal_eq(const FracIdeal& a, const FracIdeal& b) { return a.f == b.f && a.lat == b.lat; }

namespace {

// Rows of a real embedding matrix whose row norms realize the T2 form: power
// basis element x^j maps to, per infinite place, its value (real places) or
// sqrt(2) times the real and imaginary parts (one column pair per complex
// place).  Exact analytic roots exist for the catalog kinds.
std::vector<std::vector<double>> t2_embedding(const NumberField& f) {
    constexpr double pi = 3.141592653589793238462643;
    std::size_t d = f.degree();
    std::vector<std::vector<double>> e(d, std::vector<double>(d, 0.0));
    if (f.kind() == FieldKind::rationals) {
        e[0][0] = 1.0;
        return e;
    }
    long n = f.conductor();
    std::vector<long> ks;
    for (long k = 1; 2 * k < n; ++k)
        if (gcd_long(k, n) == 1) ks.push_back(k);
    if (f.kind() == FieldKind::cyclotomic) {
        const double s2 = std::sqrt(2.0);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t t = 0; t < ks.size(); ++t) {
                double ang = 2.0 * pi * double(ks[t]) * double(j) / double(n);
                e[j][2 * t] = s2 * std::cos(ang);
                e[j][2 * t + 1] = s2 * std::sin(ang);
            }
    } else {
        for (std::size_t t = 0; t < ks.size(); ++t) {
            double th = 2.0 * std::cos(2.0 * pi * double(ks[t]) / double(n));
            double p = 1.0;
            for (std::size_t j = 0; j < d; ++j, p *= th) e[j][t] = p;
        }
    }
    return e;
}

// In-place LLL on the rows of v, mirroring every operation on the exact
// elements.  Plain double Gram-Schmidt; the result is only a heuristic basis
// change, exactness comes from the caller's norm check.
void lll_rows(std::vector<std::vector<double>>& v, std::vector<FieldElem>& elems) {
    std::size_t d = v.size();
    if (d < 2) return;
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    std::vector<std::vector<double>> star;
    std::vector<std::vector<double>> mu(d, std::vector<double>(d, 0.0));
    std::vector<double> nn(d, 0.0);
    auto gso = [&]() {
        star = v;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = nn[j] > 0.0 ? dot(v[i], star[j]) / nn[j] : 0.0;
                for (std::size_t k = 0; k < d; ++k) star[i][k] -= mu[i][j] * star[j][k];
            }
            nn[i] = dot(star[i], star[i]);
        }
    };
    gso();
    std::size_t k = 1;
    for (long guard = 0; k < d && guard < 10000; ++guard) {
        for (std::size_t j = k; j-- > 0;) {
            double q = std::round(mu[k][j]);
            if (q != 0.0) {
                for (std::size_t t = 0; t < d; ++t) v[k][t] -= q * v[j][t];
                elems[k] = nf_sub(elems[k], nf_mul_rat(elems[j], Rat(long(q))));
                gso();
            }
        }
        if (nn[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * nn[k - 1]) {
            ++k;
        } else {
            std::swap(v[k], v[k - 1]);
            std::swap(elems[k], elems[k - 1]);
            gso();
            if (k > 1) --k;
        }
    }
}

}  // namespace

namespace {

FieldElem principal_gen_impl(const FracIdeal& a, int depth) {
    const NumberField& f = a.f;
    std::size_t d = f.degree();
    Rat target = ideal_norm(a);
    std::optional<FieldElem> best;  // smallest integer norm ratio seen, >= 2
    Int best_q(0);
    auto try_elem = [&](const FieldElem& g) {
        Rat nm = nf_norm(g);
        if (nm < 0) nm = -nm;
        if (nm == target) return true;
        Rat ratio = nm / target;
        if (nm != 0 && is_integer(ratio) && (best_q == 0 || num(ratio) < best_q)) {
            best_q = num(ratio);
            best = g;
        }
        return false;
    };
    // the whole ring and single Hermite basis vectors cover the common cases
    std::vector<FieldElem> brows;
    for (std::size_t i = 0; i < d; ++i) brows.push_back(nf_from_integral(f, a.lat.basis_row(i)));
    for (const auto& g : brows)
        if (try_elem(g)) return g;
    // reduce the basis under the T2 form and sweep small coefficient boxes
    auto emb = t2_embedding(f);
    std::vector<std::vector<double>> v(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double cj = brows[i].c[j].get_d();
            for (std::size_t t = 0; t < d; ++t) v[i][t] += cj * emb[j][t];
        }
    lll_rows(v, brows);
    for (const auto& g : brows)
        if (try_elem(g)) return g;
    // a near-miss alpha turns the problem into a small integral one:
    // (alpha) = a * b with b integral of norm best_q, so recurse on b and
    // divide out its generator
    Int tried_q(-1);
    auto attempt_reduce = [&]() -> std::optional<FieldElem> {
        if (!best || depth >= 6 || best_q == tried_q) return std::nullopt;
        tried_q = best_q;
        try {
            auto b = ideal_mul(ideal_from_generators(f, {*best}), ideal_inverse(a));
            FieldElem beta = principal_gen_impl(b, depth + 1);
            FieldElem g = nf_div(*best, beta);
            Rat nm = nf_norm(g);
            if (nm < 0) nm = -nm;
            if (nm == target) return g;
        } catch (const error&) {
        }
        return std::nullopt;
    };
    if (auto g = attempt_reduce()) return *g;
    for (long box = 1;; ++box) {
        if (std::pow(2.0 * double(box) + 1.0, double(d)) > 2e6) break;
        std::vector<long> cvec(d, -box);
        while (true) {
            bool fresh = false;  // skip interior points already swept
            for (long x : cvec)
                if (x == box || x == -box) { fresh = true; break; }
            if (fresh) {
                FieldElem g = nf_zero(f);
                for (std::size_t i = 0; i < d; ++i) {
                    if (cvec[i] == 0) continue;
                    g = nf_add(g, nf_mul_rat(brows[i], Rat(cvec[i])));
                }
                if (try_elem(g)) return g;
            }
            std::size_t i = 0;
            while (i < d && cvec[i] == box) cvec[i++] = -box;
            if (i == d) break;
            ++cvec[i];
        }
        if (auto g = attempt_reduce()) return *g;
    }
    throw error("principal_gen: no generator found within the search bound");
}

}  // namespace

FieldElem principal_gen(const FracIdeal& a) {
    const NumberField& f = a.f;
    if (f.kind() == FieldKind::generic) throw error("principal_gen: generic fields not supported");
    if (a.lat.rank() != f.degree()) throw error("principal_gen: full-rank ideal required");
    return principal_gen_impl(a, 0);
}

ResidueRing residue_ring(const NumberField& f, const FracIdeal& a) {
    std::size_t d = f.degree();
    if (!ideal_is_integral(a)) throw error("residue_ring: integral ideal required");
    if (a.lat.rank() != d) throw error("residue_ring: full-rank ideal required");
    ResidueRing r;
    r.f = f;
    r.ideal = a;
    SmithBasis s = smith_basis(ZLattice::standard(d), a.lat);
    r.diag = s.divisors;
    r.basis = s.ambient_basis;
    r.basis_inv = r.basis.inverse();
    r.size = 1;
    for (const auto& x : r.diag) r.size *= x;
    // structure constants over the adapted basis
    r.sc.assign(d * d * d, Int(0));
    for (std::size_t i = 0; i < d; ++i) {
        FieldElem bi = nf_from_integral(f, r.basis.row(i));
        for (std::size_t j = 0; j < d; ++j) {
            FieldElem bj = nf_from_integral(f, r.basis.row(j));
            auto prod = nf_to_integral(nf_mul(bi, bj));
            auto cc = solve_row(r.basis, prod);
            for (std::size_t k = 0; k < d; ++k) {
                if (!is_integer(cc[k])) throw error("residue_ring: structure constants not integral");
                r.sc[(i * d + j) * d + k] = num(cc[k]);
            }
        }
    }
    r.one = rr_reduce(r, nf_to_integral(nf_one(f)));
    return r;
}

ResElem rr_reduce(const ResidueRing& r, const std::vector<Rat>& ib_coords) {
    auto cc = solve_row(r.basis, ib_coords);
    std::size_t d = cc.size();
    ResElem out(d);
    for (std::size_t k = 0; k < d; ++k) {
        if (!is_integer(cc[k])) throw error("rr_reduce: element not in the ring of integers");
        Int v = num(cc[k]) % r.diag[k];
        if (v < 0) v += r.diag[k];
        out[k] = v;
    }
    return out;
}

ResElem rr_reduce_elem(const ResidueRing& r, const FieldElem& e) {
    return rr_reduce(r, nf_to_integral(e));
}

std::vector<Rat> rr_lift(const ResidueRing& r, const ResElem& x) {
    std::vector<Rat> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = Rat(x[i]);
    return row_times(c, r.basis);
}

ResElem rr_add(const ResidueRing& r, const ResElem& a, const ResElem& b) {
    ResElem out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = (a[k] + b[k]) % r.diag[k];
    return out;
}

ResElem rr_sub(const ResidueRing& r, const ResElem& a, const ResElem& b) {
    ResElem out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        Int v = (a[k] - b[k]) % r.diag[k];
        if (v < 0) v += r.diag[k];
        out[k] = v;
    }
    return out;
}

ResElem rr_neg(const ResidueRing& r, const ResElem& a) {
    ResElem out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        Int v = (-a[k]) % r.diag[k];
        if (v < 0) v += r.diag[k];
        out[k] = v;
    }
    return out;
}

ResElem rr_mul(const ResidueRing& r, const ResElem& a, const ResElem& b) {
    std::size_t d = a.size();
    ResElem out(d, Int(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (b[j] == 0) continue;
            Int ab = a[i] * b[j];
            for (std::size_t k = 0; k < d; ++k) {
                const Int& c = r.sc[(i * d + j) * d + k];
                if (c != 0) out[k] += ab * c;
            }
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        out[k] %= r.diag[k];
        if (out[k] < 0) out[k] += r.diag[k];
    }
    return out;
}

bool rr_is_zero(const ResElem& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

std::optional<ResElem> rr_try_inverse(const ResidueRing& r, const ResElem& a) {
    std::size_t d = a.size();
    // solve x * M + y * diag = one over Z, M = multiplication by a
    IntMat stacked(2 * d, std::vector<Int>(d, Int(0)));
    for (std::size_t i = 0; i < d; ++i) {
        ResElem row(d, Int(0));
        ResElem ei(d, Int(0));
        ei[i] = 1 % r.diag[i];
        // b_i * a without the final reduction would also work; reduced is fine
        row = rr_mul(r, ei, a);
        for (std::size_t k = 0; k < d; ++k) stacked[i][k] = row[k];
        stacked[d + i][i] = r.diag[i];
    }
    HnfTransform ht = hnf_with_transform(stacked);
    // express `one` over the Hermite rows
    std::vector<Rat> w(d);
    for (std::size_t k = 0; k < d; ++k) w[k] = Rat(r.one[k]);
    std::vector<Int> comb(ht.rank, Int(0));
    for (std::size_t i = 0; i < ht.rank; ++i) {
        std::size_t p = 0;
        while (p < d && ht.h[i][p] == 0) ++p;
        if (p == d) continue;
        Rat c = w[p] / Rat(ht.h[i][p]);
        if (!is_integer(c)) return std::nullopt;
        comb[i] = num(c);
        for (std::size_t k = p; k < d; ++k) w[k] -= c * Rat(ht.h[i][k]);
    }
    for (const auto& x : w)
        if (x != 0) return std::nullopt;
    ResElem inv(d, Int(0));
    for (std::size_t i = 0; i < ht.rank; ++i)
        for (std::size_t k = 0; k < d; ++k) inv[k] += comb[i] * ht.u[i][k];
    for (std::size_t k = 0; k < d; ++k) {
        inv[k] %= r.diag[k];
        if (inv[k] < 0) inv[k] += r.diag[k];
    }
    if (rr_mul(r, inv, a) != r.one) return std::nullopt;
    return inv;
}

FMat::FMat(const NumberField& f, std::size_t r, std::size_t c)
    : f_(f), rows_(r), cols_(c), a_(r * c, nf_zero(f)) {}

FMat FMat::identity(const NumberField& f, std::size_t n) {
    FMat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = nf_one(f);
    return m;
}

FMat FMat::operator*(const FMat& o) const {
    if (cols_ != o.rows_) throw error("FMat: shape mismatch in product");
    FMat r(f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const FieldElem& x = at(i, k);
            if (nf_is_zero(x)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = nf_add(r.at(i, j), nf_mul(x, o.at(k, j)));
        }
    return r;
}

FMat FMat::operator+(const FMat& o) const {
    FMat r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = nf_add(a_[i], o.a_[i]);
    return r;
}

FMat FMat::operator-(const FMat& o) const {
    FMat r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = nf_sub(a_[i], o.a_[i]);
    return r;
}

FMat FMat::scaled(const FieldElem& s) const {
    FMat r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = nf_mul(a_[i], s);
    return r;
}

FieldElem FMat::det() const {
    if (rows_ != cols_) throw error("FMat::det: not square");
    FMat w(*this);
    FieldElem d = nf_one(f_);
    for (std::size_t c = 0; c < rows_; ++c) {
        std::size_t p = c;
        while (p < rows_ && nf_is_zero(w.at(p, c))) ++p;
        if (p == rows_) return nf_zero(f_);
        if (p != c) {
            for (std::size_t j = 0; j < rows_; ++j) std::swap(w.at(p, j), w.at(c, j));
            d = nf_neg(d);
        }
        d = nf_mul(d, w.at(c, c));
        FieldElem inv = nf_inv(w.at(c, c));
        for (std::size_t i = c + 1; i < rows_; ++i) {
            if (nf_is_zero(w.at(i, c))) continue;
            FieldElem fmul = nf_mul(w.at(i, c), inv);
            for (std::size_t j = c; j < rows_; ++j)
                w.at(i, j) = nf_sub(w.at(i, j), nf_mul(fmul, w.at(c, j)));
        }
    }
    return d;
}

FMat FMat::inverse() const {
    if (rows_ != cols_) throw error("FMat::inverse: not square");
    std::size_t n = rows_;
    FMat w(*this), inv = identity(f_, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && nf_is_zero(w.at(p, c))) ++p;
        if (p == n) throw error("FMat::inverse: singular");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w.at(p, j), w.at(c, j));
                std::swap(inv.at(p, j), inv.at(c, j));
            }
        FieldElem fmul = nf_inv(w.at(c, c));
        for (std::size_t j = 0; j < n; ++j) {
            w.at(c, j) = nf_mul(w.at(c, j), fmul);
            inv.at(c, j) = nf_mul(inv.at(c, j), fmul);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || nf_is_zero(w.at(i, c))) continue;
            FieldElem g = w.at(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                w.at(i, j) = nf_sub(w.at(i, j), nf_mul(g, w.at(c, j)));
                inv.at(i, j) = nf_sub(inv.at(i, j), nf_mul(g, inv.at(c, j)));
            }
        }
    }
    return inv;
}

bool FMat::equals(const FMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (!nf_eq(a_[i], o.a_[i])) return false;
    return true;
}

}  // namespace galmod
