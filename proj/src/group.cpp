#include "galmod/group.hpp"

#include <numeric>

namespace galmod {

FiniteGroup FiniteGroup::abelian(const std::vector<long>& factors) {
    for (long d : factors)
        if (d < 2) throw error("abelian group: factors must be >= 2");
    long n = 1;
    for (long d : factors) n *= d;
    if (n > 10000) throw error("abelian group: order too large");
    FiniteGroup g;
    g.order_ = static_cast<int>(n);
    g.abelian_ = true;
    g.factors_ = factors;
    std::size_t k = factors.size();
    auto decode = [&](int idx) {
        std::vector<long> t(k);
        for (std::size_t j = 0; j < k; ++j) {
            t[j] = idx % factors[j];
            idx /= static_cast<int>(factors[j]);
        }
        return t;
    };
    auto encode = [&](const std::vector<long>& t) {
        long idx = 0, w = 1;
        for (std::size_t j = 0; j < k; ++j) {
            idx += t[j] * w;
            w *= factors[j];
        }
        return static_cast<int>(idx);
    };
    g.mul_.resize(n * n);
    for (int a = 0; a < n; ++a) {
        auto ta = decode(a);
        for (int b = 0; b < n; ++b) {
            auto tb = decode(b);
            std::vector<long> tc(k);
            for (std::size_t j = 0; j < k; ++j) tc[j] = (ta[j] + tb[j]) % factors[j];
            g.mul_[a * n + b] = encode(tc);
        }
    }
    g.finish();
    return g;
}

FiniteGroup FiniteGroup::dihedral(long n) {
    if (n < 2) throw error("dihedral group: n must be >= 2");
    FiniteGroup g;
    g.order_ = static_cast<int>(2 * n);
    g.abelian_ = (n <= 2);
    // D2 multiplies componentwise mod 2 under its index encoding, so expose
    // the C2 x C2 factor data the character enumeration needs
    if (n == 2) g.factors_ = {2, 2};
    g.dihedral_n_ = n;
    int N = g.order_;
    g.mul_.resize(N * N);
    auto enc = [&](bool s, long i) { return static_cast<int>((s ? n : 0) + ((i % n) + n) % n); };
    for (int a = 0; a < N; ++a) {
        bool sa = a >= n;
        long ia = sa ? a - n : a;
        for (int b = 0; b < N; ++b) {
            bool sb = b >= n;
            long ib = sb ? b - n : b;
            // r^i * r^j = r^{i+j};  r^i * s r^j = s r^{j-i}
            // s r^i * r^j = s r^{i+j};  s r^i * s r^j = r^{j-i}
            int c;
            if (!sa && !sb) c = enc(false, ia + ib);
            else if (!sa && sb) c = enc(true, ib - ia);
            else if (sa && !sb) c = enc(true, ia + ib);
            else c = enc(false, ib - ia);
            g.mul_[a * N + b] = c;
        }
    }
    g.finish();
    return g;
}

void FiniteGroup::finish() {
    int n = order_;
    for (int a = 0; a < n; ++a) {
        if (mul(0, a) != a || mul(a, 0) != a) throw error("group table: identity fails");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw error("group table: associativity fails");
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == 0 && mul(b, a) == 0) {
                inv_[a] = b;
                break;
            }
        if (inv_[a] < 0) throw error("group table: missing inverse");
    }
}

int FiniteGroup::element_order(int a) const {
    int e = 1, x = a;
    while (x != 0) {
        x = mul(x, a);
        ++e;
    }
    return e;
}

long FiniteGroup::exponent() const {
    long e = 1;
    for (int a = 0; a < order_; ++a) e = std::lcm(e, static_cast<long>(element_order(a)));
    return e;
}

std::string FiniteGroup::describe() const {
    if (dihedral_n_ > 0) return "D" + std::to_string(dihedral_n_);
    std::string s = "C";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += "xC";
        s += std::to_string(factors_[i]);
    }
    return s;
}

}  // namespace galmod
