#include "galmod/rational.hpp"

#include <numeric>

namespace galmod {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            return Rat(n);
        }
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw error("zero denominator in rational literal: " + s);
        Rat q(n, d);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw error("malformed rational literal: " + s);
    }
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long euler_phi(long n) {
    if (n <= 0) throw error("euler_phi: nonpositive argument");
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

int moebius(long n) {
    if (n <= 0) throw error("moebius: nonpositive argument");
    int sign = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::vector<long> divisors(long n) {
    std::vector<long> low, high;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            low.push_back(d);
            if (d != n / d) high.push_back(n / d);
        }
    }
    for (auto it = high.rbegin(); it != high.rend(); ++it) low.push_back(*it);
    return low;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }

long mod_inverse(long a, long m) {
    long r0 = m, r1 = ((a % m) + m) % m;
    long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1;
        long t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw error("mod_inverse: arguments not coprime");
    return ((t0 % m) + m) % m;
}

Rat ramanujan_sum(long m, long x) {
    // c_m(x) = mu(m/g) * phi(m) / phi(m/g) with g = gcd(x, m)
    long g = std::gcd(((x % m) + m) % m, m);
    if (g == 0) g = m;  // x = 0 mod m
    long q = m / g;
    int mu = moebius(q);
    if (mu == 0) return Rat(0);
    return Rat(mu * euler_phi(m), euler_phi(q));
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace galmod
