#include "galmod/localfree.hpp"

#include <random>

namespace galmod {

namespace {

bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

Int rho_factor(const Int& n) {
    // Brent's cycle variant; n must be composite and odd
    for (Int c(1);; ++c) {
        Int x(2), y(2), d(1);
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x > y ? x - y : y - x;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
}

void factor_into(Int n, std::vector<Int>& out) {
    if (n <= 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (n % p == 0) {
            out.push_back(Int(p));
            while (n % p == 0) n /= p;
            factor_into(n, out);
            return;
        }
    }
    for (long p = 17; p < 1000000 && Int(p) * p <= n; p += 2) {
        if (n % p == 0) {
            out.push_back(Int(p));
            while (n % p == 0) n /= p;
            factor_into(n, out);
            return;
        }
    }
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = rho_factor(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<Int> prime_factors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> out;
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Int> critical_primes(const MaximalOrderData& mo) {
    Rat idx = lattice_index(mo.m.lat, mo.a.lat);
    if (idx.get_den() != 1 || idx <= 0)
        throw error("critical_primes: index is not a positive integer");
    return prime_factors(idx.get_num());
}

bool LocalFreenessReport::all_free() const {
    for (const auto& r : reports)
        if (r.status != LocalStatus::free_at) return false;
    return true;
}

PrimeReport locally_free_at(const Order& a, const GModuleLattice& x, const Int& p,
                            std::uint64_t budget, std::uint64_t samples, std::uint64_t seed) {
    if (!is_prime(p)) throw error("locally_free_at: p must be prime");
    if (!(a.group == x.group)) throw error("locally_free_at: group mismatch");
    std::size_t m = x.dim(), d = x.rank;
    std::size_t digits = m * d;
    ZLattice px = lattice_scale(x.lat, Rat(p));

    PrimeReport rep;
    rep.p = p;
    auto attempt = [&](const std::vector<long>& c) {
        std::vector<std::vector<Rat>> alphas;
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<Rat> v(m, Rat(0));
            for (std::size_t i = 0; i < m; ++i) {
                if (c[j * m + i] == 0) continue;
                auto b = x.lat.basis_row(i);
                for (std::size_t t = 0; t < m; ++t) v[t] += Rat(c[j * m + i]) * b[t];
            }
            alphas.push_back(std::move(v));
        }
        ++rep.tried;
        if (lattice_sum(order_span(a, x, alphas), px) == x.lat) {
            rep.status = LocalStatus::free_at;
            rep.witnesses = std::move(alphas);
            return true;
        }
        return false;
    };

    // space size p^digits against the budget, watching for overflow
    bool exhaustive = true;
    if (!p.fits_slong_p()) {
        exhaustive = false;
    } else {
        Int space(1);
        for (std::size_t i = 0; i < digits && exhaustive; ++i) {
            space *= p;
            if (space > budget) exhaustive = false;
        }
    }

    if (exhaustive) {
        long pl = p.get_si();
        std::vector<long> c(digits, 0);
        while (true) {
            if (attempt(c)) return rep;
            std::size_t i = 0;
            while (i < digits && ++c[i] == pl) c[i++] = 0;
            if (i == digits) break;
        }
        rep.status = LocalStatus::not_free_at;
        rep.exhausted = true;
        return rep;
    }

    std::mt19937_64 rng(seed);
    long pl = p.fits_slong_p() ? p.get_si() : 0;
    if (pl == 0) throw error("locally_free_at: prime too large to sample");
    std::uniform_int_distribution<long> dist(0, pl - 1);
    std::vector<long> c(digits);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& v : c) v = dist(rng);
        if (attempt(c)) return rep;
    }
    rep.status = LocalStatus::inconclusive;
    return rep;
}

LocalFreenessReport local_freeness(const MaximalOrderData& mo, const GModuleLattice& x,
                                   std::uint64_t budget, std::uint64_t samples,
                                   std::uint64_t seed) {
    LocalFreenessReport out;
    out.primes = critical_primes(mo);
    for (const Int& p : out.primes)
        out.reports.push_back(locally_free_at(mo.a, x, p, budget, samples, seed));
    return out;
}

}  // namespace galmod
