#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace galmod {

using Int = mpz_class;
using Rat = mpq_class;

// Parse "p/q" or "p"; throws on malformed input or zero denominator.
Rat parse_rat(const std::string& s);

// "p/q" when the denominator is not 1, otherwise just "p".
std::string rat_str(const Rat& q);

inline Int num(const Rat& q) { return q.get_num(); }
inline Int den(const Rat& q) { return q.get_den(); }
inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Multiplicative number theory on small arguments, used for character orbits
// and cyclotomic data.  All inputs are expected > 0.
long euler_phi(long n);
int moebius(long n);
std::vector<long> divisors(long n);
long gcd_long(long a, long b);
long mod_inverse(long a, long m);  // throws if gcd(a,m) != 1

// Ramanujan sum c_m(x): sum of primitive m-th roots of unity raised to x.
Rat ramanujan_sum(long m, long x);

// FNV-1a over a byte string; used for certificate digests.
std::uint64_t fnv1a(const std::string& bytes);

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace galmod
