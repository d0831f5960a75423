#pragma once

#include <cstdint>
#include <vector>

#include "galmod/maxorder.hpp"

namespace galmod {

enum class LocalStatus { free_at, not_free_at, inconclusive };

struct PrimeReport {
    Int p;
    LocalStatus status = LocalStatus::inconclusive;
    std::vector<std::vector<Rat>> witnesses;  // d ambient vectors when free
    bool exhausted = false;  // the whole candidate space was swept
    std::uint64_t tried = 0;
};

struct LocalFreenessReport {
    std::vector<Int> primes;
    std::vector<PrimeReport> reports;
    bool all_free() const;
};

// Ascending unique prime factors; trial division first, Pollard rho for any
// large cofactor.
std::vector<Int> prime_factors(Int n);

// Primes dividing the index of the order inside its maximal order.  Away from
// these the order is maximal locally and freeness is automatic.
std::vector<Int> critical_primes(const MaximalOrderData& mo);

// Nakayama test at p: search alphas with sum of A alpha_j plus pX equal to X.
// Candidates are coefficient vectors over X's basis mod p; the sweep is
// exhaustive when p^(rank * dim) fits the budget, otherwise `samples` random
// draws are tried and failure is reported as inconclusive.
PrimeReport locally_free_at(const Order& a, const GModuleLattice& x, const Int& p,
                            std::uint64_t budget = std::uint64_t(1) << 20,
                            std::uint64_t samples = 100000, std::uint64_t seed = 1);

LocalFreenessReport local_freeness(const MaximalOrderData& mo, const GModuleLattice& x,
                                   std::uint64_t budget = std::uint64_t(1) << 20,
                                   std::uint64_t samples = 100000, std::uint64_t seed = 1);

}  // namespace galmod
