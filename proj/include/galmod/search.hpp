#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "galmod/localfree.hpp"
#include "galmod/maxorder.hpp"
#include "galmod/unitenum.hpp"

namespace galmod {

// Structured Z-basis of M X: per component, the vectors S (w e_k1 omega) in
// flat tuple coordinates.  A candidate generator built from unit lifts has
// integer coordinates over this basis that can be read off the lift entries.
struct MxBasis {
    std::vector<std::size_t> order;      // component indices in block order
    std::vector<std::size_t> offset;     // per order position, first row index
    std::vector<std::vector<Rat>> rows;  // all rows, block major
};
MxBasis assemble_mx_basis(const MaximalOrderData& mo,
                          const std::vector<ComponentFreeBasis>& bases, const SplitModule& sm,
                          const std::vector<std::size_t>& order);

// Coordinates of generator j of the candidate tuple's component block, read
// off the entries of the unit lift over the integral basis of the field.
std::vector<Rat> lift_block_coords(const WedderburnComponent& c, const FMat& lift, std::size_t j);

// Triangular membership test: x in X iff its MX-coordinate vector y satisfies
// (y * h_inv)_k in ideals_k * Z for every k.
struct MembershipTable {
    QMatrix h, h_inv;         // unit upper triangular
    std::vector<Int> ideals;  // the k-th coordinate ideal is ideals[k] * Z
    QMatrix mx_inv;           // flat tuple coordinates -> MX coordinates
};
MembershipTable membership_table(const MxBasis& mxb, const SplitModule& sm);
std::vector<Rat> mx_coords(const MembershipTable& t, const std::vector<Rat>& flat);
bool table_member(const MembershipTable& t, const std::vector<Rat>& coords);

enum class Verdict { is_free, not_free, inconclusive };

struct SearchStats {
    Int total_tuples = 0;                    // product of the unit set sizes
    std::uint64_t tuples_tested = 0;         // tuples whose last block was evaluated
    std::uint64_t verified = 0;              // candidates that reached exact verification
    std::vector<std::uint64_t> prune_depth;  // rejections per block depth
};

struct FreenessCertificate {
    Verdict verdict = Verdict::inconclusive;
    std::string reason;
    std::vector<std::vector<Rat>> generators;  // ambient coordinates of X
    std::vector<std::size_t> tuple;            // winning rep index per component
    std::uint64_t verify_hash = 0;
    SearchStats stats;
    std::optional<Int> witness_prime;  // present when the local stage refuted freeness
    bool exhausted = false;
};

// Lexicographic sweep over unit tuples with triangular pruning; accepted
// candidates are verified exactly against X before the free verdict.  The
// outermost unit range is split across `jobs` workers; the reported winner is
// the lexicographically least accepting tuple.
FreenessCertificate search(const std::vector<UnitRepSet>& units,
                           const std::vector<ComponentFreeBasis>& bases, const MxBasis& mxb,
                           const MembershipTable& table, const MaximalOrderData& mo,
                           const SplitModule& sm, int jobs = 1);

struct FreeTestOptions {
    int jobs = 1;
    std::size_t unit_cap = 1000000;
    std::uint64_t local_budget = std::uint64_t(1) << 20;
    std::uint64_t local_samples = 100000;
    std::uint64_t seed = 1;
    bool skip_local = false;  // push on to the search even when a prime refutes
};

// Full pipeline: splitting, maximal order, component bases, local checks,
// unit enumeration, generator search.
FreenessCertificate free_test(const Order& a, const GModuleLattice& x,
                              const FreeTestOptions& opts = {});

std::uint64_t lattice_hash(const ZLattice& l);

}  // namespace galmod
