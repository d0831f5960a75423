#pragma once

#include <cstdint>
#include <vector>

#include "galmod/gmodule.hpp"
#include "galmod/groupalgebra.hpp"

namespace galmod {

// A module rewritten over a free basis of its ambient space and pushed through
// the splitting map: coordinates are d tuple slots of per-component blocks.
struct SplitModule {
    GModuleLattice x;
    QMatrix to_tuple;    // ambient row vector times to_tuple = flat tuple
    QMatrix to_ambient;  // inverse
    ZLattice x_flat;     // the lattice in flat tuple coordinates
};
SplitModule split_module(const GModuleLattice& x, const Wedderburn& w, std::uint64_t seed = 1);

// Flat tuple columns belonging to component `comp` when the tuple has d slots.
std::vector<std::size_t> component_cols(const Wedderburn& w, std::size_t comp, std::size_t d);

// One simple component of a maximal order in nice form: conjugating the full
// matrix order over O_F by s gives the component, so its lattice is spanned by
// s (w e_kl) s^-1 over an integral basis w of F.
struct NiceComponent {
    FMat s, s_inv;
    FracIdeal steinitz;   // always (1): a nonprincipal class cannot occur here
    ZLattice block;       // the component order, block coordinates
    ZLattice cond_block;  // component of the conductor, block coordinates
    FracIdeal g;          // central ideal: c in F with c * identity in cond_block
    ZLattice f_block;     // g * block, a two-sided ideal inside cond_block
};

struct MaximalOrderData {
    Wedderburn w;
    Order a;     // the order that was enlarged
    Order m;     // maximal order containing a
    Order cond;  // conductor of a in m
    std::vector<NiceComponent> comps;
};

// Maximal order containing a, one nice component at a time: the column module
// of a's image block is made free over O_F and its endomorphism ring is the
// conjugated matrix order.  Also computes the conductor and, per component,
// its block slice and central ideal.
MaximalOrderData maximal_order_containing(const Order& a, const Wedderburn& w);

// O_F-basis of a full module handed over as a Z-lattice whose coordinates are
// r blocks of integral-basis coordinates; the lattice must be stable under
// multiplication by O_F.  Triangularizes position by position, replacing each
// coordinate ideal by a principal generator.
std::vector<std::vector<FieldElem>> steinitz_free_basis(const NumberField& f, std::size_t r,
                                                        const ZLattice& l);

// Basis of component comp of M X over the component order.  Sliced vectors
// live in the component slice of flat tuple coordinates (d slots of one block
// each); betas are the same generators written in the ambient space of X.
struct ComponentFreeBasis {
    std::size_t comp;
    ZLattice mx;                                 // M_i X in sliced coordinates
    std::vector<std::vector<FieldElem>> omegas;  // d*n row-one vectors, conjugated coords
    std::vector<std::vector<Rat>> betas_sliced;  // d generators, sliced coordinates
    std::vector<std::vector<Rat>> betas;         // the same d generators in Q tensor X
};

// Thrown when M X fails to be free over the maximal order; the module then
// cannot be free over any smaller order either.
struct NotFreeOverMaximal : error {
    using error::error;
};

ComponentFreeBasis component_free_basis(const MaximalOrderData& mo, std::size_t comp,
                                        const SplitModule& sm);

}  // namespace galmod
