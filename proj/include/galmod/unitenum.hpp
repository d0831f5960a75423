#pragma once

#include <cstddef>
#include <vector>

#include "galmod/numberfield.hpp"

namespace galmod {

// Square matrices over a finite quotient O_F/g.
struct ResidueMatrixRing {
    ResidueRing base;
    std::size_t n = 1;
};
ResidueMatrixRing residue_matrix_ring(const NumberField& f, const FracIdeal& g, std::size_t n);

using RMat = std::vector<ResElem>;  // n*n entries, row major

RMat rm_identity(const ResidueMatrixRing& r);
RMat rm_mul(const ResidueMatrixRing& r, const RMat& a, const RMat& b);
RMat rm_reduce(const ResidueMatrixRing& r, const FMat& m);

struct UnitRep {
    RMat reduced;
    FMat lift;  // over O_F with unit determinant; reduces to `reduced`
};

struct UnitRepSet {
    std::size_t comp = 0;
    std::vector<UnitRep> reps;
    bool complete = false;
};

// E_ij(x) for i != j, with x running over an additive generating set of the
// quotient; empty for 1x1 matrices.  Lift determinants are 1.
std::vector<UnitRep> elementary_gens(const ResidueMatrixRing& r);

// diag(u, 1, ..., 1) per unit generator u of O_F, dropped when u reduces to 1.
std::vector<UnitRep> v_subgroup_gens(const ResidueMatrixRing& r,
                                     const std::vector<FieldElem>& units);

// Closure of the generators under multiplication, breadth first from the
// identity with the generator order fixed; every element keeps a lift composed
// from generator lifts.  complete = false once the cap is passed.
UnitRepSet unit_image(const ResidueMatrixRing& r, const std::vector<UnitRep>& gens,
                      std::size_t cap = 1000000);

}  // namespace galmod
