#pragma once

#include "galmod/qmatrix.hpp"
#include "galmod/rational.hpp"

#include <optional>
#include <vector>

namespace galmod {

// Integer matrices used by the normal form routines.
using IntMat = std::vector<std::vector<Int>>;

// Row Hermite form, unique representative: pivots positive, entries above a
// pivot reduced into [0, pivot).  Returns the nonzero rows.
IntMat hnf_int(const IntMat& m);

// Hermite form together with a unimodular U so that U*m = [H; 0].  U covers
// all input rows; H holds the first `rank` rows.
struct HnfTransform {
    IntMat h;       // rank x cols
    IntMat u;       // rows x rows, unimodular
    std::size_t rank;
};
HnfTransform hnf_with_transform(const IntMat& m);

// Smith form of a square nonsingular integer matrix: u*m*v = diag(d)
// with d_1 | d_2 | ... all positive.
struct SnfTransform {
    std::vector<Int> d;
    IntMat u, v;
};
SnfTransform snf_with_transform(const IntMat& m);

IntMat int_identity(std::size_t n);
IntMat int_mul(const IntMat& a, const IntMat& b);
IntMat int_inverse_unimodular(const IntMat& u);  // exact inverse, asserts det = +-1

// Finitely generated subgroup of Q^n in canonical form: one positive common
// denominator and an integer basis in row Hermite form.  Two equal lattices
// compare equal memberwise.
class ZLattice {
  public:
    ZLattice() : ambient_(0), den_(1) {}

    // Span of the given rows inside Q^ambient.
    static ZLattice from_rows(std::size_t ambient, const std::vector<std::vector<Rat>>& rows);
    static ZLattice standard(std::size_t n);               // Z^n
    static ZLattice zero(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t rank() const { return mat_.size(); }
    const Int& denominator() const { return den_; }
    const IntMat& int_rows() const { return mat_; }

    std::vector<Rat> basis_row(std::size_t i) const;
    QMatrix basis_matrix() const;                          // rank x ambient

    bool operator==(const ZLattice& o) const = default;

    bool contains(const std::vector<Rat>& v) const;
    bool contains(const ZLattice& o) const;

    // Integer coordinates of v over the Hermite basis, if v lies in the span
    // and the coordinates are integral.
    std::optional<std::vector<Int>> coords(const std::vector<Rat>& v) const;
    // Rational coordinates over the Hermite basis, if v lies in the Q-span.
    std::optional<std::vector<Rat>> rational_coords(const std::vector<Rat>& v) const;

  private:
    std::size_t ambient_;
    Int den_;
    IntMat mat_;
};

ZLattice lattice_sum(const ZLattice& a, const ZLattice& b);
ZLattice lattice_intersect(const ZLattice& a, const ZLattice& b);

// [x : y] for y <= x of equal rank; exact rational in general (a true index
// when it is an integer).
Rat lattice_index(const ZLattice& x, const ZLattice& y);

// Scale every basis vector by c.
ZLattice lattice_scale(const ZLattice& l, const Rat& c);

// Image of l under v -> v * m.
ZLattice lattice_apply(const ZLattice& l, const QMatrix& m);

// Smith data of l inside ambient (equal rank required): a new basis of the
// ambient lattice and elementary divisors so that l = sum d_i * (basis row i).
struct SmithBasis {
    std::vector<Int> divisors;
    QMatrix ambient_basis;  // rows form a basis of `ambient`
};
SmithBasis smith_basis(const ZLattice& ambient, const ZLattice& sub);

// Lattice of all x with x * m integral; m must have full row rank.
ZLattice integrality_lattice(const QMatrix& m);

}  // namespace galmod
