#pragma once

#include "galmod/lattice.hpp"
#include "galmod/qmatrix.hpp"
#include "galmod/rational.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace galmod {

enum class FieldKind { rationals, cyclotomic, real_cyclotomic, generic };

// Number field Q[x]/(f) with a designated integral basis.  The catalog kinds
// carry exact data: cyclotomic(n) is Q(zeta_n) with the power basis of zeta
// (n is normalized so n mod 4 != 2), real_cyclotomic(n) is Q(zeta_n + 1/zeta_n)
// with the power basis of that generator.  Both power bases are genuinely
// maximal orders.  A generic field trusts the integral basis it is given and
// only checks that it is a full-rank ring containing 1.
class NumberField {
  public:
    NumberField() = default;

    static NumberField rationals();
    static NumberField cyclotomic(long n);
    static NumberField real_cyclotomic(long n);
    static NumberField generic(const std::vector<Rat>& monic_poly, const QMatrix& integral_basis);

    FieldKind kind() const;
    long conductor() const;  // catalog kinds only
    std::size_t degree() const;
    const std::vector<Rat>& poly() const;  // monic, ascending coefficients
    const QMatrix& integral_basis() const;
    const QMatrix& integral_basis_inverse() const;
    const Rat& discriminant() const;       // of the integral basis
    std::size_t complex_pairs() const;

    bool operator==(const NumberField& o) const;
    bool valid() const { return rep_ != nullptr; }

  private:
    struct Rep;
    std::shared_ptr<const Rep> rep_;
};

struct FieldElem {
    NumberField f;
    std::vector<Rat> c;  // power-basis coordinates
};

FieldElem nf_zero(const NumberField& f);
FieldElem nf_one(const NumberField& f);
FieldElem nf_from_rat(const NumberField& f, const Rat& q);
FieldElem nf_gen(const NumberField& f);  // the class x of the defining polynomial

FieldElem nf_add(const FieldElem& a, const FieldElem& b);
FieldElem nf_sub(const FieldElem& a, const FieldElem& b);
FieldElem nf_neg(const FieldElem& a);
FieldElem nf_mul(const FieldElem& a, const FieldElem& b);
FieldElem nf_mul_rat(const FieldElem& a, const Rat& q);
FieldElem nf_inv(const FieldElem& a);  // throws on zero
FieldElem nf_div(const FieldElem& a, const FieldElem& b);
FieldElem nf_pow(const FieldElem& a, long e);
bool nf_eq(const FieldElem& a, const FieldElem& b);
bool nf_is_zero(const FieldElem& a);

// Multiplication-by-e matrix on the power basis; row i holds x^i * e.
QMatrix nf_mult_matrix(const FieldElem& e);
Rat nf_norm(const FieldElem& e);
Rat nf_trace(const FieldElem& e);

// Coordinates over the integral basis and back.
std::vector<Rat> nf_to_integral(const FieldElem& e);
FieldElem nf_from_integral(const NumberField& f, const std::vector<Rat>& v);
bool nf_is_integral(const FieldElem& e);

// zeta_m^k inside a cyclotomic field whose conductor divides m compatibly
// (field conductor must equal m after normalization).  Handles m = 2u, u odd.
FieldElem zeta_power(const NumberField& f, long m, long k);

// Galois action on a cyclotomic field: zeta -> zeta^a with gcd(a, n) = 1.
FieldElem cyclotomic_galois(const FieldElem& e, long a);

// Fundamental units plus torsion for the catalog fields, exact for the
// conductors this library admits (class number one, n <= 20): cyclotomic
// units at every level of the conductor.  Throws for generic fields.
std::vector<FieldElem> unit_generators(const NumberField& f);

// Fractional ideal as a full lattice in integral-basis coordinates.
struct FracIdeal {
    NumberField f;
    ZLattice lat;
};

FracIdeal whole_ring(const NumberField& f);
FracIdeal ideal_from_generators(const NumberField& f, const std::vector<FieldElem>& gens);
FracIdeal ideal_from_lattice(const NumberField& f, const ZLattice& module_lat);  // checks O-stability
FracIdeal ideal_mul(const FracIdeal& a, const FracIdeal& b);
FracIdeal ideal_inverse(const FracIdeal& a);
Rat ideal_norm(const FracIdeal& a);  // [O : a] as a rational
bool ideal_is_integral(const FracIdeal& a);
bool ideal_eq(const FracIdeal& a, const FracIdeal& b);

// A generator when the ideal is principal: the basis is reduced under the T2
// form, then growing coefficient boxes are swept with an exact norm check.
// Throws when the box limit is exceeded.
FieldElem principal_gen(const FracIdeal& a);

// O/a for an integral full-rank ideal.  Elements are coordinate vectors over
// an adapted basis with entry t reduced mod diag[t].
struct ResidueRing {
    NumberField f;
    FracIdeal ideal;
    std::vector<Int> diag;   // elementary divisors, d_1 | d_2 | ...
    QMatrix basis;           // rows: adapted Z-basis of O, integral-basis coords
    QMatrix basis_inv;
    std::vector<Int> sc;     // structure constants c[i][j][k], flattened
    Int size;                // product of diag
    std::vector<Int> one;
};

using ResElem = std::vector<Int>;

ResidueRing residue_ring(const NumberField& f, const FracIdeal& a);
ResElem rr_reduce(const ResidueRing& r, const std::vector<Rat>& ib_coords);
ResElem rr_reduce_elem(const ResidueRing& r, const FieldElem& e);
std::vector<Rat> rr_lift(const ResidueRing& r, const ResElem& x);  // ib coords
ResElem rr_add(const ResidueRing& r, const ResElem& a, const ResElem& b);
ResElem rr_sub(const ResidueRing& r, const ResElem& a, const ResElem& b);
ResElem rr_mul(const ResidueRing& r, const ResElem& a, const ResElem& b);
ResElem rr_neg(const ResidueRing& r, const ResElem& a);
bool rr_is_zero(const ResElem& a);
// Multiplicative inverse in the finite ring, if the element is a unit.
std::optional<ResElem> rr_try_inverse(const ResidueRing& r, const ResElem& a);

// Matrix over a number field.
class FMat {
  public:
    FMat() : rows_(0), cols_(0) {}
    FMat(const NumberField& f, std::size_t r, std::size_t c);
    static FMat identity(const NumberField& f, std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const NumberField& field() const { return f_; }

    FieldElem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const FieldElem& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    FMat operator*(const FMat& o) const;
    FMat operator+(const FMat& o) const;
    FMat operator-(const FMat& o) const;
    FMat scaled(const FieldElem& s) const;
    FieldElem det() const;
    FMat inverse() const;
    bool equals(const FMat& o) const;

  private:
    NumberField f_;
    std::size_t rows_, cols_;
    std::vector<FieldElem> a_;
};

}  // namespace galmod
