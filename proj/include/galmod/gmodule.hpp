#pragma once

#include "galmod/groupalgebra.hpp"

#include <cstdint>

namespace galmod {

// A lattice X with a G-action in an ambient space isomorphic to Q[G]^rank.
// A(sigma)A(tau) = A(sigma tau); matrices act on coordinate columns, so a row
// vector x transforms as x * A(sigma)^T.  Construction checks the action is a
// homomorphism with the regular character and that the lattice is G-stable.
struct GModuleLattice {
    FiniteGroup group;
    std::size_t rank = 1;
    std::vector<QMatrix> action;
    ZLattice lat;

    std::size_t dim() const { return lat.ambient(); }
};

GModuleLattice make_module(const FiniteGroup& g, std::size_t rank, std::vector<QMatrix> action,
                           const ZLattice& lat);
// X = Z[G]^rank with the left translation action.
GModuleLattice regular_module(const FiniteGroup& g, std::size_t rank);

// Matrix of the algebra element lambda in the module, homomorphism convention;
// lambda acts on a row vector as x * action_matrix(..)^T.
QMatrix action_matrix(const GModuleLattice& m, const std::vector<Rat>& lambda);
std::vector<Rat> act_on(const GModuleLattice& m, const std::vector<Rat>& lambda,
                        const std::vector<Rat>& x);

// An order (or a plain full lattice) in Q[G], group-basis coordinates.
struct Order {
    FiniteGroup group;
    ZLattice lat;
};

// Checks full rank, 1 in the lattice and closure under multiplication.
Order make_order(const FiniteGroup& g, const ZLattice& lat);

// The d-fold orthogonal sum of the trace form t(g,h) = [gh = 1].
struct PairingData {
    FiniteGroup group;
    std::size_t d = 1;
    QMatrix gram;
};

PairingData trace_pairing(const FiniteGroup& g, std::size_t d);
Rat trace_pair(const FiniteGroup& g, const std::vector<Rat>& a, const std::vector<Rat>& b);
Rat s_pair(const PairingData& p, const std::vector<Rat>& a, const std::vector<Rat>& b);

// {x : s(x, m) integral} for a full-rank lattice; an involution.
ZLattice dual_lattice(const ZLattice& m, const PairingData& p);

// (mu, nu) = sum over g of s(g mu, nu) g^-1 on flat d-tuples of algebra
// elements; satisfies t((mu,nu), delta) = s(nu, delta mu).
std::vector<Rat> pairing_map(const PairingData& p, const std::vector<Rat>& mu,
                             const std::vector<Rat>& nu);
// Componentwise left multiplication of a flat d-tuple by an algebra element.
std::vector<Rat> tuple_left_mult(const PairingData& p, const std::vector<Rat>& delta,
                                 const std::vector<Rat>& mu);

// Invertible m x m matrix whose row blocks of size |G| form a Q[G]-basis of
// the ambient space, found by seeded random combinations of X's lattice rows;
// a flat tuple v corresponds to the ambient vector v * T.
QMatrix free_basis_matrix(const GModuleLattice& x, std::uint64_t seed = 1);

// {lambda in Q[G] : lambda X <= Y} for modules sharing one ambient action.
// Works through a free basis of the ambient module found by seeded random
// search, then one pairing-image lattice and two duals.  When x and y are the
// same lattice the result is validated as an order.
Order associated_order(const GModuleLattice& x, const GModuleLattice& y, std::uint64_t seed = 1);

// Largest left ideal {x : x m <= a} of m contained in a; verified two-sided.
Order conductor(const Order& a, const Order& m);

// Lattice sum over all pairs of a-basis times alpha-tuple rows; equals X
// exactly when the alphas generate X as an a-module.
ZLattice order_span(const Order& a, const GModuleLattice& x,
                    const std::vector<std::vector<Rat>>& alphas);

}  // namespace galmod
