#pragma once

#include "galmod/group.hpp"
#include "galmod/numberfield.hpp"

namespace galmod {

// One simple factor of Q[G]: dim x dim matrices over the field.  images[g] is
// the image of group element g.  In the flattened coordinate system of the
// whole algebra this factor occupies [offset, offset + dim*dim*degree), entry
// (k,l) stored row-major with its field coordinates in power-basis order.
struct WedderburnComponent {
    NumberField field;
    std::size_t dim = 1;
    std::vector<FMat> images;
    std::vector<Rat> idempotent;  // group-algebra coordinates
    std::size_t offset = 0;
    std::size_t qdim() const { return dim * dim * field.degree(); }
};

// Q[G] as a product of matrix rings over cyclotomic and real cyclotomic
// fields.  Row g of to_flat holds the concatenated coordinates of all images
// of g, so flattening is linear in the group coordinates and invertible.
struct Wedderburn {
    FiniteGroup group;
    std::vector<WedderburnComponent> comps;
    QMatrix to_flat, from_flat;
};

// Decomposes the group algebra of an abelian or dihedral group.  Every image
// map is validated against the multiplication table and the component
// dimensions are checked to fill the algebra exactly.
Wedderburn wedderburn(const FiniteGroup& g);

// Convolution product and friends on group coordinates.
std::vector<Rat> ga_mul(const FiniteGroup& g, const std::vector<Rat>& a,
                        const std::vector<Rat>& b);
std::vector<Rat> ga_one(const FiniteGroup& g);
std::vector<Rat> ga_from_element(const FiniteGroup& g, int idx);

std::vector<Rat> flat_of(const Wedderburn& w, const std::vector<Rat>& a);
std::vector<Rat> algebra_of_flat(const Wedderburn& w, const std::vector<Rat>& flat);
FMat block_of_flat(const Wedderburn& w, std::size_t i, const std::vector<Rat>& flat);
void write_block(const Wedderburn& w, std::size_t i, const FMat& m, std::vector<Rat>& flat);

}  // namespace galmod
