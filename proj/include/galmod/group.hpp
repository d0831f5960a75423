#pragma once

#include "galmod/rational.hpp"

#include <string>
#include <vector>

namespace galmod {

// Finite group given by a full multiplication table.  Element 0 is the
// identity.  Supported constructions:
//   abelian({d1,...,dk})  direct product of cyclic groups, mixed-radix index:
//                         element g = (g1,...,gk) has index sum g_j * prod_{j'<j} d_{j'}
//   dihedral(n)           order 2n; indices 0..n-1 are r^i, n+j is s*r^j,
//                         with the relations r^n = s^2 = 1, s r s = r^-1
class FiniteGroup {
  public:
    static FiniteGroup abelian(const std::vector<long>& factors);
    static FiniteGroup dihedral(long n);

    int order() const { return order_; }
    int mul(int a, int b) const { return mul_[a * order_ + b]; }
    int inverse(int a) const { return inv_[a]; }
    int element_order(int a) const;

    bool is_abelian() const { return abelian_; }
    const std::vector<long>& abelian_factors() const { return factors_; }
    long dihedral_n() const { return dihedral_n_; }  // 0 when not dihedral
    long exponent() const;

    std::string describe() const;

    bool operator==(const FiniteGroup& o) const = default;

  private:
    void finish();  // fills inverses, checks the table is a group

    int order_ = 1;
    bool abelian_ = true;
    std::vector<long> factors_;
    long dihedral_n_ = 0;
    std::vector<int> mul_;
    std::vector<int> inv_;
};

}  // namespace galmod
