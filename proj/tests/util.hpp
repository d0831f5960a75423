#pragma once

#include "galmod/lattice.hpp"
#include "galmod/qmatrix.hpp"

#include <random>
#include <vector>

namespace galmod::testutil {

using Rng = std::mt19937_64;

inline Rat rnd_rat(Rng& rng, int num_range = 5, int den_max = 3) {
    std::uniform_int_distribution<int> dn(-num_range, num_range);
    std::uniform_int_distribution<int> dd(1, den_max);
    Rat q(dn(rng), dd(rng));
    q.canonicalize();
    return q;
}

inline std::vector<Rat> rnd_row(Rng& rng, std::size_t n, int num_range = 5, int den_max = 3) {
    std::vector<Rat> r(n);
    for (auto& x : r) x = rnd_rat(rng, num_range, den_max);
    return r;
}

// Random full-rank lattice in Q^n.
inline ZLattice rnd_lattice(Rng& rng, std::size_t n) {
    while (true) {
        std::vector<std::vector<Rat>> rows;
        for (std::size_t i = 0; i < n; ++i) rows.push_back(rnd_row(rng, n));
        auto l = ZLattice::from_rows(n, rows);
        if (l.rank() == n) return l;
    }
}

// Random unimodular integer matrix, built from elementary operations.
inline IntMat rnd_unimodular(Rng& rng, std::size_t n, int steps = 20) {
    IntMat u = int_identity(n);
    std::uniform_int_distribution<std::size_t> di(0, n - 1);
    std::uniform_int_distribution<int> dc(-3, 3);
    std::uniform_int_distribution<int> dk(0, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = di(rng), j = di(rng);
        switch (dk(rng)) {
            case 0:
                if (i != j) {
                    Int c(dc(rng));
                    for (std::size_t t = 0; t < n; ++t) u[i][t] += c * u[j][t];
                }
                break;
            case 1:
                std::swap(u[i], u[j]);
                break;
            default:
                for (std::size_t t = 0; t < n; ++t) u[i][t] = -u[i][t];
        }
    }
    return u;
}

// Random integer matrix with nonzero determinant (for building sublattices).
inline IntMat rnd_nonsingular(Rng& rng, std::size_t n, int range = 3) {
    std::uniform_int_distribution<int> dc(-range, range);
    while (true) {
        IntMat t(n, std::vector<Int>(n));
        for (auto& row : t)
            for (auto& x : row) x = dc(rng);
        QMatrix q(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q.at(i, j) = Rat(t[i][j]);
        if (q.det() != 0) return t;
    }
}

inline ZLattice sublattice_by(const ZLattice& l, const IntMat& t) {
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::vector<Rat> v(l.ambient(), Rat(0));
        for (std::size_t k = 0; k < t[i].size(); ++k) {
            if (t[i][k] == 0) continue;
            auto b = l.basis_row(k);
            for (std::size_t j = 0; j < v.size(); ++j) v[j] += Rat(t[i][k]) * b[j];
        }
        rows.push_back(std::move(v));
    }
    return ZLattice::from_rows(l.ambient(), rows);
}

}  // namespace galmod::testutil
