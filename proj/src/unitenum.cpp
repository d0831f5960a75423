#include "galmod/unitenum.hpp"

#include <map>

namespace galmod {

namespace {

bool norm_is_unit(const FieldElem& e) {
    Rat n = nf_norm(e);
    return n == 1 || n == -1;
}

}  // namespace

ResidueMatrixRing residue_matrix_ring(const NumberField& f, const FracIdeal& g, std::size_t n) {
    if (n == 0) throw error("residue_matrix_ring: size must be positive");
    return {residue_ring(f, g), n};
}

RMat rm_identity(const ResidueMatrixRing& r) {
    std::size_t deg = r.base.f.degree();
    RMat m(r.n * r.n, ResElem(deg, Int(0)));
    for (std::size_t i = 0; i < r.n; ++i) m[i * r.n + i] = r.base.one;
    return m;
}

RMat rm_mul(const ResidueMatrixRing& r, const RMat& a, const RMat& b) {
    std::size_t n = r.n, deg = r.base.f.degree();
    RMat c(n * n, ResElem(deg, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] =
                    rr_add(r.base, c[i * n + j], rr_mul(r.base, a[i * n + k], b[k * n + j]));
    return c;
}

RMat rm_reduce(const ResidueMatrixRing& r, const FMat& m) {
    if (m.rows() != r.n || m.cols() != r.n) throw error("rm_reduce: size mismatch");
    RMat out(r.n * r.n);
    for (std::size_t i = 0; i < r.n; ++i)
        for (std::size_t j = 0; j < r.n; ++j)
            out[i * r.n + j] = rr_reduce_elem(r.base, m.at(i, j));
    return out;
}

std::vector<UnitRep> elementary_gens(const ResidueMatrixRing& r) {
    std::vector<UnitRep> out;
    if (r.n < 2) return out;
    const NumberField& f = r.base.f;
    for (std::size_t t = 0; t < r.base.diag.size(); ++t) {
        if (r.base.diag[t] == 1) continue;
        FieldElem bt = nf_from_integral(f, r.base.basis.row(t));
        for (std::size_t i = 0; i < r.n; ++i)
            for (std::size_t j = 0; j < r.n; ++j) {
                if (i == j) continue;
                FMat lift = FMat::identity(f, r.n);
                lift.at(i, j) = bt;
                out.push_back({rm_reduce(r, lift), std::move(lift)});
            }
    }
    return out;
}

std::vector<UnitRep> v_subgroup_gens(const ResidueMatrixRing& r,
                                     const std::vector<FieldElem>& units) {
    const NumberField& f = r.base.f;
    RMat id = rm_identity(r);
    std::vector<UnitRep> out;
    for (const FieldElem& u : units) {
        if (!norm_is_unit(u)) throw error("v_subgroup_gens: generator is not a unit");
        FMat lift = FMat::identity(f, r.n);
        lift.at(0, 0) = u;
        RMat red = rm_reduce(r, lift);
        if (red == id) continue;
        out.push_back({std::move(red), std::move(lift)});
    }
    return out;
}

UnitRepSet unit_image(const ResidueMatrixRing& r, const std::vector<UnitRep>& gens,
                      std::size_t cap) {
    for (const auto& g : gens) {
        if (!(rm_reduce(r, g.lift) == g.reduced))
            throw error("unit_image: generator lift does not reduce to its residue");
        if (!norm_is_unit(g.lift.det()))
            throw error("unit_image: generator lift is not invertible over O_F");
    }
    UnitRepSet out;
    out.complete = true;
    std::map<RMat, std::size_t> seen;
    out.reps.push_back({rm_identity(r), FMat::identity(r.base.f, r.n)});
    seen.emplace(out.reps[0].reduced, 0);
    for (std::size_t head = 0; head < out.reps.size(); ++head) {
        for (const auto& g : gens) {
            RMat prod = rm_mul(r, out.reps[head].reduced, g.reduced);
            if (seen.count(prod)) continue;
            if (out.reps.size() >= cap) {
                out.complete = false;
                return out;
            }
            FMat lift = out.reps[head].lift * g.lift;
            seen.emplace(prod, out.reps.size());
            out.reps.push_back({std::move(prod), std::move(lift)});
        }
    }
    return out;
}

}  // namespace galmod
