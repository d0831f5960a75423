#include "galmod/search.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

namespace galmod {

namespace {

std::vector<Rat> fmat_flat(const FMat& m) {
    std::size_t n = m.rows(), deg = m.field().degree();
    std::vector<Rat> out(n * n * deg, Rat(0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t t = 0; t < deg; ++t) out[(r * n + c) * deg + t] = m.at(r, c).c[t];
    return out;
}

FieldElem ib_elem(const NumberField& f, std::size_t u) {
    return FieldElem{f, f.integral_basis().row(u)};
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211u;
    }
    return h;
}

}  // namespace

std::uint64_t lattice_hash(const ZLattice& l) {
    std::ostringstream os;
    os << l.ambient() << ';' << l.denominator() << ';';
    for (const auto& row : l.int_rows()) {
        for (const Int& v : row) os << v << ',';
        os << ';';
    }
    return fnv1a(14695981039346656037u, os.str());
}

MxBasis assemble_mx_basis(const MaximalOrderData& mo,
                          const std::vector<ComponentFreeBasis>& bases, const SplitModule& sm,
                          const std::vector<std::size_t>& order) {
    const Wedderburn& w = mo.w;
    std::size_t m = sm.x.dim(), d = sm.x.rank;
    if (bases.size() != w.comps.size() || order.size() != w.comps.size())
        throw error("assemble_mx_basis: component count mismatch");
    {
        std::vector<std::size_t> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i) throw error("assemble_mx_basis: order is not a permutation");
    }

    MxBasis out{order, {}, {}};
    for (std::size_t ci : order) {
        const WedderburnComponent& c = w.comps.at(ci);
        const NiceComponent& nc = mo.comps.at(ci);
        const ComponentFreeBasis& cb = bases.at(ci);
        if (cb.comp != ci) throw error("assemble_mx_basis: bases out of order");
        const NumberField& f = c.field;
        std::size_t n = c.dim, deg = f.degree(), qd = c.qdim();
        auto cols = component_cols(w, ci, d);

        out.offset.push_back(out.rows.size());
        std::vector<std::vector<Rat>> sliced_rows;
        for (std::size_t gp = 0; gp < d * n; ++gp)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t u = 0; u < deg; ++u) {
                    // S (w_u e_k1 omega_gp): slot kk holds S times the matrix
                    // whose row k is the kk-th chunk of omega_gp scaled by w_u
                    std::vector<Rat> sliced;
                    sliced.reserve(d * qd);
                    for (std::size_t kk = 0; kk < d; ++kk) {
                        FMat y(f, n, n);
                        for (std::size_t l = 0; l < n; ++l)
                            y.at(k, l) = nf_mul(ib_elem(f, u), cb.omegas[gp][kk * n + l]);
                        auto flat = fmat_flat(nc.s * y);
                        sliced.insert(sliced.end(), flat.begin(), flat.end());
                    }
                    sliced_rows.push_back(std::move(sliced));
                }
        if (!(ZLattice::from_rows(d * qd, sliced_rows) == cb.mx))
            throw error("assemble_mx_basis: structured rows do not span the component");
        for (const auto& sliced : sliced_rows) {
            std::vector<Rat> full(m, Rat(0));
            for (std::size_t t = 0; t < cols.size(); ++t) full[cols[t]] = sliced[t];
            out.rows.push_back(std::move(full));
        }
    }
    if (out.rows.size() != m) throw error("assemble_mx_basis: row count mismatch");
    return out;
}

std::vector<Rat> lift_block_coords(const WedderburnComponent& c, const FMat& lift,
                                   std::size_t j) {
    std::size_t n = c.dim, deg = c.field.degree();
    std::size_t nd = lift.rows();
    if (nd % n != 0 || lift.cols() != nd) throw error("lift_block_coords: lift size mismatch");
    std::size_t d = nd / n;
    if (j >= d) throw error("lift_block_coords: generator index out of range");
    std::vector<Rat> out(d * c.qdim());
    for (std::size_t gp = 0; gp < nd; ++gp)
        for (std::size_t k = 0; k < n; ++k) {
            auto ib = nf_to_integral(lift.at(j * n + k, gp));
            for (std::size_t u = 0; u < deg; ++u) out[(gp * n + k) * deg + u] = ib[u];
        }
    return out;
}

MembershipTable membership_table(const MxBasis& mxb, const SplitModule& sm) {
    std::size_t m = sm.x.dim();
    if (mxb.rows.size() != m) throw error("membership_table: basis is not square");
    QMatrix bmx(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) bmx.at(i, j) = mxb.rows[i][j];
    MembershipTable out;
    out.mx_inv = bmx.inverse();

    // X in MX coordinates; integrality is exactly X <= MX
    IntMat a(m, std::vector<Int>(m));
    for (std::size_t i = 0; i < m; ++i) {
        auto y = row_times(sm.x_flat.basis_row(i), out.mx_inv);
        for (std::size_t j = 0; j < m; ++j) {
            if (y[j].get_den() != 1) throw error("membership_table: X escapes M X");
            a[i][j] = num(y[j]);
        }
    }
    IntMat h = hnf_int(a);
    if (h.size() != m) throw error("membership_table: X has deficient rank in M X");

    out.h = QMatrix(m, m);
    out.ideals.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        if (h[k][k] == 0) throw error("membership_table: Hermite pivot off the diagonal");
        out.ideals[k] = h[k][k];
        for (std::size_t j = 0; j < m; ++j) out.h.at(k, j) = Rat(h[k][j]) / Rat(h[k][k]);
    }
    out.h_inv = out.h.inverse();
    return out;
}

std::vector<Rat> mx_coords(const MembershipTable& t, const std::vector<Rat>& flat) {
    return row_times(flat, t.mx_inv);
}

bool table_member(const MembershipTable& t, const std::vector<Rat>& coords) {
    auto v = row_times(coords, t.h_inv);
    for (std::size_t k = 0; k < v.size(); ++k) {
        Rat q = v[k] / Rat(t.ideals[k]);
        if (q.get_den() != 1) return false;
    }
    return true;
}

FreenessCertificate search(const std::vector<UnitRepSet>& units,
                           const std::vector<ComponentFreeBasis>& bases, const MxBasis& mxb,
                           const MembershipTable& table, const MaximalOrderData& mo,
                           const SplitModule& sm, int jobs) {
    const Wedderburn& w = mo.w;
    std::size_t r = w.comps.size(), m = sm.x.dim(), d = sm.x.rank;
    if (units.size() != r || bases.size() != r) throw error("search: component count mismatch");
    for (std::size_t i = 0; i < r; ++i)
        if (units[i].comp != i || units[i].reps.empty())
            throw error("search: unit sets out of order or empty");

    // running coordinates live after h_inv, so each block finalizes its
    // own column range; contribution of (position, rep) is d rows of m
    std::vector<std::size_t> bs(r);
    std::vector<std::vector<std::vector<std::vector<Rat>>>> contrib(r);
    for (std::size_t t = 0; t < r; ++t) {
        std::size_t ci = mxb.order[t], off = mxb.offset[t];
        const WedderburnComponent& c = w.comps[ci];
        bs[t] = d * c.qdim();
        contrib[t].resize(units[ci].reps.size());
        for (std::size_t s = 0; s < units[ci].reps.size(); ++s) {
            auto& rows = contrib[t][s];
            rows.assign(d, std::vector<Rat>(m, Rat(0)));
            for (std::size_t j = 0; j < d; ++j) {
                auto bc = lift_block_coords(c, units[ci].reps[s].lift, j);
                for (std::size_t q = 0; q < bs[t]; ++q) {
                    if (bc[q] == 0) continue;
                    for (std::size_t k = off + q; k < m; ++k)
                        rows[j][k] += bc[q] * table.h_inv.at(off + q, k);
                }
            }
        }
    }
    QMatrix to_amb(m, m);
    {
        QMatrix bmx(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) bmx.at(i, j) = mxb.rows[i][j];
        to_amb = bmx * sm.to_ambient;
    }

    FreenessCertificate cert;
    cert.stats.total_tuples = 1;
    for (std::size_t i = 0; i < r; ++i) cert.stats.total_tuples *= Int(units[i].reps.size());
    cert.stats.prune_depth.assign(r, 0);

    struct Winner {
        bool found = false;
        std::vector<std::size_t> tuple;  // position order
        std::vector<std::vector<Rat>> alphas;
        std::uint64_t hash = 0;
    };
    std::size_t outer_n = units[mxb.order[0]].reps.size();
    int nw = std::max(1, std::min<int>(jobs, int(outer_n)));
    std::vector<Winner> winners(nw);
    std::vector<SearchStats> wstats(nw);
    std::atomic<long> best_outer{long(outer_n)};

    auto worker = [&](int wi) {
        SearchStats& st = wstats[wi];
        st.prune_depth.assign(r, 0);
        Winner& win = winners[wi];
        std::vector<std::size_t> tup(r, 0);
        std::vector<std::vector<Rat>> run(d, std::vector<Rat>(m, Rat(0)));

        auto add = [&](std::size_t t, std::size_t s, int sign) {
            for (std::size_t j = 0; j < d; ++j) {
                const auto& row = contrib[t][s][j];
                for (std::size_t k = mxb.offset[t]; k < m; ++k)
                    if (sign > 0)
                        run[j][k] += row[k];
                    else
                        run[j][k] -= row[k];
            }
        };
        auto range_ok = [&](std::size_t t) {
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = mxb.offset[t]; k < mxb.offset[t] + bs[t]; ++k) {
                    Rat q = run[j][k] / Rat(table.ideals[k]);
                    if (q.get_den() != 1) return false;
                }
            return true;
        };
        auto accept = [&]() {
            std::vector<std::vector<Rat>> alphas;
            for (std::size_t j = 0; j < d; ++j) {
                std::vector<Rat> y(m, Rat(0));
                for (std::size_t t = 0; t < r; ++t) {
                    auto bc = lift_block_coords(w.comps[mxb.order[t]],
                                                units[mxb.order[t]].reps[tup[t]].lift, j);
                    for (std::size_t q = 0; q < bs[t]; ++q) y[mxb.offset[t] + q] = bc[q];
                }
                alphas.push_back(row_times(y, to_amb));
            }
            ++st.verified;
            ZLattice span = order_span(mo.a, sm.x, alphas);
            if (!(span == sm.x.lat)) return false;
            win.found = true;
            win.tuple = tup;
            win.alphas = std::move(alphas);
            win.hash = lattice_hash(span);
            return true;
        };

        std::function<bool(std::size_t)> dfs = [&](std::size_t t) -> bool {
            const auto& reps = units[mxb.order[t]].reps;
            for (std::size_t s = 0; s < reps.size(); ++s) {
                tup[t] = s;
                add(t, s, +1);
                bool ok = range_ok(t);
                if (t + 1 == r) {
                    ++st.tuples_tested;
                    if (!ok)
                        ++st.prune_depth[t];
                    else if (accept()) {
                        add(t, s, -1);
                        return true;
                    }
                } else if (!ok) {
                    ++st.prune_depth[t];
                } else if (dfs(t + 1)) {
                    add(t, s, -1);
                    return true;
                }
                add(t, s, -1);
            }
            return false;
        };

        for (std::size_t s0 = wi; s0 < outer_n; s0 += std::size_t(nw)) {
            if (long(s0) > best_outer.load()) break;
            tup[0] = s0;
            add(0, s0, +1);
            bool ok = range_ok(0);
            bool done = false;
            if (r == 1) {
                ++st.tuples_tested;
                if (!ok)
                    ++st.prune_depth[0];
                else
                    done = accept();
            } else if (!ok) {
                ++st.prune_depth[0];
            } else {
                done = dfs(1);
            }
            add(0, s0, -1);
            if (done) {
                long cur = best_outer.load();
                while (long(s0) < cur && !best_outer.compare_exchange_weak(cur, long(s0))) {
                }
                break;
            }
        }
    };

    if (nw == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int wi = 0; wi < nw; ++wi) pool.emplace_back(worker, wi);
        for (auto& th : pool) th.join();
    }

    for (const SearchStats& st : wstats) {
        cert.stats.tuples_tested += st.tuples_tested;
        cert.stats.verified += st.verified;
        for (std::size_t t = 0; t < r; ++t) cert.stats.prune_depth[t] += st.prune_depth[t];
    }
    const Winner* best = nullptr;
    for (const Winner& win : winners)
        if (win.found && (!best || win.tuple < best->tuple)) best = &win;

    if (best) {
        cert.verdict = Verdict::is_free;
        cert.generators = best->alphas;
        cert.tuple.assign(r, 0);
        for (std::size_t t = 0; t < r; ++t) cert.tuple[mxb.order[t]] = best->tuple[t];
        cert.verify_hash = best->hash;
        return cert;
    }
    bool complete = true;
    for (const UnitRepSet& u : units) complete = complete && u.complete;
    if (complete) {
        cert.verdict = Verdict::not_free;
        cert.exhausted = true;
        cert.reason = "all unit tuples exhausted without a generating set";
    } else {
        cert.verdict = Verdict::inconclusive;
        cert.reason = "unit enumeration was capped, the sweep may have missed tuples";
    }
    return cert;
}

FreenessCertificate free_test(const Order& a, const GModuleLattice& x,
                              const FreeTestOptions& opts) {
    if (!(a.group == x.group)) throw error("free_test: group mismatch");
    Wedderburn w = wedderburn(x.group);
    MaximalOrderData mo = maximal_order_containing(a, w);
    SplitModule sm = split_module(x, w, opts.seed);

    std::vector<ComponentFreeBasis> bases;
    for (std::size_t i = 0; i < w.comps.size(); ++i) {
        try {
            bases.push_back(component_free_basis(mo, i, sm));
        } catch (const NotFreeOverMaximal& e) {
            FreenessCertificate cert;
            cert.verdict = Verdict::not_free;
            cert.reason = e.what();
            return cert;
        }
    }

    if (!opts.skip_local) {
        LocalFreenessReport lf =
            local_freeness(mo, x, opts.local_budget, opts.local_samples, opts.seed);
        for (const PrimeReport& pr : lf.reports) {
            if (pr.status == LocalStatus::not_free_at) {
                FreenessCertificate cert;
                cert.verdict = Verdict::not_free;
                cert.witness_prime = pr.p;
                cert.reason = "not locally free at " + pr.p.get_str();
                return cert;
            }
        }
        for (const PrimeReport& pr : lf.reports) {
            if (pr.status == LocalStatus::inconclusive) {
                FreenessCertificate cert;
                cert.verdict = Verdict::inconclusive;
                cert.witness_prime = pr.p;
                cert.reason = "local test at " + pr.p.get_str() + " ran out of budget";
                return cert;
            }
        }
    }

    std::vector<UnitRepSet> units;
    for (std::size_t i = 0; i < w.comps.size(); ++i) {
        const WedderburnComponent& c = w.comps[i];
        ResidueMatrixRing rm = residue_matrix_ring(c.field, mo.comps[i].g, c.dim * x.rank);
        std::vector<UnitRep> gens = elementary_gens(rm);
        for (UnitRep& g : v_subgroup_gens(rm, unit_generators(c.field)))
            gens.push_back(std::move(g));
        UnitRepSet us = unit_image(rm, gens, opts.unit_cap);
        us.comp = i;
        units.push_back(std::move(us));
    }

    std::vector<std::size_t> order(w.comps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
        return units[p].reps.size() < units[q].reps.size();
    });

    MxBasis mxb = assemble_mx_basis(mo, bases, sm, order);
    MembershipTable table = membership_table(mxb, sm);
    return search(units, bases, mxb, table, mo, sm, opts.jobs);
}

}  // namespace galmod
