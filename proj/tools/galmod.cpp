#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "galmod/problem.hpp"

using namespace galmod;

namespace {

std::string rat_list(const std::vector<Rat>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + "]";
}

Json rows_to_json(const ZLattice& l) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < l.rank(); ++i) {
        Json row = Json::array();
        for (const Rat& q : l.basis_row(i)) row.push_back(rat_to_json(q));
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_lattice(const ZLattice& l, const std::string& indent) {
    for (std::size_t i = 0; i < l.rank(); ++i)
        std::cout << indent << rat_list(l.basis_row(i)) << "\n";
}

int cmd_wedderburn(const ProblemSpec& p, bool json_out) {
    Wedderburn w = wedderburn(p.group);
    if (json_out) {
        Json j;
        j["group"] = p.group.describe();
        j["components"] = Json::array();
        for (const auto& c : w.comps) {
            Json poly = Json::array();
            for (const Rat& q : c.field.poly()) poly.push_back(rat_to_json(q));
            Json idem = Json::array();
            for (const Rat& q : c.idempotent) idem.push_back(rat_to_json(q));
            j["components"].push_back({{"matrix_size", c.dim},
                                       {"field_degree", c.field.degree()},
                                       {"field_poly", std::move(poly)},
                                       {"idempotent", std::move(idem)}});
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "group " << p.group.describe() << ", order " << p.group.order() << "\n";
    for (std::size_t i = 0; i < w.comps.size(); ++i) {
        const auto& c = w.comps[i];
        std::cout << "component " << i << ": " << c.dim << " x " << c.dim
                  << " matrices over a field of degree " << c.field.degree() << ", poly "
                  << rat_list(c.field.poly()) << "\n";
        std::cout << "  idempotent " << rat_list(c.idempotent) << "\n";
    }
    return 0;
}

int cmd_assoc_order(const ProblemSpec& p, const FreeTestOptions& opts, bool json_out) {
    Order a = associated_order(p.module, p.module, opts.seed);
    if (json_out) {
        Json j;
        j["problem"] = p.name;
        j["basis"] = rows_to_json(a.lat);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "associated order of " << p.name << ", basis over the group elements:\n";
    print_lattice(a.lat, "  ");
    return 0;
}

int cmd_maximal_order(const ProblemSpec& p, bool json_out) {
    Wedderburn w = wedderburn(p.group);
    MaximalOrderData mo = maximal_order_containing(p.order, w);
    Rat idx = lattice_index(mo.m.lat, p.order.lat);
    if (json_out) {
        Json j;
        j["problem"] = p.name;
        j["maximal_order"] = rows_to_json(mo.m.lat);
        j["index"] = rat_to_json(idx);
        j["conductor"] = rows_to_json(mo.cond.lat);
        j["central_ideals"] = Json::array();
        for (const auto& nc : mo.comps)
            j["central_ideals"].push_back(
                {{"basis", rows_to_json(nc.g.lat)}, {"norm", rat_to_json(ideal_norm(nc.g))}});
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "maximal order containing the input order, index " << idx.get_str() << ":\n";
    print_lattice(mo.m.lat, "  ");
    std::cout << "conductor:\n";
    print_lattice(mo.cond.lat, "  ");
    for (std::size_t i = 0; i < mo.comps.size(); ++i)
        std::cout << "central ideal of component " << i << ": norm "
                  << ideal_norm(mo.comps[i].g).get_str() << "\n";
    return 0;
}

int cmd_localfree(const ProblemSpec& p, const FreeTestOptions& opts, bool json_out) {
    Wedderburn w = wedderburn(p.group);
    MaximalOrderData mo = maximal_order_containing(p.order, w);
    LocalFreenessReport rep =
        local_freeness(mo, p.module, opts.local_budget, opts.local_samples, opts.seed);
    bool refuted = false, unsure = false;
    Json jr = Json::array();
    for (const auto& pr : rep.reports) {
        std::string st = pr.status == LocalStatus::free_at      ? "free"
                         : pr.status == LocalStatus::not_free_at ? "not_free"
                                                                 : "inconclusive";
        refuted = refuted || pr.status == LocalStatus::not_free_at;
        unsure = unsure || pr.status == LocalStatus::inconclusive;
        if (json_out) {
            jr.push_back({{"p", pr.p.get_str()},
                          {"status", st},
                          {"exhausted", pr.exhausted},
                          {"tried", pr.tried}});
        } else {
            std::cout << "p = " << pr.p.get_str() << ": " << st << " (tried " << pr.tried
                      << (pr.exhausted ? ", exhausted" : "") << ")\n";
        }
    }
    if (json_out) {
        Json j;
        j["problem"] = p.name;
        j["primes"] = std::move(jr);
        std::cout << j.dump(2) << "\n";
    } else if (rep.reports.empty()) {
        std::cout << "no critical primes, the order is maximal\n";
    }
    return refuted ? 1 : unsure ? 2 : 0;
}

int cmd_free_test(const ProblemSpec& p, const FreeTestOptions& opts, bool json_out,
                  const std::string& certfile) {
    FreenessCertificate cert = free_test(p.order, p.module, opts);
    Json cj = certificate_to_json(cert, p.name);
    if (!certfile.empty()) {
        std::ofstream out(certfile);
        if (!out) throw error("cannot write " + certfile);
        out << cj.dump(2) << "\n";
    }
    if (json_out) {
        std::cout << cj.dump(2) << "\n";
    } else {
        std::cout << "verdict: " << verdict_name(cert.verdict) << "\n";
        if (!cert.reason.empty()) std::cout << "reason: " << cert.reason << "\n";
        if (cert.witness_prime)
            std::cout << "witness prime: " << cert.witness_prime->get_str() << "\n";
        for (const auto& g : cert.generators) std::cout << "generator " << rat_list(g) << "\n";
        if (cert.verdict == Verdict::is_free) {
            std::cout << "tuple:";
            for (auto t : cert.tuple) std::cout << " " << t;
            std::cout << "\nverification hash " << cert.verify_hash << "\n";
        }
        std::cout << "tuples: " << cert.stats.total_tuples.get_str() << " total, "
                  << cert.stats.tuples_tested << " tested, " << cert.stats.verified
                  << " verified\n";
    }
    return verdict_exit_code(cert.verdict);
}

int cmd_verify(const ProblemSpec& p, const std::string& certpath, bool json_out) {
    std::ifstream in(certpath);
    if (!in) throw error("cannot open " + certpath);
    Json cj = Json::parse(in, nullptr, true, true);
    FreenessCertificate cert = certificate_from_json(cj);
    bool ok = verify_certificate(p, cert);
    if (json_out)
        std::cout << Json{{"problem", p.name}, {"verified", ok}}.dump(2) << "\n";
    else
        std::cout << "certificate " << (ok ? "verifies" : "DOES NOT verify") << "\n";
    return ok ? 0 : 1;
}

GModuleLattice conjugation_module(bool golden) {
    auto g = FiniteGroup::abelian({2});
    QMatrix a1(2, 2);
    a1.at(0, 0) = 1;
    a1.at(1, 1) = -1;
    if (golden) a1.at(0, 1) = 1;
    return make_module(g, 1, {QMatrix::identity(2), a1}, ZLattice::standard(2));
}

int cmd_selftest() {
    int failures = 0;
    auto report = [&](const char* what, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok) ++failures;
    };

    auto gx = conjugation_module(false);
    Order ga = associated_order(gx, gx);
    report("gaussian associated order contains the half trace",
           ga.lat.contains({Rat(1, 2), Rat(1, 2)}));
    auto gc = free_test(ga, gx);
    report("gaussian module is free over its associated order",
           gc.verdict == Verdict::is_free && verdict_exit_code(gc.verdict) == 0);
    report("gaussian generators verify",
           gc.verdict == Verdict::is_free && order_span(ga, gx, gc.generators) == gx.lat);

    auto fx = conjugation_module(true);
    Order zg = make_order(fx.group, ZLattice::standard(2));
    auto fc = free_test(zg, fx);
    report("golden module is free over the group ring", fc.verdict == Verdict::is_free);

    auto nc = free_test(zg, gx);
    report("gaussian module over the group ring is refuted at 2",
           nc.verdict == Verdict::not_free && nc.witness_prime && *nc.witness_prime == 2);

    std::cout << (failures ? "selftest failed\n" : "selftest passed\n");
    return failures ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"freeness of lattices over orders in rational group algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output = "text";
    app.add_option("--output", output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    int jobs = 1;
    std::size_t unit_cap = 1000000;
    std::uint64_t local_budget = std::uint64_t(1) << 20, local_samples = 100000, seed = 1;
    auto* ojobs = app.add_option("--jobs", jobs, "parallel search workers");
    auto* ocap = app.add_option("--unit-cap", unit_cap, "unit enumeration cap per component");
    auto* obudget =
        app.add_option("--local-budget", local_budget, "exhaustive class budget per prime");
    auto* osamples =
        app.add_option("--local-samples", local_samples, "sampled classes when over budget");
    auto* oseed = app.add_option("--seed", seed, "seed for the free basis search");

    std::string file, certfile, certout;
    auto* cw = app.add_subcommand("wedderburn", "splitting of the group algebra");
    cw->add_option("problem", file, "problem file")->required();
    auto* ca = app.add_subcommand("assoc-order", "associated order of the module");
    ca->add_option("problem", file, "problem file")->required();
    auto* cm = app.add_subcommand("maximal-order", "maximal order and conductor data");
    cm->add_option("problem", file, "problem file")->required();
    auto* cl = app.add_subcommand("localfree", "local freeness at the critical primes");
    cl->add_option("problem", file, "problem file")->required();
    auto* cf = app.add_subcommand("free-test", "decide freeness, emit a certificate");
    cf->add_option("problem", file, "problem file")->required();
    cf->add_option("--cert", certout, "write the certificate to this file");
    auto* cv = app.add_subcommand("verify", "recheck a certificate against its problem");
    cv->add_option("problem", file, "problem file")->required();
    cv->add_option("certificate", certfile, "certificate file")->required();
    auto* cs = app.add_subcommand("selftest", "run the built-in fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cs->parsed()) return cmd_selftest();

        std::ifstream in(file);
        if (!in) throw error("cannot open " + file);
        Json j = Json::parse(in, nullptr, true, true);
        if (ojobs->count()) j["budgets"]["jobs"] = jobs;
        if (ocap->count()) j["budgets"]["unit_cap"] = unit_cap;
        if (obudget->count()) j["budgets"]["local_budget"] = local_budget;
        if (osamples->count()) j["budgets"]["local_samples"] = local_samples;
        if (oseed->count()) j["budgets"]["seed"] = seed;
        ProblemSpec p = problem_from_json(j);
        bool json_out = output == "json";

        if (cw->parsed()) return cmd_wedderburn(p, json_out);
        if (ca->parsed()) return cmd_assoc_order(p, p.budgets, json_out);
        if (cm->parsed()) return cmd_maximal_order(p, json_out);
        if (cl->parsed()) return cmd_localfree(p, p.budgets, json_out);
        if (cf->parsed()) return cmd_free_test(p, p.budgets, json_out, certout);
        if (cv->parsed()) return cmd_verify(p, certfile, json_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
