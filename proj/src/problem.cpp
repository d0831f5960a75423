#include "galmod/problem.hpp"

#include <fstream>

namespace galmod {

Rat rat_from_json(const Json& v) {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_string()) {
        Rat q;
        if (mpq_set_str(q.get_mpq_t(), v.get<std::string>().c_str(), 10) != 0)
            throw error("problem: bad rational literal '" + v.get<std::string>() + "'");
        q.canonicalize();
        return q;
    }
    throw error("problem: rationals must be integers or 'p/q' strings");
}

Json rat_to_json(const Rat& q) { return q.get_str(); }

namespace {

std::vector<Rat> rat_row(const Json& j, std::size_t want, const char* what) {
    if (!j.is_array() || j.size() != want)
        throw error(std::string("problem: ") + what + " must be an array of length " +
                    std::to_string(want));
    std::vector<Rat> out;
    for (const auto& v : j) out.push_back(rat_from_json(v));
    return out;
}

QMatrix rat_matrix(const Json& j, std::size_t r, std::size_t c, const char* what) {
    if (!j.is_array() || j.size() != r)
        throw error(std::string("problem: ") + what + " must have " + std::to_string(r) +
                    " rows");
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        auto row = rat_row(j[i], c, what);
        for (std::size_t k = 0; k < c; ++k) m.at(i, k) = row[k];
    }
    return m;
}

FiniteGroup group_from_json(const Json& j) {
    if (j.contains("abelian")) {
        std::vector<long> factors;
        for (const auto& v : j["abelian"]) factors.push_back(v.get<long>());
        return FiniteGroup::abelian(factors);
    }
    if (j.contains("dihedral")) return FiniteGroup::dihedral(j["dihedral"].get<long>());
    throw error("problem: group must be {\"abelian\": [...]} or {\"dihedral\": n}");
}

// A(a) A(b) = A(ab) with a diagnostic naming the failing pair.
void check_homomorphism(const FiniteGroup& g, const std::vector<QMatrix>& action) {
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (!(action[a] * action[b] == action[g.mul(a, b)]))
                throw error("problem: action is not a homomorphism at elements " +
                            std::to_string(a) + " and " + std::to_string(b));
}

GModuleLattice ring_of_integers_module(const FiniteGroup& g, const Json& j) {
    std::size_t n = g.order();
    if (!j.contains("poly") || !j.contains("integral_basis") || !j.contains("galois_images"))
        throw error("problem: ring_of_integers needs poly, integral_basis, galois_images");
    auto pc = j["poly"];
    if (!pc.is_array() || pc.size() != n + 1)
        throw error("problem: defining polynomial degree must equal the group order");
    std::vector<Rat> poly;
    for (const auto& v : pc) poly.push_back(rat_from_json(v));
    if (poly.back() != 1) throw error("problem: defining polynomial must be monic");

    QMatrix basis = rat_matrix(j["integral_basis"], n, n, "integral_basis");
    NumberField f = NumberField::generic(poly, basis);

    std::vector<FieldElem> images;
    if (!j["galois_images"].is_array() || j["galois_images"].size() != n)
        throw error("problem: one galois image per group element required");
    for (const auto& row : j["galois_images"])
        images.push_back(FieldElem{f, rat_row(row, n, "galois image")});

    // sigma_a(sigma_b(t)) evaluates the coordinates of image b at image a
    auto compose = [&](int a, int b) {
        FieldElem out = nf_zero(f);
        for (std::size_t k = 0; k < n; ++k)
            out = nf_add(out, nf_mul_rat(nf_pow(images[a], long(k)), images[b].c[k]));
        return out;
    };
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (!nf_eq(compose(a, b), images[g.mul(a, b)]))
                throw error("problem: galois images are not a homomorphism at elements " +
                            std::to_string(a) + " and " + std::to_string(b));

    std::vector<QMatrix> action;
    for (std::size_t a = 0; a < n; ++a) {
        QMatrix m(n, n);
        for (std::size_t col = 0; col < n; ++col) {
            FieldElem img = nf_pow(images[a], long(col));
            for (std::size_t row = 0; row < n; ++row) m.at(row, col) = img.c[row];
        }
        action.push_back(std::move(m));
    }
    check_homomorphism(g, action);
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(basis.row(i));
    return make_module(g, 1, std::move(action), ZLattice::from_rows(n, rows));
}

GModuleLattice explicit_module(const FiniteGroup& g, std::size_t rank, const Json& j) {
    std::size_t n = g.order(), m = rank * n;
    if (!j.contains("action") || !j.contains("basis"))
        throw error("problem: explicit module needs action and basis");
    if (!j["action"].is_array() || j["action"].size() != n)
        throw error("problem: one action matrix per group element required");
    std::vector<QMatrix> action;
    for (const auto& am : j["action"]) action.push_back(rat_matrix(am, m, m, "action matrix"));
    check_homomorphism(g, action);
    const auto& bj = j["basis"];
    if (!bj.is_array()) throw error("problem: basis must be an array of rows");
    std::vector<std::vector<Rat>> rows;
    for (const auto& row : bj) rows.push_back(rat_row(row, m, "basis row"));
    return make_module(g, rank, std::move(action), ZLattice::from_rows(m, rows));
}

}  // namespace

ProblemSpec problem_from_json(const Json& j) {
    if (!j.contains("schema") || j["schema"] != "galmod-problem/1")
        throw error("problem: expected schema galmod-problem/1");
    ProblemSpec p;
    p.name = j.value("name", std::string("unnamed"));
    p.group = group_from_json(j.at("group"));
    std::size_t rank = j.value("rank", 1);
    if (rank == 0) throw error("problem: rank must be positive");

    if (j.contains("budgets")) {
        const auto& b = j["budgets"];
        p.budgets.jobs = b.value("jobs", p.budgets.jobs);
        p.budgets.unit_cap = b.value("unit_cap", p.budgets.unit_cap);
        p.budgets.local_budget = b.value("local_budget", p.budgets.local_budget);
        p.budgets.local_samples = b.value("local_samples", p.budgets.local_samples);
        p.budgets.seed = b.value("seed", p.budgets.seed);
    }

    const auto& mj = j.at("module");
    std::string kind = mj.value("kind", std::string());
    if (kind == "ring_of_integers") {
        if (rank != 1) throw error("problem: ring_of_integers is a rank one module");
        p.module = ring_of_integers_module(p.group, mj);
    } else if (kind == "explicit") {
        p.module = explicit_module(p.group, rank, mj);
    } else {
        throw error("problem: module kind must be ring_of_integers or explicit");
    }

    const auto& oj = j.at("order");
    if (oj.is_string() && oj == "group_ring") {
        p.order_kind = "group_ring";
        p.order = make_order(p.group, ZLattice::standard(p.group.order()));
    } else if (oj.is_string() && oj == "associated") {
        p.order_kind = "associated";
        p.order = associated_order(p.module, p.module, p.budgets.seed);
    } else if (oj.is_object() && oj.contains("basis")) {
        p.order_kind = "basis";
        std::size_t n = p.group.order();
        std::vector<std::vector<Rat>> rows;
        for (const auto& row : oj["basis"]) rows.push_back(rat_row(row, n, "order basis row"));
        p.order = make_order(p.group, ZLattice::from_rows(n, rows));
    } else {
        throw error("problem: order must be group_ring, associated or {\"basis\": [...]}");
    }
    return p;
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("problem: cannot open " + path);
    Json j;
    try {
        j = Json::parse(in, nullptr, true, true);  // allow comments
    } catch (const Json::parse_error& e) {
        throw error("problem: " + path + " is not valid JSON: " + e.what());
    }
    return problem_from_json(j);
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::is_free: return "free";
        case Verdict::not_free: return "not_free";
        default: return "inconclusive";
    }
}

int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::is_free: return 0;
        case Verdict::not_free: return 1;
        default: return 2;
    }
}

Json certificate_to_json(const FreenessCertificate& c, const std::string& problem) {
    Json j;
    j["schema"] = "galmod-certificate/1";
    j["problem"] = problem;
    j["verdict"] = verdict_name(c.verdict);
    if (!c.reason.empty()) j["reason"] = c.reason;
    Json gens = Json::array();
    for (const auto& g : c.generators) {
        Json row = Json::array();
        for (const Rat& q : g) row.push_back(rat_to_json(q));
        gens.push_back(std::move(row));
    }
    j["generators"] = std::move(gens);
    j["tuple"] = c.tuple;
    j["verify_hash"] = std::to_string(c.verify_hash);
    if (c.witness_prime) j["witness_prime"] = c.witness_prime->get_str();
    j["exhausted"] = c.exhausted;
    j["stats"] = {{"total_tuples", c.stats.total_tuples.get_str()},
                  {"tuples_tested", c.stats.tuples_tested},
                  {"verified", c.stats.verified},
                  {"prune_depth", c.stats.prune_depth}};
    return j;
}

FreenessCertificate certificate_from_json(const Json& j) {
    if (!j.contains("schema") || j["schema"] != "galmod-certificate/1")
        throw error("certificate: expected schema galmod-certificate/1");
    FreenessCertificate c;
    std::string v = j.value("verdict", std::string());
    if (v == "free")
        c.verdict = Verdict::is_free;
    else if (v == "not_free")
        c.verdict = Verdict::not_free;
    else if (v == "inconclusive")
        c.verdict = Verdict::inconclusive;
    else
        throw error("certificate: unknown verdict '" + v + "'");
    c.reason = j.value("reason", std::string());
    for (const auto& row : j.value("generators", Json::array())) {
        std::vector<Rat> g;
        for (const auto& q : row) g.push_back(rat_from_json(q));
        c.generators.push_back(std::move(g));
    }
    c.tuple = j.value("tuple", std::vector<std::size_t>());
    c.verify_hash = std::stoull(j.value("verify_hash", std::string("0")));
    if (j.contains("witness_prime"))
        c.witness_prime = Int(j["witness_prime"].get<std::string>());
    c.exhausted = j.value("exhausted", false);
    if (j.contains("stats")) {
        const auto& s = j["stats"];
        c.stats.total_tuples = Int(s.value("total_tuples", std::string("0")));
        c.stats.tuples_tested = s.value("tuples_tested", 0u);
        c.stats.verified = s.value("verified", 0u);
        c.stats.prune_depth = s.value("prune_depth", std::vector<std::uint64_t>());
    }
    return c;
}

bool verify_certificate(const ProblemSpec& p, const FreenessCertificate& c) {
    if (c.verdict != Verdict::is_free) return false;
    if (c.generators.size() != p.module.rank) return false;
    for (const auto& g : c.generators)
        if (g.size() != p.module.dim()) return false;
    return order_span(p.order, p.module, c.generators) == p.module.lat;
}

}  // namespace galmod
