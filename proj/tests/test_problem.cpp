#include "doctest.h"

#include "galmod/problem.hpp"
#include "util.hpp"

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

using namespace galmod;

namespace {

std::string fixture(const char* name) { return std::string(GALMOD_FIXTURE_DIR "/") + name; }

Json explicit_c2_problem() {
    Json j;
    j["schema"] = "galmod-problem/1";
    j["name"] = "explicit-c2";
    j["group"] = {{"abelian", {2}}};
    j["rank"] = 1;
    j["module"] = {{"kind", "explicit"},
                   {"action", {{{1, 0}, {0, 1}}, {{1, 1}, {0, -1}}}},
                   {"basis", {{1, 0}, {0, 1}}}};
    j["order"] = "group_ring";
    return j;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(GALMOD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    REQUIRE(st != -1);
    REQUIRE(WIFEXITED(st));
    return WEXITSTATUS(st);
}

}  // namespace

TEST_CASE("rational json literals round trip") {
    CHECK(rat_from_json(Json(-7)) == Rat(-7));
    CHECK(rat_from_json(Json("3/4")) == Rat(3, 4));
    CHECK(rat_from_json(Json("-22/7")) == Rat(-22, 7));
    CHECK(rat_from_json(Json("6/4")) == Rat(3, 2));
    CHECK(rat_to_json(Rat(3, 4)) == Json("3/4"));
    CHECK(rat_to_json(Rat(5)) == Json("5"));
    CHECK(rat_from_json(rat_to_json(Rat(-9, 2))) == Rat(-9, 2));
    CHECK_THROWS_AS(rat_from_json(Json("x")), error);
    CHECK_THROWS_AS(rat_from_json(Json(1.5)), error);
}

TEST_CASE("golden fixture parses to the expected module") {
    auto p = load_problem(fixture("f2_golden.json"));
    CHECK(p.name == "q-sqrt5-over-group-ring");
    CHECK(p.group.order() == 2);
    CHECK(p.module.rank == 1);
    CHECK(p.module.lat == ZLattice::standard(2));
    // sigma(phi) = 1 - phi: column one of the action matrix
    CHECK(p.module.action[1].at(0, 1) == 1);
    CHECK(p.module.action[1].at(1, 1) == -1);
    CHECK(p.order_kind == "group_ring");
    CHECK(p.order.lat == ZLattice::standard(2));
}

TEST_CASE("gaussian fixture resolves its associated order") {
    auto p = load_problem(fixture("f1_gaussian.json"));
    CHECK(p.order_kind == "associated");
    CHECK(p.order.lat.contains({Rat(1, 2), Rat(1, 2)}));
    CHECK(!p.order.lat.contains({Rat(1, 2), Rat(0)}));
}

TEST_CASE("explicit module json parses") {
    auto p = problem_from_json(explicit_c2_problem());
    CHECK(p.module.dim() == 2);
    CHECK(p.module.action[1].at(0, 1) == 1);
}

TEST_CASE("non homomorphic action tables are rejected naming the pair") {
    auto j = explicit_c2_problem();
    j["module"]["action"][1] = {{1, 1}, {0, 1}};  // infinite order, squares to a shear
    CHECK_THROWS_WITH_AS(problem_from_json(j),
                         "problem: action is not a homomorphism at elements 1 and 1", error);
}

TEST_CASE("non homomorphic galois images are rejected naming the pair") {
    std::ifstream in(fixture("f2_golden.json"));
    Json j = Json::parse(in);
    j["module"]["galois_images"][1] = {"1", "1"};  // phi -> phi + 1 fixes nothing
    CHECK_THROWS_WITH_AS(problem_from_json(j),
                         "problem: galois images are not a homomorphism at elements 1 and 1",
                         error);
}

TEST_CASE("malformed problems are rejected") {
    auto j = explicit_c2_problem();
    j["schema"] = "galmod-problem/2";
    CHECK_THROWS_AS(problem_from_json(j), error);

    j = explicit_c2_problem();
    j["module"]["kind"] = "mystery";
    CHECK_THROWS_AS(problem_from_json(j), error);

    j = explicit_c2_problem();
    j["order"] = "largest";
    CHECK_THROWS_AS(problem_from_json(j), error);

    std::ifstream in(fixture("f2_golden.json"));
    Json g = Json::parse(in);
    g["module"]["poly"] = {-1, -1, 2};  // not monic
    CHECK_THROWS_AS(problem_from_json(g), error);
    g["module"]["poly"] = {-1, -1, 0, 1};  // degree 3 for a group of order 2
    CHECK_THROWS_AS(problem_from_json(g), error);
}

TEST_CASE("integral basis must be a ring") {
    std::ifstream in(fixture("f1_gaussian.json"));
    Json j = Json::parse(in);
    j["module"]["integral_basis"] = {{"1", "0"}, {"0", "1/2"}};  // (i/2)^2 escapes
    CHECK_THROWS_AS(problem_from_json(j), error);
}

TEST_CASE("budgets are read from the file") {
    auto j = explicit_c2_problem();
    j["budgets"] = {{"unit_cap", 5}, {"seed", 9}, {"local_budget", 64}, {"jobs", 2}};
    auto p = problem_from_json(j);
    CHECK(p.budgets.unit_cap == 5);
    CHECK(p.budgets.seed == 9);
    CHECK(p.budgets.local_budget == 64);
    CHECK(p.budgets.jobs == 2);
    CHECK(p.budgets.local_samples == 100000);
}

TEST_CASE("certificates round trip through json") {
    auto p = load_problem(fixture("f2_golden.json"));
    auto cert = free_test(p.order, p.module, p.budgets);
    REQUIRE(cert.verdict == Verdict::is_free);
    auto j = certificate_to_json(cert, p.name);
    auto back = certificate_from_json(j);
    CHECK(back.verdict == cert.verdict);
    CHECK(back.generators == cert.generators);
    CHECK(back.tuple == cert.tuple);
    CHECK(back.verify_hash == cert.verify_hash);
    CHECK(back.stats.total_tuples == cert.stats.total_tuples);
    CHECK(back.stats.prune_depth == cert.stats.prune_depth);
    CHECK(verify_certificate(p, back));
}

TEST_CASE("verification rejects tampered certificates") {
    auto p = load_problem(fixture("f2_golden.json"));
    auto cert = free_test(p.order, p.module, p.budgets);
    REQUIRE(verify_certificate(p, cert));

    // +1 could land on another generator (phi - 1 and phi differ by 1); +3 cannot
    auto tampered = cert;
    tampered.generators[0][0] += 3;
    CHECK_FALSE(verify_certificate(p, tampered));

    tampered = cert;
    tampered.generators.push_back(tampered.generators[0]);
    CHECK_FALSE(verify_certificate(p, tampered));

    tampered = cert;
    tampered.generators[0] = {Rat(2), Rat(0)};  // wrong sublattice
    CHECK_FALSE(verify_certificate(p, tampered));

    tampered = cert;
    tampered.verdict = Verdict::not_free;
    CHECK_FALSE(verify_certificate(p, tampered));
}

TEST_CASE("fixture corpus end to end") {
    for (const char* name : {"f1_gaussian.json", "f2_golden.json", "f3_zeta5.json",
                             "zeta3.json", "s3_sextic.json"}) {
        CAPTURE(name);
        auto p = load_problem(fixture(name));
        auto cert = free_test(p.order, p.module, p.budgets);
        REQUIRE(cert.verdict == Verdict::is_free);
        CHECK(verify_certificate(p, cert));
    }
    auto neg = load_problem(fixture("negative_gaussian.json"));
    auto cert = free_test(neg.order, neg.module, neg.budgets);
    CHECK(cert.verdict == Verdict::not_free);
    REQUIRE(cert.witness_prime.has_value());
    CHECK(*cert.witness_prime == 2);
}

TEST_CASE("tame fixture has the group ring as associated order") {
    auto p = load_problem(fixture("zeta3.json"));
    CHECK(p.order.lat == ZLattice::standard(2));
}

TEST_CASE("cli round trips a certificate in a fresh process") {
    std::string cert = "/tmp/galmod_cert_test.json";
    CHECK(run_cli("free-test " + fixture("f2_golden.json") + " --cert " + cert) == 0);
    CHECK(run_cli("verify " + fixture("f2_golden.json") + " " + cert) == 0);
    // the certificate belongs to a different problem, spans cannot match
    CHECK(run_cli("verify " + fixture("f1_gaussian.json") + " " + cert) == 1);
    std::remove(cert.c_str());
}

TEST_CASE("cli exit codes encode the verdict") {
    CHECK(run_cli("free-test " + fixture("f1_gaussian.json")) == 0);
    CHECK(run_cli("free-test " + fixture("negative_gaussian.json")) == 1);
    CHECK(run_cli("free-test " + fixture("negative_gaussian.json") + " --local-budget 1"
                  " --local-samples 3") == 2);
    CHECK(run_cli("free-test /nonexistent.json") == 2);
    CHECK(run_cli("wedderburn " + fixture("f3_zeta5.json") + " --output json") == 0);
    CHECK(run_cli("localfree " + fixture("negative_gaussian.json")) == 1);
    CHECK(run_cli("selftest") == 0);
}
