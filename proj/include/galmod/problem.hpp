#pragma once

#include <string>

#include "galmod/search.hpp"
#include "json.hpp"

namespace galmod {

using Json = nlohmann::json;

// A fully resolved input: the group, the validated module, the order the
// question is asked over, and budgets read from the file.
struct ProblemSpec {
    std::string name;
    FiniteGroup group;
    GModuleLattice module;
    Order order;
    std::string order_kind;  // group_ring | associated | basis
    FreeTestOptions budgets;
};

// Schema "galmod-problem/1".  Rationals are JSON integers or "p/q" strings.
// module.kind "ring_of_integers" describes O_L by a monic defining polynomial,
// an integral basis over the power basis and the Galois images of the
// primitive element, one per group element; kind "explicit" gives raw action
// matrices and a lattice basis.
ProblemSpec problem_from_json(const Json& j);
ProblemSpec load_problem(const std::string& path);

Rat rat_from_json(const Json& v);
Json rat_to_json(const Rat& q);

Json certificate_to_json(const FreenessCertificate& c, const std::string& problem);
FreenessCertificate certificate_from_json(const Json& j);

// Recomputes the order span of the certified generators and compares it with
// the module lattice; true only for a free certificate that checks out.
bool verify_certificate(const ProblemSpec& p, const FreenessCertificate& c);

std::string verdict_name(Verdict v);
int verdict_exit_code(Verdict v);  // free 0, not free 1, inconclusive 2

}  // namespace galmod
