#pragma once

// Named counterexample profiles with machine-checkable claims about them.
//
// Each fixture fixes only the first pairs of its update order; the stored
// order appends the remaining pairs lexicographically as (lower, higher).
// Order-dependent claims hold for every completion of the prefix.

#include "majdyn/analysis.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace majdyn {

namespace claim {

struct InitialConsensus {
    ConsensusNotion notion;
    ConsensusOutcome outcome;
};
struct FinalConsensus {
    ConsensusNotion notion;
    ConsensusOutcome outcome;
};
struct InitialLoser {
    ConsensusOutcome outcome;
};
// Every agent ends with this complete ranking, best first.
struct FinalUnanimousRanking {
    std::vector<Alternative> ranking;
};
// (support of first, support of second) at each step, from the first step on.
struct StepSupports {
    std::vector<std::pair<int, int>> supports;
};
// Exhaustive over all update orders.
struct EveryOrderYields {
    ConsensusNotion notion;
    ConsensusOutcome outcome;
};
struct NoOrderPreservesExistence {
    ConsensusNotion notion;
};
struct ChoosableIncludes {
    ConsensusNotion notion;
    Row alternatives;
};

} // namespace claim

using Claim = std::variant<claim::InitialConsensus, claim::FinalConsensus, claim::InitialLoser,
                           claim::FinalUnanimousRanking, claim::StepSupports, claim::EveryOrderYields,
                           claim::NoOrderPreservesExistence, claim::ChoosableIncludes>;

struct Fixture {
    std::string name;
    std::string summary;
    std::vector<std::string> labels;
    Profile profile;
    std::vector<Pair> order_prefix;
    UpdateOrder order;
    std::vector<Claim> claims;
};

std::vector<Fixture> counterexample_catalog();

// Throws std::out_of_range for unknown names.
Fixture find_fixture(std::string_view name);

struct ClaimCheck {
    std::string description;
    bool passed = false;
    std::string observed;
};

// Checks every claim; order-dependent claims use `order`.
std::vector<ClaimCheck> verify_fixture(const Fixture& fixture, const UpdateOrder& order);
std::vector<ClaimCheck> verify_fixture(const Fixture& fixture);

} // namespace majdyn
