#pragma once

// Effects of majority dynamics on consensus, and the chair's control over them.

#include "majdyn/consensus.hpp"
#include "majdyn/dynamics.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

namespace majdyn {

enum class Effect { PreservedIdentity, PreservedExistenceOnly, Lost, Generated, AbsencePreserved };

std::string_view effect_name(Effect effect);

Effect classify(ConsensusOutcome initial, ConsensusOutcome final_outcome);

struct EffectRecord {
    ConsensusNotion notion;
    ConsensusOutcome initial;
    ConsensusOutcome final_outcome;
    Effect effect;
};

EffectRecord classify_effect(ConsensusNotion notion, const Profile& profile, const UpdateOrder& order);

// How negative control was established, if at all.
enum class NegativeRoute { None, PreventGeneration, DistinctOutcomes, Both };

// Aggregate of final outcomes over a set of update orders for one profile and
// notion. Flags are derived from the outcome multiset; flags that do not apply
// to the initial outcome (identity and existence flags without initial
// consensus, generation flags with it) are empty.
class ControlReport {
public:
    ControlReport(ConsensusNotion notion, ConsensusOutcome initial, int m);

    void record(ConsensusOutcome final_outcome, std::uint64_t times = 1);
    // Commutative and associative; both reports must describe the same search.
    void merge(const ControlReport& other);

    ConsensusNotion notion() const { return notion_; }
    ConsensusOutcome initial() const { return initial_; }
    int alternatives() const { return m_; }
    std::uint64_t orders_examined() const { return examined_; }
    std::uint64_t count(ConsensusOutcome outcome) const;
    std::map<ConsensusOutcome, std::uint64_t> outcome_multiset() const;

    std::optional<bool> can_preserve_existence() const;
    std::optional<bool> can_preserve_identity() const;
    std::optional<bool> can_lose() const;
    // Some order ends with a consensus other than the initial one (or none).
    std::optional<bool> can_change_identity() const;
    std::optional<bool> can_generate() const;
    std::optional<bool> can_prevent_generation() const;
    std::optional<bool> negative_control_available() const;
    NegativeRoute negative_route() const;

    // Alternatives reached as final consensus by some order, restricted to targets.
    Row choosable() const;
    void restrict_targets(Row targets) { targets_ = targets; }
    Row targets() const { return targets_; }

    bool exhaustive = true;
    std::optional<std::uint64_t> sample_seed;

private:
    int distinct_winners() const;

    ConsensusNotion notion_;
    ConsensusOutcome initial_;
    int m_;
    Row targets_;
    std::uint64_t examined_ = 0;
    // Slot 0 counts "no consensus", slot a + 1 counts winner a.
    std::array<std::uint64_t, kMaxAlternatives + 1> counts_{};
};

ControlReport control_search(ConsensusNotion notion, const Profile& profile, std::span<const UpdateOrder> orders,
                             std::optional<Row> targets = std::nullopt);

// One report per notion over the orders of `space` with index in [first, last).
std::array<ControlReport, kNumNotions> control_search_all(const Profile& profile, const UpdateOrderSpace& space,
                                                          std::uint64_t first, std::uint64_t last);

// Every order, split into index ranges over `jobs` threads.
ControlReport control_search_exhaustive(ConsensusNotion notion, const Profile& profile, int jobs = 1,
                                        std::optional<Row> targets = std::nullopt);
std::array<ControlReport, kNumNotions> control_search_all_exhaustive(const Profile& profile, int jobs = 1);

// `samples` uniformly random orders drawn from `seed`.
ControlReport control_search_sampled(ConsensusNotion notion, const Profile& profile, std::uint64_t samples,
                                     std::uint64_t seed, int jobs = 1, std::optional<Row> targets = std::nullopt);

struct LoserToWinner {
    bool turned = false;
    ConsensusOutcome initial_loser;
    ConsensusOutcome initial_winner;
    ConsensusOutcome final_winner;
};

// True iff the initial Condorcet loser is the Condorcet winner after the run.
LoserToWinner loser_to_winner_check(const Profile& profile, const UpdateOrder& order);

} // namespace majdyn
