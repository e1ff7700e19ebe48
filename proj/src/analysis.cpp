#include "majdyn/analysis.hpp"

#include "majdyn/gen.hpp"
#include "majdyn/parallel.hpp"

#include <stdexcept>
#include <vector>

namespace majdyn {

namespace {

constexpr std::uint64_t kChunk = 4096;

std::size_t slot(ConsensusOutcome o)
{
    return static_cast<std::size_t>(o.code() + 1);
}

} // namespace

std::string_view effect_name(Effect effect)
{
    switch (effect) {
    case Effect::PreservedIdentity: return "preserved_identity";
    case Effect::PreservedExistenceOnly: return "preserved_existence_only";
    case Effect::Lost: return "lost";
    case Effect::Generated: return "generated";
    case Effect::AbsencePreserved: return "absence_preserved";
    }
    return "?";
}

Effect classify(ConsensusOutcome initial, ConsensusOutcome final_outcome)
{
    if (initial.has_winner()) {
        if (!final_outcome.has_winner())
            return Effect::Lost;
        return initial == final_outcome ? Effect::PreservedIdentity : Effect::PreservedExistenceOnly;
    }
    return final_outcome.has_winner() ? Effect::Generated : Effect::AbsencePreserved;
}

EffectRecord classify_effect(ConsensusNotion notion, const Profile& profile, const UpdateOrder& order)
{
    const ConsensusOutcome initial = consensus(notion, profile);
    const ConsensusOutcome final_outcome = consensus(notion, md_run(profile, order).profile);
    return {notion, initial, final_outcome, classify(initial, final_outcome)};
}

ControlReport::ControlReport(ConsensusNotion notion, ConsensusOutcome initial, int m)
    : notion_(notion), initial_(initial), m_(m), targets_(full_mask(m))
{
}

void ControlReport::record(ConsensusOutcome final_outcome, std::uint64_t times)
{
    counts_[slot(final_outcome)] += times;
    examined_ += times;
}

void ControlReport::merge(const ControlReport& other)
{
    if (other.notion_ != notion_ || other.initial_ != initial_ || other.m_ != m_)
        throw std::invalid_argument("cannot merge control reports of different searches");
    for (std::size_t i = 0; i < counts_.size(); ++i)
        counts_[i] += other.counts_[i];
    examined_ += other.examined_;
    exhaustive = exhaustive && other.exhaustive;
}

std::uint64_t ControlReport::count(ConsensusOutcome outcome) const
{
    return counts_[slot(outcome)];
}

std::map<ConsensusOutcome, std::uint64_t> ControlReport::outcome_multiset() const
{
    std::map<ConsensusOutcome, std::uint64_t> out;
    if (counts_[0] > 0)
        out[ConsensusOutcome::none()] = counts_[0];
    for (int a = 0; a < m_; ++a)
        if (counts_[static_cast<std::size_t>(a) + 1] > 0)
            out[ConsensusOutcome(alt(a))] = counts_[static_cast<std::size_t>(a) + 1];
    return out;
}

int ControlReport::distinct_winners() const
{
    int k = 0;
    for (int a = 0; a < m_; ++a)
        k += counts_[static_cast<std::size_t>(a) + 1] > 0 ? 1 : 0;
    return k;
}

std::optional<bool> ControlReport::can_preserve_existence() const
{
    if (!initial_.has_winner())
        return std::nullopt;
    return examined_ > counts_[0];
}

std::optional<bool> ControlReport::can_preserve_identity() const
{
    if (!initial_.has_winner())
        return std::nullopt;
    return count(initial_) > 0;
}

std::optional<bool> ControlReport::can_lose() const
{
    if (!initial_.has_winner())
        return std::nullopt;
    return counts_[0] > 0;
}

std::optional<bool> ControlReport::can_change_identity() const
{
    if (!initial_.has_winner())
        return std::nullopt;
    return examined_ > count(initial_);
}

std::optional<bool> ControlReport::can_generate() const
{
    if (initial_.has_winner())
        return std::nullopt;
    return examined_ > counts_[0];
}

std::optional<bool> ControlReport::can_prevent_generation() const
{
    if (initial_.has_winner())
        return std::nullopt;
    return counts_[0] > 0;
}

NegativeRoute ControlReport::negative_route() const
{
    if (initial_.has_winner())
        return NegativeRoute::None;
    const bool prevent = counts_[0] > 0;
    const bool distinct = distinct_winners() >= 2;
    if (prevent && distinct)
        return NegativeRoute::Both;
    if (prevent)
        return NegativeRoute::PreventGeneration;
    return distinct ? NegativeRoute::DistinctOutcomes : NegativeRoute::None;
}

std::optional<bool> ControlReport::negative_control_available() const
{
    if (initial_.has_winner())
        return std::nullopt;
    return negative_route() != NegativeRoute::None;
}

Row ControlReport::choosable() const
{
    Row out = 0;
    for (int a = 0; a < m_; ++a)
        if (counts_[static_cast<std::size_t>(a) + 1] > 0)
            out |= bit(alt(a));
    return out & targets_;
}

ControlReport control_search(ConsensusNotion notion, const Profile& profile, std::span<const UpdateOrder> orders,
                             std::optional<Row> targets)
{
    if (orders.empty())
        throw std::invalid_argument("control_search needs at least one update order");
    ControlReport report(notion, consensus(notion, profile), profile.m());
    if (targets)
        report.restrict_targets(*targets);
    std::vector<Preference> scratch;
    for (const UpdateOrder& order : orders) {
        scratch.assign(profile.begin(), profile.end());
        md_run_in_place(scratch, order.pairs());
        report.record(consensus_all(profile.m(), scratch)[static_cast<std::size_t>(notion)]);
    }
    return report;
}

namespace {

std::array<ControlReport, kNumNotions> empty_reports(const Profile& profile)
{
    const auto initial = consensus_all(profile);
    auto make = [&](std::size_t i) { return ControlReport(kAllNotions[i], initial[i], profile.m()); };
    return {make(0), make(1), make(2), make(3), make(4), make(5), make(6)};
}

void merge_all(std::array<ControlReport, kNumNotions>& into, const std::array<ControlReport, kNumNotions>& from)
{
    for (std::size_t i = 0; i < into.size(); ++i)
        into[i].merge(from[i]);
}

} // namespace

std::array<ControlReport, kNumNotions> control_search_all(const Profile& profile, const UpdateOrderSpace& space,
                                                          std::uint64_t first, std::uint64_t last)
{
    if (space.alternatives() != profile.m())
        throw std::invalid_argument("order space and profile disagree on the number of alternatives");
    auto reports = empty_reports(profile);
    std::vector<Preference> scratch(profile.begin(), profile.end());
    space.for_each(first, last, [&](std::uint64_t, std::span<const Pair> order) {
        std::copy(profile.begin(), profile.end(), scratch.begin());
        md_run_in_place(scratch, order);
        const auto finals = consensus_all(profile.m(), scratch);
        for (std::size_t i = 0; i < reports.size(); ++i)
            reports[i].record(finals[i]);
    });
    return reports;
}

std::array<ControlReport, kNumNotions> control_search_all_exhaustive(const Profile& profile, int jobs)
{
    const UpdateOrderSpace space(profile.m());
    const std::uint64_t chunks = (space.size() + kChunk - 1) / kChunk;
    std::vector<std::optional<std::array<ControlReport, kNumNotions>>> partial(chunks);
    parallel_for(chunks, jobs, [&](std::size_t c) {
        const std::uint64_t first = c * kChunk;
        partial[c] = control_search_all(profile, space, first, std::min(space.size(), first + kChunk));
    });
    auto reports = empty_reports(profile);
    for (const auto& p : partial)
        merge_all(reports, *p);
    return reports;
}

ControlReport control_search_exhaustive(ConsensusNotion notion, const Profile& profile, int jobs,
                                        std::optional<Row> targets)
{
    ControlReport report = control_search_all_exhaustive(profile, jobs)[static_cast<std::size_t>(notion)];
    if (targets)
        report.restrict_targets(*targets);
    return report;
}

ControlReport control_search_sampled(ConsensusNotion notion, const Profile& profile, std::uint64_t samples,
                                     std::uint64_t seed, int jobs, std::optional<Row> targets)
{
    if (samples == 0)
        throw std::invalid_argument("control_search needs at least one update order");
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::optional<ControlReport>> partial(chunks);
    const ConsensusOutcome initial = consensus(notion, profile);
    parallel_for(chunks, jobs, [&](std::size_t c) {
        Rng rng(derive_seed(seed, 0, c));
        ControlReport report(notion, initial, profile.m());
        std::vector<Preference> scratch(profile.begin(), profile.end());
        const std::uint64_t count = std::min(kChunk, samples - c * kChunk);
        for (std::uint64_t k = 0; k < count; ++k) {
            const UpdateOrder order = random_order(profile.m(), rng);
            std::copy(profile.begin(), profile.end(), scratch.begin());
            md_run_in_place(scratch, order.pairs());
            report.record(consensus_all(profile.m(), scratch)[static_cast<std::size_t>(notion)]);
        }
        partial[c] = report;
    });
    ControlReport report(notion, initial, profile.m());
    for (const auto& p : partial)
        report.merge(*p);
    report.exhaustive = false;
    report.sample_seed = seed;
    if (targets)
        report.restrict_targets(*targets);
    return report;
}

LoserToWinner loser_to_winner_check(const Profile& profile, const UpdateOrder& order)
{
    LoserToWinner out;
    out.initial_loser = condorcet_loser(profile);
    out.initial_winner = condorcet_winner(profile);
    out.final_winner = condorcet_winner(md_run(profile, order).profile);
    out.turned = out.initial_loser.has_winner() && out.initial_loser == out.final_winner;
    return out;
}

} // namespace majdyn
