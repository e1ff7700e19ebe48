#include "majdyn/consensus.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace majdyn {

namespace {

constexpr std::array<std::string_view, kNumNotions> kNames = {"CW",     "UnanUD", "UnanDom", "MajUD",
                                                              "MajDom", "PlurUD", "PlurDom"};

// Unique alternative whose count passes the test, else none.
template <class Pred>
ConsensusOutcome unique_qualifier(int m, const int* counts, Pred qualifies)
{
    int found = -1;
    for (int a = 0; a < m; ++a) {
        if (!qualifies(counts[a]))
            continue;
        if (found >= 0)
            return ConsensusOutcome::none();
        found = a;
    }
    return found >= 0 ? ConsensusOutcome(alt(found)) : ConsensusOutcome::none();
}

ConsensusOutcome plurality(int m, const int* counts)
{
    int best = 0;
    for (int a = 0; a < m; ++a)
        best = std::max(best, counts[a]);
    if (best == 0)
        return ConsensusOutcome::none();
    return unique_qualifier(m, counts, [best](int c) { return c == best; });
}

struct Tally {
    int m = 0;
    int n = 0;
    std::array<std::array<int, kMaxAlternatives>, kMaxAlternatives> support{};
    std::array<int, kMaxAlternatives> undominated{};
    std::array<int, kMaxAlternatives> dominant{};
};

Tally tally(int m, std::span<const Preference> agents, bool with_support)
{
    Tally t;
    t.m = m;
    t.n = static_cast<int>(agents.size());
    const Row all = full_mask(m);
    for (const Preference& p : agents) {
        Row dominated = 0;
        for (int a = 0; a < m; ++a) {
            const Row r = p.dominated_by(alt(a));
            dominated |= r;
            if ((r | bit(alt(a))) == all)
                ++t.dominant[static_cast<std::size_t>(a)];
            if (with_support)
                for (Row rest = r; rest != 0; rest &= rest - 1)
                    ++t.support[static_cast<std::size_t>(a)][static_cast<std::size_t>(std::countr_zero(rest))];
        }
        for (Row rest = all & ~dominated; rest != 0; rest &= rest - 1)
            ++t.undominated[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    return t;
}

// Direction +1: beats every other alternative; -1: beaten by every other one.
ConsensusOutcome pairwise_extreme(const Tally& t, int direction)
{
    for (int a = 0; a < t.m; ++a) {
        bool extreme = t.m > 1;
        for (int b = 0; b < t.m && extreme; ++b) {
            if (a == b)
                continue;
            const int diff = t.support[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] -
                             t.support[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
            extreme = diff * direction > 0;
        }
        if (extreme)
            return ConsensusOutcome(alt(a));
    }
    return ConsensusOutcome::none();
}

} // namespace

std::string_view notion_name(ConsensusNotion notion)
{
    return kNames[static_cast<std::size_t>(notion)];
}

ConsensusNotion parse_notion(std::string_view tag)
{
    for (ConsensusNotion c : kAllNotions)
        if (notion_name(c) == tag)
            return c;
    throw std::invalid_argument("unknown consensus notion '" + std::string(tag) + "'");
}

Alternative ConsensusOutcome::winner() const
{
    if (!has_winner())
        throw std::logic_error("no consensus alternative");
    return alt(code_);
}

Row undominated_set(const Preference& pref)
{
    return pref.undominated();
}

std::optional<Alternative> dominant_alternative(const Preference& pref)
{
    return pref.dominant();
}

ConsensusOutcome condorcet_winner(const Profile& profile)
{
    return pairwise_extreme(tally(profile.m(), profile.agents(), true), +1);
}

ConsensusOutcome condorcet_loser(const Profile& profile)
{
    return pairwise_extreme(tally(profile.m(), profile.agents(), true), -1);
}

std::array<ConsensusOutcome, kNumNotions> consensus_all(int m, std::span<const Preference> agents)
{
    std::array<ConsensusOutcome, kNumNotions> out{};
    const Tally t = tally(m, agents, true);
    const int n = t.n;
    if (n == 0)
        return out;

    auto set = [&out](ConsensusNotion c, ConsensusOutcome o) { out[static_cast<std::size_t>(c)] = o; };
    auto unanimous = [n](int c) { return c == n; };
    auto majority = [n](int c) { return 2 * c > n; };

    set(ConsensusNotion::CW, pairwise_extreme(t, +1));
    set(ConsensusNotion::UnanUD, unique_qualifier(m, t.undominated.data(), unanimous));
    set(ConsensusNotion::UnanDom, unique_qualifier(m, t.dominant.data(), unanimous));
    set(ConsensusNotion::MajUD, unique_qualifier(m, t.undominated.data(), majority));
    set(ConsensusNotion::MajDom, unique_qualifier(m, t.dominant.data(), majority));
    set(ConsensusNotion::PlurUD, plurality(m, t.undominated.data()));
    set(ConsensusNotion::PlurDom, plurality(m, t.dominant.data()));

    // Each agent has at most one dominant alternative, so at most one can
    // reach a strict majority of dominance counts.
    assert(std::count_if(t.dominant.begin(), t.dominant.begin() + m, majority) <= 1);
    return out;
}

std::array<ConsensusOutcome, kNumNotions> consensus_all(const Profile& profile)
{
    return consensus_all(profile.m(), profile.agents());
}

ConsensusOutcome consensus(ConsensusNotion notion, const Profile& profile)
{
    return consensus_all(profile)[static_cast<std::size_t>(notion)];
}

Row dominated_by_all(const Profile& profile, Threshold threshold)
{
    const int m = profile.m();
    const int n = profile.n();
    const Row others_all = full_mask(m);
    Row out = 0;
    for (int a = 0; a < m; ++a) {
        int bottom = 0;
        for (const Preference& p : profile)
            if ((p.dominators_of(alt(a)) | bit(alt(a))) == others_all)
                ++bottom;
        const bool qualifies = threshold == Threshold::All ? (n > 0 && bottom == n) : 2 * bottom > n;
        if (qualifies)
            out |= bit(alt(a));
    }
    return out;
}

NotionCounts notion_counts(const Profile& profile)
{
    const Tally t = tally(profile.m(), profile.agents(), false);
    const auto m = static_cast<std::size_t>(profile.m());
    return {std::vector<int>(t.undominated.begin(), t.undominated.begin() + static_cast<long>(m)),
            std::vector<int>(t.dominant.begin(), t.dominant.begin() + static_cast<long>(m))};
}

std::vector<Alternative> plurality_argmax(const std::vector<int>& counts)
{
    std::vector<Alternative> out;
    const int best = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
    if (best == 0)
        return out;
    for (std::size_t a = 0; a < counts.size(); ++a)
        if (counts[a] == best)
            out.push_back(alt(static_cast<int>(a)));
    return out;
}

} // namespace majdyn
