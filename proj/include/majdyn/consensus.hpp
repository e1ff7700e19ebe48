#pragma once

#include "majdyn/profile.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace majdyn {

enum class ConsensusNotion : std::uint8_t { CW, UnanUD, UnanDom, MajUD, MajDom, PlurUD, PlurDom };

inline constexpr int kNumNotions = 7;
inline constexpr std::array<ConsensusNotion, kNumNotions> kAllNotions = {
    ConsensusNotion::CW,     ConsensusNotion::UnanUD, ConsensusNotion::UnanDom, ConsensusNotion::MajUD,
    ConsensusNotion::MajDom, ConsensusNotion::PlurUD, ConsensusNotion::PlurDom};

std::string_view notion_name(ConsensusNotion notion);
// Throws std::invalid_argument for unknown tags.
ConsensusNotion parse_notion(std::string_view tag);

// A consensus alternative, or none (no unique qualifying alternative).
class ConsensusOutcome {
public:
    constexpr ConsensusOutcome() = default;
    constexpr explicit ConsensusOutcome(Alternative winner) : code_(static_cast<std::int8_t>(index(winner))) {}
    static constexpr ConsensusOutcome none() { return {}; }

    constexpr bool has_winner() const { return code_ >= 0; }
    constexpr explicit operator bool() const { return has_winner(); }
    Alternative winner() const;
    // -1 for none, winner index otherwise.
    constexpr int code() const { return code_; }

    friend constexpr auto operator<=>(ConsensusOutcome, ConsensusOutcome) = default;

private:
    std::int8_t code_ = -1;
};

Row undominated_set(const Preference& pref);
std::optional<Alternative> dominant_alternative(const Preference& pref);

ConsensusOutcome condorcet_winner(const Profile& profile);
ConsensusOutcome condorcet_loser(const Profile& profile);
ConsensusOutcome consensus(ConsensusNotion notion, const Profile& profile);
// All seven notions from one pass over the profile, indexed by notion.
std::array<ConsensusOutcome, kNumNotions> consensus_all(const Profile& profile);
std::array<ConsensusOutcome, kNumNotions> consensus_all(int m, std::span<const Preference> agents);

enum class Threshold { All, Majority };

// Alternatives ranked below every other alternative by all (a strict majority of) agents.
Row dominated_by_all(const Profile& profile, Threshold threshold);

// Per-alternative counts behind the undominated/dominant notions, exposed for
// diagnostics (tied plurality argmax and similar).
struct NotionCounts {
    std::vector<int> undominated;
    std::vector<int> dominant;
};
NotionCounts notion_counts(const Profile& profile);

// Alternatives attaining a positive maximum count; empty when all counts are zero.
std::vector<Alternative> plurality_argmax(const std::vector<int>& counts);

} // namespace majdyn
