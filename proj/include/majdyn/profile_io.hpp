#pragma once

// Text formats for profiles and update orders.
//
// A profile document is JSON:
//   {"m": 3, "labels": ["a","b","c"], "agents": [[["a","c"]], [["b","a"]], []]}
// Each agent is a list of [first, second] label pairs meaning first > second.
// "labels" is optional and defaults to a, b, c, ... Agent relations are closed
// transitively and validated on load.

#include "majdyn/consensus.hpp"
#include "majdyn/profile.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace majdyn {

class ProfileFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProfileDocument {
    Profile profile;
    std::vector<std::string> labels;
};

ProfileDocument parse_profile(std::string_view text);
ProfileDocument read_profile_file(const std::filesystem::path& path);
std::string format_profile_document(const Profile& profile, const std::vector<std::string>& labels);

Alternative lookup_label(const std::vector<std::string>& labels, std::string_view label);

// Comma separated pairs. Each item is either "x>y" or, with single-character
// labels, the two labels juxtaposed ("ab").
std::vector<Pair> parse_pair_list(std::string_view text, const std::vector<std::string>& labels);
std::string format_pair(Pair p, const std::vector<std::string>& labels);

// "b > a > c" for complete preferences, "{ba, ac}" style pair sets otherwise.
std::string format_preference(const Preference& pref, const std::vector<std::string>& labels);

// Winner label, or "none".
std::string format_outcome(ConsensusOutcome outcome, const std::vector<std::string>& labels);

} // namespace majdyn
