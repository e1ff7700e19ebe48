#pragma once

#include "majdyn/dynamics.hpp"
#include "majdyn/profile.hpp"
#include "majdyn/rng.hpp"

#include <cstdint>
#include <string_view>

namespace majdyn {

enum class GenKind { UniformPartialOrder, UniformWeakOrdering, Complete, Empty };

std::string_view gen_kind_name(GenKind kind);

struct GenPolicy {
    GenKind kind = GenKind::UniformPartialOrder;
    int m = 3;
    std::uint64_t seed = 0;
};

inline constexpr long kMaxRejections = 1'000'000;

// Each unordered pair independently: first wins, second wins or no comparison,
// probability 1/3 each. The whole assignment is redrawn until it is transitive.
Preference random_partial_preference(int m, Rng& rng);

// Uniform over ordered set partitions of the alternatives.
Preference random_weak_ordering(int m, Rng& rng);

// Uniform over the m! strict total orders.
Preference random_complete_preference(int m, Rng& rng);

Preference random_preference(GenKind kind, int m, Rng& rng);

// n sequential draws from one stream.
Profile random_profile(GenKind kind, int n, int m, Rng& rng);
Profile random_profile(const GenPolicy& policy, int n);

// Uniform over all update orders: random pair permutation and orientations.
UpdateOrder random_order(int m, Rng& rng);

// prefix followed by the missing pairs in random sequence and orientation.
UpdateOrder random_completion(int m, std::span<const Pair> prefix, Rng& rng);

// Number of ordered set partitions of k elements.
std::uint64_t fubini_number(int k);

} // namespace majdyn
