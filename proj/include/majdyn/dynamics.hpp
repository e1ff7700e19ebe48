#pragma once

// Majority dynamics: pairs of alternatives are discussed one at a time; every
// agent without an opinion on the pair adopts the majority orientation (ties,
// including 0-0, go to the first alternative of the discussed pair) and then
// closes its preference transitively. Supports are read from the profile as it
// was before the step.

#include "majdyn/profile.hpp"

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

namespace majdyn {

// Agenda: one orientation of every unordered pair, each exactly once.
class UpdateOrder {
public:
    // Throws std::invalid_argument if pairs is not a valid order over m alternatives.
    UpdateOrder(int m, std::vector<Pair> pairs);

    int alternatives() const { return m_; }
    std::span<const Pair> pairs() const& { return pairs_; }
    // A span into a temporary order would dangle.
    std::span<const Pair> pairs() const&& = delete;
    std::size_t size() const { return pairs_.size(); }
    const Pair& operator[](std::size_t i) const { return pairs_[i]; }

    friend bool operator==(const UpdateOrder&, const UpdateOrder&) = default;

private:
    int m_;
    std::vector<Pair> pairs_;
};

int pair_count(int m);

// Empty optional when pairs is a valid order over m alternatives, else the reason.
std::optional<std::string> order_problem(int m, std::span<const Pair> pairs);

// (a,b),(a,c),...,(b,c),...: pairs sorted by (lower, higher) index.
UpdateOrder lexicographic_order(int m);

// Appends every pair missing from prefix, lexicographically, as (lower, higher).
UpdateOrder complete_order(int m, std::span<const Pair> prefix);

struct StepTrace {
    Pair pair;
    int support_first = 0;
    int support_second = 0;
    Pair adopted;
    std::vector<int> updaters;
    // For each updater (same position), pairs gained through closure.
    std::vector<std::vector<Pair>> closure_additions;
};

struct StepResult {
    Profile profile;
    StepTrace trace;
};

struct RunResult {
    Profile profile;
    std::vector<StepTrace> steps;
};

StepResult md_step(const Profile& profile, Pair pair);
RunResult md_run(const Profile& profile, const UpdateOrder& order, bool record_trace = false);

// Allocation-free hot path used by the sweeps; mutates agents.
void md_step_in_place(std::span<Preference> agents, Pair pair);
void md_run_in_place(std::span<Preference> agents, std::span<const Pair> order);

// All (m(m-1)/2)! * 2^(m(m-1)/2) update orders, addressable by index.
//
// Index layout: index = permutation_rank * 2^P + mask, with P = m(m-1)/2.
// Permutations of the lexicographic pair list are ranked lexicographically;
// bit k of mask reverses the k-th discussed pair. Index 0 is the
// lexicographic order. Supported for 2 <= m <= 6.
class UpdateOrderSpace {
public:
    explicit UpdateOrderSpace(int m);

    int alternatives() const { return m_; }
    std::uint64_t size() const { return size_; }
    UpdateOrder at(std::uint64_t index) const;

    // Calls visit(index, pairs) for every index in [first, last), in order.
    template <class Visit>
    void for_each(std::uint64_t first, std::uint64_t last, Visit&& visit) const;

    class iterator;
    iterator begin() const;
    iterator end() const;

private:
    struct Cursor {
        std::vector<std::uint8_t> perm;
        std::uint64_t mask = 0;
        std::vector<Pair> pairs;
    };
    Cursor cursor_at(std::uint64_t index) const;
    void advance(Cursor& c) const;
    void materialize(Cursor& c) const;

    int m_;
    int pairs_;
    std::uint64_t masks_;
    std::uint64_t size_;
    std::vector<Pair> canonical_;
};

class UpdateOrderSpace::iterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = UpdateOrder;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    UpdateOrder operator*() const { return UpdateOrder(space_->m_, cursor_.pairs); }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

private:
    friend class UpdateOrderSpace;
    const UpdateOrderSpace* space_ = nullptr;
    std::uint64_t index_ = 0;
    Cursor cursor_;
};

UpdateOrderSpace enumerate_update_orders(int m);

template <class Visit>
void UpdateOrderSpace::for_each(std::uint64_t first, std::uint64_t last, Visit&& visit) const
{
    if (first >= last)
        return;
    Cursor c = cursor_at(first);
    for (std::uint64_t i = first;;) {
        visit(i, std::span<const Pair>(c.pairs));
        if (++i == last)
            break;
        advance(c);
    }
}

} // namespace majdyn
