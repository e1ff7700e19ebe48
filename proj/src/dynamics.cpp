#include "majdyn/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace majdyn {

namespace {

void check_pair(Pair p)
{
    if (p.first == p.second)
        throw SameAlternative(p.first);
}

std::uint64_t factorial(int k)
{
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i)
        f *= static_cast<std::uint64_t>(i);
    return f;
}

} // namespace

int pair_count(int m)
{
    return m * (m - 1) / 2;
}

std::optional<std::string> order_problem(int m, std::span<const Pair> pairs)
{
    if (static_cast<int>(pairs.size()) != pair_count(m))
        return "order has " + std::to_string(pairs.size()) + " pairs, expected " + std::to_string(pair_count(m));
    std::vector<bool> seen(static_cast<std::size_t>(m * m), false);
    for (Pair p : pairs) {
        const int a = index(p.first);
        const int b = index(p.second);
        if (a >= m || b >= m)
            return "pair mentions an alternative outside the set";
        if (a == b)
            return "pair repeats an alternative";
        const auto key = static_cast<std::size_t>(std::min(a, b) * m + std::max(a, b));
        if (seen[key])
            return "pair discussed twice";
        seen[key] = true;
    }
    return std::nullopt;
}

UpdateOrder::UpdateOrder(int m, std::vector<Pair> pairs) : m_(m), pairs_(std::move(pairs))
{
    if (m < 1 || m > kMaxAlternatives)
        throw std::invalid_argument("alternative count out of range");
    if (auto problem = order_problem(m, pairs_))
        throw std::invalid_argument("invalid update order: " + *problem);
}

UpdateOrder lexicographic_order(int m)
{
    std::vector<Pair> pairs;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            pairs.push_back({alt(a), alt(b)});
    return UpdateOrder(m, std::move(pairs));
}

UpdateOrder complete_order(int m, std::span<const Pair> prefix)
{
    std::vector<Pair> pairs(prefix.begin(), prefix.end());
    const UpdateOrder lex = lexicographic_order(m);
    for (Pair p : lex.pairs()) {
        const bool present = std::any_of(prefix.begin(), prefix.end(),
                                         [p](Pair q) { return q == p || q == p.reversed(); });
        if (!present)
            pairs.push_back(p);
    }
    return UpdateOrder(m, std::move(pairs));
}

void md_step_in_place(std::span<Preference> agents, Pair pair)
{
    int forward = 0;
    int backward = 0;
    for (const Preference& p : agents) {
        forward += p.prefers(pair.first, pair.second) ? 1 : 0;
        backward += p.prefers(pair.second, pair.first) ? 1 : 0;
    }
    if (forward + backward == static_cast<int>(agents.size()))
        return;
    const Pair adopted = forward >= backward ? pair : pair.reversed();
    for (Preference& p : agents)
        if (!p.compares(pair.first, pair.second))
            insert_closed(p, adopted);
}

void md_run_in_place(std::span<Preference> agents, std::span<const Pair> order)
{
    for (Pair p : order)
        md_step_in_place(agents, p);
}

StepResult md_step(const Profile& profile, Pair pair)
{
    check_pair(pair);
    StepTrace trace;
    trace.pair = pair;
    trace.support_first = support(profile, pair.first, pair.second);
    trace.support_second = support(profile, pair.second, pair.first);
    trace.adopted = trace.support_first >= trace.support_second ? pair : pair.reversed();

    Profile next = profile;
    for (int i = 0; i < profile.n(); ++i) {
        const Preference& before = profile[i];
        if (before.compares(pair.first, pair.second))
            continue;
        insert_closed(next[i], trace.adopted);
        std::vector<Pair> gained;
        for (Pair q : next[i].table().pairs())
            if (!before.prefers(q.first, q.second) && !(q == trace.adopted))
                gained.push_back(q);
        trace.updaters.push_back(i);
        trace.closure_additions.push_back(std::move(gained));
    }
    return {std::move(next), std::move(trace)};
}

RunResult md_run(const Profile& profile, const UpdateOrder& order, bool record_trace)
{
    if (order.alternatives() != profile.m())
        throw std::invalid_argument("update order and profile disagree on the number of alternatives");
    RunResult result{profile, {}};
    if (!record_trace) {
        md_run_in_place(result.profile.agents(), order.pairs());
        return result;
    }
    for (Pair p : order.pairs()) {
        StepResult step = md_step(result.profile, p);
        result.profile = std::move(step.profile);
        result.steps.push_back(std::move(step.trace));
    }
    return result;
}

UpdateOrderSpace::UpdateOrderSpace(int m) : m_(m), pairs_(pair_count(m))
{
    if (m < 2 || m > 6)
        throw std::invalid_argument("exhaustive order enumeration supports 2 <= m <= 6");
    masks_ = std::uint64_t{1} << pairs_;
    size_ = factorial(pairs_) * masks_;
    const UpdateOrder lex = lexicographic_order(m);
    canonical_.assign(lex.pairs().begin(), lex.pairs().end());
}

UpdateOrderSpace::Cursor UpdateOrderSpace::cursor_at(std::uint64_t index) const
{
    if (index >= size_)
        throw std::out_of_range("update order index out of range");
    Cursor c;
    c.mask = index % masks_;
    std::uint64_t rank = index / masks_;
    // Factorial number system, most significant digit first.
    std::vector<std::uint8_t> pool(static_cast<std::size_t>(pairs_));
    std::iota(pool.begin(), pool.end(), std::uint8_t{0});
    for (int k = pairs_; k >= 1; --k) {
        const std::uint64_t block = factorial(k - 1);
        const auto digit = static_cast<std::size_t>(rank / block);
        rank %= block;
        c.perm.push_back(pool[digit]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    materialize(c);
    return c;
}

void UpdateOrderSpace::materialize(Cursor& c) const
{
    c.pairs.resize(static_cast<std::size_t>(pairs_));
    for (std::size_t k = 0; k < c.perm.size(); ++k) {
        const Pair p = canonical_[c.perm[k]];
        c.pairs[k] = (c.mask >> k) & 1U ? p.reversed() : p;
    }
}

void UpdateOrderSpace::advance(Cursor& c) const
{
    if (++c.mask == masks_) {
        c.mask = 0;
        std::next_permutation(c.perm.begin(), c.perm.end());
    }
    materialize(c);
}

UpdateOrder UpdateOrderSpace::at(std::uint64_t index) const
{
    return UpdateOrder(m_, cursor_at(index).pairs);
}

UpdateOrderSpace::iterator UpdateOrderSpace::begin() const
{
    iterator it;
    it.space_ = this;
    it.index_ = 0;
    it.cursor_ = cursor_at(0);
    return it;
}

UpdateOrderSpace::iterator UpdateOrderSpace::end() const
{
    iterator it;
    it.space_ = this;
    it.index_ = size_;
    return it;
}

UpdateOrderSpace::iterator& UpdateOrderSpace::iterator::operator++()
{
    if (++index_ < space_->size_)
        space_->advance(cursor_);
    return *this;
}

UpdateOrderSpace enumerate_update_orders(int m)
{
    return UpdateOrderSpace(m);
}

} // namespace majdyn
