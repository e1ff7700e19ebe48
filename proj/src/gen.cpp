#include "majdyn/gen.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace majdyn {

namespace {

std::uint64_t binomial(int n, int k)
{
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

bool is_transitive(const DominanceTable& t)
{
    for (int a = 0; a < t.size(); ++a)
        for (Row rest = t.row(alt(a)); rest != 0; rest &= rest - 1)
            if ((t.row(alt(std::countr_zero(rest))) & ~t.row(alt(a))) != 0)
                return false;
    return true;
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[static_cast<std::size_t>(rng.below(i))]);
}

void check_m(int m)
{
    if (m < 2 || m > kMaxAlternatives)
        throw std::invalid_argument("generator needs 2 <= m <= " + std::to_string(kMaxAlternatives));
}

} // namespace

std::string_view gen_kind_name(GenKind kind)
{
    switch (kind) {
    case GenKind::UniformPartialOrder: return "partial";
    case GenKind::UniformWeakOrdering: return "weak";
    case GenKind::Complete: return "complete";
    case GenKind::Empty: return "empty";
    }
    return "?";
}

std::uint64_t fubini_number(int k)
{
    // F(k) = sum_{j=1..k} C(k, j) F(k - j), F(0) = 1.
    std::vector<std::uint64_t> f(static_cast<std::size_t>(k) + 1, 0);
    f[0] = 1;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= i; ++j)
            f[static_cast<std::size_t>(i)] += binomial(i, j) * f[static_cast<std::size_t>(i - j)];
    return f[static_cast<std::size_t>(k)];
}

Preference random_partial_preference(int m, Rng& rng)
{
    check_m(m);
    for (long attempt = 0; attempt < kMaxRejections; ++attempt) {
        DominanceTable t(m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                switch (rng.below(3)) {
                case 0: t.set(alt(a), alt(b)); break;
                case 1: t.set(alt(b), alt(a)); break;
                default: break;
                }
            }
        if (is_transitive(t))
            return Preference::from_relation(t);
    }
    std::ostringstream os;
    os << "random_partial_preference: no transitive assignment after " << kMaxRejections
       << " draws (m = " << m << ")";
    throw std::runtime_error(os.str());
}

Preference random_weak_ordering(int m, Rng& rng)
{
    check_m(m);
    std::vector<Alternative> rest(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a)
        rest[static_cast<std::size_t>(a)] = alt(a);

    TierPartition tiers;
    while (!rest.empty()) {
        // The first tier has size k with probability C(r, k) F(r - k) / F(r).
        const int r = static_cast<int>(rest.size());
        std::uint64_t pick = rng.below(fubini_number(r));
        int k = 1;
        for (;; ++k) {
            const std::uint64_t weight = binomial(r, k) * fubini_number(r - k);
            if (pick < weight)
                break;
            pick -= weight;
        }
        // Uniform k-subset by partial Fisher-Yates.
        for (int i = 0; i < k; ++i)
            std::swap(rest[static_cast<std::size_t>(i)],
                      rest[static_cast<std::size_t>(i) + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(r - i)))]);
        std::vector<Alternative> tier(rest.begin(), rest.begin() + k);
        std::sort(tier.begin(), tier.end());
        tiers.tiers.push_back(std::move(tier));
        rest.erase(rest.begin(), rest.begin() + k);
    }
    return tiers.to_preference(m);
}

Preference random_complete_preference(int m, Rng& rng)
{
    check_m(m);
    std::vector<Alternative> ranking(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a)
        ranking[static_cast<std::size_t>(a)] = alt(a);
    shuffle(ranking, rng);
    return Preference::from_ranking(ranking);
}

Preference random_preference(GenKind kind, int m, Rng& rng)
{
    switch (kind) {
    case GenKind::UniformPartialOrder: return random_partial_preference(m, rng);
    case GenKind::UniformWeakOrdering: return random_weak_ordering(m, rng);
    case GenKind::Complete: return random_complete_preference(m, rng);
    case GenKind::Empty: return Preference(m);
    }
    throw std::invalid_argument("unknown generator kind");
}

Profile random_profile(GenKind kind, int n, int m, Rng& rng)
{
    std::vector<Preference> prefs;
    prefs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        prefs.push_back(random_preference(kind, m, rng));
    return Profile(m, std::move(prefs));
}

Profile random_profile(const GenPolicy& policy, int n)
{
    Rng rng(policy.seed);
    return random_profile(policy.kind, n, policy.m, rng);
}

UpdateOrder random_order(int m, Rng& rng)
{
    return random_completion(m, {}, rng);
}

UpdateOrder random_completion(int m, std::span<const Pair> prefix, Rng& rng)
{
    std::vector<Pair> missing;
    const UpdateOrder lex = lexicographic_order(m);
    for (Pair p : lex.pairs()) {
        const bool present = std::any_of(prefix.begin(), prefix.end(),
                                         [p](Pair q) { return q == p || q == p.reversed(); });
        if (!present)
            missing.push_back(p);
    }
    shuffle(missing, rng);
    std::vector<Pair> pairs(prefix.begin(), prefix.end());
    for (Pair p : missing)
        pairs.push_back(rng.below(2) ? p.reversed() : p);
    return UpdateOrder(m, std::move(pairs));
}

} // namespace majdyn
