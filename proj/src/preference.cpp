#include "majdyn/preference.hpp"

#include <sstream>

namespace majdyn {

namespace {

std::string letter(Alternative a)
{
    return std::string(1, static_cast<char>('a' + index(a)));
}

void check_size(int m)
{
    if (m < 1 || m > kMaxAlternatives)
        throw std::invalid_argument("alternative count out of range: " + std::to_string(m));
}

} // namespace

std::vector<Alternative> members(Row set)
{
    std::vector<Alternative> out;
    for (; set != 0; set &= set - 1)
        out.push_back(alt(std::countr_zero(set)));
    return out;
}

SameAlternative::SameAlternative(Alternative a)
    : std::invalid_argument("pair needs two distinct alternatives, got " + letter(a) + " twice")
{
}

ClosureCreatesCycle::ClosureCreatesCycle(Alternative a, Alternative b)
    : std::runtime_error("closure forces both " + letter(a) + ">" + letter(b) + " and " + letter(b) +
                         ">" + letter(a)),
      a_(a), b_(b)
{
}

DominanceTable::DominanceTable(int m) : m_(static_cast<std::uint8_t>(m))
{
    check_size(m);
}

DominanceTable::DominanceTable(int m, std::initializer_list<Pair> pairs) : DominanceTable(m)
{
    for (Pair p : pairs)
        set(p.first, p.second);
}

void DominanceTable::set(Alternative a, Alternative b, bool value)
{
    if (index(a) >= m_ || index(b) >= m_)
        throw std::out_of_range("alternative index out of range");
    if (value)
        rows_[index(a)] |= bit(b);
    else
        rows_[index(a)] &= ~bit(b);
}

int DominanceTable::count() const
{
    int total = 0;
    for (Row r : rows())
        total += std::popcount(r);
    return total;
}

std::vector<Pair> DominanceTable::pairs() const
{
    std::vector<Pair> out;
    for (int a = 0; a < m_; ++a)
        for (int b = 0; b < m_; ++b)
            if (get(alt(a), alt(b)))
                out.push_back({alt(a), alt(b)});
    return out;
}

DominanceTable transitive_closure(const DominanceTable& rel)
{
    const int m = rel.size();
    for (int a = 0; a < m; ++a)
        if (rel.get(alt(a), alt(a)))
            throw std::invalid_argument("transitive_closure: relation is reflexive at " + letter(alt(a)));

    DominanceTable out = rel;
    // Warshall over bitset rows.
    for (int k = 0; k < m; ++k) {
        const Row via = out.row(alt(k));
        for (int i = 0; i < m; ++i)
            if (out.get(alt(i), alt(k)))
                out.set_row(alt(i), out.row(alt(i)) | via);
    }
    for (int a = 0; a < m; ++a) {
        if (!out.get(alt(a), alt(a)))
            continue;
        // a lies on a cycle; report a 2-cycle witness from it.
        for (int b = 0; b < m; ++b)
            if (b != a && out.get(alt(a), alt(b)) && out.get(alt(b), alt(a)))
                throw ClosureCreatesCycle(alt(a), alt(b));
    }
    return out;
}

std::string Violation::describe() const
{
    std::ostringstream os;
    switch (axiom) {
    case Axiom::Irreflexivity: os << "irreflexivity"; break;
    case Axiom::Asymmetry: os << "asymmetry"; break;
    case Axiom::Transitivity: os << "transitivity"; break;
    }
    os << " violated, witness";
    for (Alternative a : witness)
        os << ' ' << letter(a);
    return os.str();
}

std::optional<Violation> validate_preference(const DominanceTable& rel)
{
    const int m = rel.size();
    for (int a = 0; a < m; ++a)
        if (rel.get(alt(a), alt(a)))
            return Violation{Axiom::Irreflexivity, {alt(a)}};
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (rel.get(alt(a), alt(b)) && rel.get(alt(b), alt(a)))
                return Violation{Axiom::Asymmetry, {alt(a), alt(b)}};
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (!rel.get(alt(a), alt(b)))
                continue;
            const Row missing = rel.row(alt(b)) & ~rel.row(alt(a));
            if (missing != 0)
                return Violation{Axiom::Transitivity, {alt(a), alt(b), alt(std::countr_zero(missing))}};
        }
    return std::nullopt;
}

Preference Preference::from_relation(const DominanceTable& rel)
{
    DominanceTable closed = transitive_closure(rel);
    if (auto v = validate_preference(closed))
        throw std::invalid_argument("invalid preference: " + v->describe());
    return Preference(closed);
}

Preference Preference::from_ranking(std::span<const Alternative> ranking)
{
    const int m = static_cast<int>(ranking.size());
    DominanceTable t(m);
    Row seen = 0;
    for (std::size_t i = ranking.size(); i-- > 0;) {
        if (seen & bit(ranking[i]))
            throw std::invalid_argument("ranking repeats an alternative");
        t.set_row(ranking[i], seen);
        seen |= bit(ranking[i]);
    }
    return Preference(t);
}

Preference Preference::from_ranking(std::initializer_list<int> ranking)
{
    std::vector<Alternative> alts;
    for (int i : ranking)
        alts.push_back(alt(i));
    return from_ranking(alts);
}

Row Preference::dominators_of(Alternative a) const
{
    Row out = 0;
    const int m = size();
    for (int x = 0; x < m; ++x)
        if (table_.row(alt(x)) & bit(a))
            out |= bit(alt(x));
    return out;
}

Row Preference::undominated() const
{
    Row dominated = 0;
    for (Row r : table_.rows())
        dominated |= r;
    return full_mask(size()) & ~dominated;
}

std::optional<Alternative> Preference::dominant() const
{
    const Row all = full_mask(size());
    for (int a = 0; a < size(); ++a)
        if ((table_.row(alt(a)) | bit(alt(a))) == all)
            return alt(a);
    return std::nullopt;
}

bool Preference::is_complete() const
{
    const int m = size();
    return compared_pairs() == m * (m - 1) / 2;
}

void insert_closed(Preference& pref, Pair p)
{
    DominanceTable& t = pref.table_;
    const Row below = t.row(p.second) | bit(p.second);
    const Row above = pref.dominators_of(p.first) | bit(p.first);
    for (Row rest = above; rest != 0; rest &= rest - 1) {
        const Alternative x = alt(std::countr_zero(rest));
        t.set_row(x, t.row(x) | below);
    }
}

Preference Preference::with_pair(Pair p) const
{
    if (p.first == p.second)
        throw SameAlternative(p.first);
    if (compares(p.first, p.second))
        throw std::logic_error("with_pair: pair already compared");
    Preference out = *this;
    insert_closed(out, p);
    return out;
}

Preference TierPartition::to_preference(int m) const
{
    DominanceTable t(m);
    Row later = 0;
    for (std::size_t g = tiers.size(); g-- > 0;) {
        for (Alternative a : tiers[g])
            t.set_row(a, later);
        for (Alternative a : tiers[g])
            later |= bit(a);
    }
    return Preference::from_relation(t);
}

std::optional<TierPartition> tier_partition(const Preference& pref)
{
    const int m = pref.size();
    // Strict weak ordering iff incomparability is transitive.
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (a == b || pref.compares(alt(a), alt(b)))
                continue;
            for (int c = 0; c < m; ++c)
                if (c != a && c != b && !pref.compares(alt(b), alt(c)) && pref.compares(alt(a), alt(c)))
                    return std::nullopt;
        }

    TierPartition out;
    Row remaining = full_mask(m);
    while (remaining != 0) {
        Row dominated = 0;
        for (Row rest = remaining; rest != 0; rest &= rest - 1)
            dominated |= pref.dominated_by(alt(std::countr_zero(rest)));
        const Row top = remaining & ~dominated;
        std::vector<Alternative> tier;
        for (Row rest = top; rest != 0; rest &= rest - 1)
            tier.push_back(alt(std::countr_zero(rest)));
        out.tiers.push_back(std::move(tier));
        remaining &= ~top;
    }
    return out;
}

} // namespace majdyn
