#pragma once

// Incomplete preferences as strict partial orders over a small alternative set.
//
// A relation over m alternatives is stored as m bitset rows: bit b of row a is
// set iff a is strictly preferred to b. All experiment sizes keep m <= 8, the
// representation supports up to kMaxAlternatives.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace majdyn {

inline constexpr int kMaxAlternatives = 16;

using Row = std::uint32_t;

enum class Alternative : std::uint8_t {};

constexpr Alternative alt(int i) { return static_cast<Alternative>(i); }
constexpr int index(Alternative a) { return static_cast<int>(a); }
constexpr Row bit(Alternative a) { return Row{1} << index(a); }
constexpr Row full_mask(int m) { return m >= 32 ? ~Row{0} : (Row{1} << m) - 1; }

// Members of a bitset of alternatives, ascending.
std::vector<Alternative> members(Row set);

// Ordered pair (first, second), read as "first over second".
struct Pair {
    Alternative first{};
    Alternative second{};

    constexpr Pair reversed() const { return {second, first}; }
    friend constexpr bool operator==(Pair, Pair) = default;
};

class SameAlternative : public std::invalid_argument {
public:
    explicit SameAlternative(Alternative a);
};

class ClosureCreatesCycle : public std::runtime_error {
public:
    ClosureCreatesCycle(Alternative a, Alternative b);
    Alternative a() const { return a_; }
    Alternative b() const { return b_; }

private:
    Alternative a_;
    Alternative b_;
};

// A raw dominance table: no axioms are enforced.
class DominanceTable {
public:
    explicit DominanceTable(int m);
    DominanceTable(int m, std::initializer_list<Pair> pairs);

    int size() const { return m_; }
    bool get(Alternative a, Alternative b) const { return (rows_[index(a)] & bit(b)) != 0; }
    void set(Alternative a, Alternative b, bool value = true);
    Row row(Alternative a) const { return rows_[index(a)]; }
    void set_row(Alternative a, Row r) { rows_[index(a)] = r & full_mask(m_); }
    std::span<const Row> rows() const { return {rows_.data(), static_cast<std::size_t>(m_)}; }
    int count() const;
    std::vector<Pair> pairs() const;

    friend bool operator==(const DominanceTable&, const DominanceTable&) = default;

private:
    std::uint8_t m_;
    std::array<Row, kMaxAlternatives> rows_{};
};

// Smallest transitive superset of rel. Throws ClosureCreatesCycle when the
// closure would put some pair in both orientations, std::invalid_argument when
// rel is reflexive somewhere.
DominanceTable transitive_closure(const DominanceTable& rel);

enum class Axiom { Irreflexivity, Asymmetry, Transitivity };

struct Violation {
    Axiom axiom;
    std::vector<Alternative> witness;

    std::string describe() const;
};

// nullopt when rel is a strict partial order.
std::optional<Violation> validate_preference(const DominanceTable& rel);

// One agent's preference. Always a valid, transitively closed relation.
class Preference {
public:
    explicit Preference(int m) : table_(m) {}

    // Closes rel and validates it; throws on any inconsistency.
    static Preference from_relation(const DominanceTable& rel);
    // Complete strict order, best first.
    static Preference from_ranking(std::span<const Alternative> ranking);
    static Preference from_ranking(std::initializer_list<int> ranking);

    int size() const { return table_.size(); }
    const DominanceTable& table() const { return table_; }

    bool prefers(Alternative a, Alternative b) const { return table_.get(a, b); }
    bool compares(Alternative a, Alternative b) const { return prefers(a, b) || prefers(b, a); }
    Row dominated_by(Alternative a) const { return table_.row(a); }
    // Mask of alternatives preferred to a.
    Row dominators_of(Alternative a) const;
    Row undominated() const;
    std::optional<Alternative> dominant() const;
    int compared_pairs() const { return table_.count(); }
    bool is_complete() const;

    // Inserts first > second and closes. The pair must not be compared yet.
    Preference with_pair(Pair p) const;

    friend bool operator==(const Preference&, const Preference&) = default;

private:
    explicit Preference(const DominanceTable& closed) : table_(closed) {}
    friend void insert_closed(Preference& pref, Pair p);

    DominanceTable table_;
};

// In-place Preference::with_pair without its checks; p must not be compared yet.
void insert_closed(Preference& pref, Pair p);

// Ordered partition into tiers; earlier tiers dominate later ones.
struct TierPartition {
    std::vector<std::vector<Alternative>> tiers;

    Preference to_preference(int m) const;
    friend bool operator==(const TierPartition&, const TierPartition&) = default;
};

// nullopt when pref is not a strict weak ordering (incomparability is not transitive).
std::optional<TierPartition> tier_partition(const Preference& pref);

} // namespace majdyn
