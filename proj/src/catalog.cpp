#include "majdyn/catalog.hpp"

#include "majdyn/profile_io.hpp"

#include <sstream>
#include <stdexcept>

namespace majdyn {

namespace {

using Labels = std::vector<std::string>;
using N = ConsensusNotion;

struct Builder {
    Labels labels;
    std::vector<Preference> agents;

    // pairs: comma separated, e.g. "ac,bc"; copies: identical agents.
    Builder& agent(std::string_view pairs, int copies = 1)
    {
        const int m = static_cast<int>(labels.size());
        DominanceTable rel(m);
        for (Pair p : parse_pair_list(pairs, labels))
            rel.set(p.first, p.second);
        const Preference pref = Preference::from_relation(rel);
        for (int i = 0; i < copies; ++i)
            agents.push_back(pref);
        return *this;
    }

    Alternative operator()(std::string_view label) const { return lookup_label(labels, label); }
    ConsensusOutcome winner(std::string_view label) const { return ConsensusOutcome((*this)(label)); }

    Fixture build(std::string name, std::string summary, std::string_view prefix, std::vector<Claim> claims) const
    {
        const int m = static_cast<int>(labels.size());
        std::vector<Pair> pairs = parse_pair_list(prefix, labels);
        UpdateOrder order = complete_order(m, pairs);
        return {std::move(name), std::move(summary), labels, Profile(m, agents), std::move(pairs),
                std::move(order), std::move(claims)};
    }
};

Builder abc()
{
    return Builder{{"a", "b", "c"}, {}};
}

const ConsensusOutcome kNone = ConsensusOutcome::none();

std::string describe_claim(const Claim& c, const Labels& labels)
{
    std::ostringstream os;
    auto out = [&](ConsensusOutcome o) { return format_outcome(o, labels); };
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, claim::InitialConsensus>)
                os << "initial " << notion_name(v.notion) << " = " << out(v.outcome);
            else if constexpr (std::is_same_v<T, claim::FinalConsensus>)
                os << "final " << notion_name(v.notion) << " = " << out(v.outcome);
            else if constexpr (std::is_same_v<T, claim::InitialLoser>)
                os << "initial Condorcet loser = " << out(v.outcome);
            else if constexpr (std::is_same_v<T, claim::FinalUnanimousRanking>) {
                os << "every agent ends with";
                for (Alternative a : v.ranking)
                    os << ' ' << labels[static_cast<std::size_t>(index(a))];
            } else if constexpr (std::is_same_v<T, claim::StepSupports>) {
                os << "step supports";
                for (auto [f, s] : v.supports)
                    os << ' ' << f << '/' << s;
            } else if constexpr (std::is_same_v<T, claim::EveryOrderYields>)
                os << "every order yields " << notion_name(v.notion) << " = " << out(v.outcome);
            else if constexpr (std::is_same_v<T, claim::NoOrderPreservesExistence>)
                os << "no order preserves " << notion_name(v.notion) << " existence";
            else if constexpr (std::is_same_v<T, claim::ChoosableIncludes>) {
                os << notion_name(v.notion) << " choosable includes";
                for (Alternative a : members(v.alternatives))
                    os << ' ' << labels[static_cast<std::size_t>(index(a))];
            }
        },
        c);
    return os.str();
}

} // namespace

std::vector<Fixture> counterexample_catalog()
{
    std::vector<Fixture> out;

    {
        // Five organisers choosing a conferencing app.
        Builder b = abc();
        b.agent("ac", 2).agent("ba", 2).agent("");
        out.push_back(b.build("example1", "undecided organisers converge on b > a > c", "ab,bc,ac",
                              {claim::InitialConsensus{N::CW, kNone},
                               claim::StepSupports{{{0, 2}, {2, 0}, {2, 0}}},
                               claim::FinalUnanimousRanking{{b("b"), b("a"), b("c")}},
                               claim::FinalConsensus{N::CW, b.winner("b")}}));
    }
    {
        Builder b{{"a", "b", "c", "w"}, {}};
        b.agent("bc,wc,ca").agent("ab,ac,cw").agent("wa,ab,bc");
        out.push_back(b.build("prop2_cw_lost", "Condorcet winner w disappears with four alternatives", "bc,bw",
                              {claim::InitialConsensus{N::CW, b.winner("w")},
                               claim::FinalConsensus{N::CW, kNone}}));
    }
    {
        Builder b = abc();
        b.agent("ac,bc").agent("ab,cb").agent("ab,bc").agent("bc,ca").agent("cb,ba");
        out.push_back(b.build("prop3_plurud_majud", "plurality and majority undominated consensus a is lost",
                              "ba,ca",
                              {claim::InitialConsensus{N::PlurUD, b.winner("a")},
                               claim::InitialConsensus{N::MajUD, b.winner("a")},
                               claim::FinalConsensus{N::PlurUD, kNone}, claim::FinalConsensus{N::MajUD, kNone}}));
    }
    {
        Builder b = abc();
        b.agent("ab,bc", 2).agent("ba,ca", 2);
        out.push_back(b.build("prop3_plurdom", "plurality dominant consensus a is lost", "bc",
                              {claim::InitialConsensus{N::PlurDom, b.winner("a")},
                               claim::FinalConsensus{N::PlurDom, kNone}}));
    }
    {
        // The tie rule orients a 0-0 discussion towards the first alternative,
        // so the destroying agenda opens with (b, a).
        Builder b = abc();
        b.agent("cb", 2).agent("ac");
        out.push_back(b.build("prop3_unanud", "unanimity undominated consensus a is lost", "ba",
                              {claim::InitialConsensus{N::UnanUD, b.winner("a")},
                               claim::FinalConsensus{N::UnanUD, kNone}}));
    }
    {
        Builder b{{"w", "l", "a", "b", "x"}, {}};
        b.agent("la,xw,wb").agent("lb,xw,wa").agent("wa,ab,bx", 2).agent("wa,ab,bx,wl").agent("ab,bx,xl", 2);
        out.push_back(b.build("prop5_loser_wins", "Condorcet loser l becomes the Condorcet winner", "ax,bx,lw",
                              {claim::InitialConsensus{N::CW, b.winner("w")},
                               claim::InitialLoser{b.winner("l")},
                               claim::FinalConsensus{N::CW, b.winner("l")}}));
    }
    {
        Builder b{{"w", "l", "a", "b", "c", "x", "y", "z"}, {}};
        b.agent("la,xw,xb,xc").agent("lb,yw,ya,yc").agent("lc,zw,za,zb").agent("wa,ax,xb,by,yc,cz,zl", 2);
        out.push_back(b.build("prop6_plurdom_loser", "plurality dominant consensus moves from w to l", "ax,by,cz",
                              {claim::InitialConsensus{N::PlurDom, b.winner("w")},
                               claim::FinalConsensus{N::PlurDom, b.winner("l")}}));
    }
    {
        Builder b = abc();
        b.agent("ab,bc", 2).agent("ba,ca", 2);
        out.push_back(b.build("prop11_plurdom", "no agenda keeps a plurality dominant consensus", "bc",
                              {claim::InitialConsensus{N::PlurDom, b.winner("a")},
                               claim::NoOrderPreservesExistence{N::PlurDom}}));
    }
    {
        Builder b = abc();
        b.agent("cb,ba", 2).agent("ac,cb").agent("bc,ac", 2);
        out.push_back(b.build("prop11_plurud_majud", "no agenda keeps a plurality or majority undominated consensus",
                              "ab",
                              {claim::InitialConsensus{N::PlurUD, b.winner("a")},
                               claim::InitialConsensus{N::MajUD, b.winner("a")},
                               claim::NoOrderPreservesExistence{N::PlurUD},
                               claim::NoOrderPreservesExistence{N::MajUD}}));
    }
    {
        Builder b = abc();
        b.agent("ac,bc", 2).agent("ac");
        out.push_back(b.build("prop12_unanud_choice", "two unanimity undominated alternatives, chair picks either",
                              "ab",
                              {claim::InitialConsensus{N::UnanUD, kNone},
                               claim::FinalConsensus{N::UnanUD, b.winner("a")},
                               claim::ChoosableIncludes{N::UnanUD, bit(b("a")) | bit(b("b"))}}));
    }
    {
        Builder b = abc();
        b.agent("ba,ca").agent("ac,bc", 2);
        out.push_back(b.build("prop13_unandom", "every agenda generates the same dominant consensus b", "bc",
                              {claim::InitialConsensus{N::UnanDom, kNone},
                               claim::InitialConsensus{N::MajDom, kNone},
                               claim::InitialConsensus{N::PlurDom, kNone},
                               claim::InitialConsensus{N::MajUD, kNone},
                               claim::EveryOrderYields{N::UnanDom, b.winner("b")},
                               claim::EveryOrderYields{N::MajDom, b.winner("b")},
                               claim::EveryOrderYields{N::PlurDom, b.winner("b")},
                               claim::EveryOrderYields{N::MajUD, b.winner("b")}}));
    }
    {
        Builder b = abc();
        b.agent("ca,ab").agent("ba,ac").agent("ab,cb").agent("ab,bc");
        out.push_back(b.build("prop13_plurud", "every agenda generates plurality undominated consensus a", "ac",
                              {claim::InitialConsensus{N::PlurUD, kNone},
                               claim::EveryOrderYields{N::PlurUD, b.winner("a")}}));
    }
    return out;
}

Fixture find_fixture(std::string_view name)
{
    for (Fixture& f : counterexample_catalog())
        if (f.name == name)
            return std::move(f);
    throw std::out_of_range("no fixture named '" + std::string(name) + "'");
}

std::vector<ClaimCheck> verify_fixture(const Fixture& fixture, const UpdateOrder& order)
{
    const Profile& profile = fixture.profile;
    const RunResult run = md_run(profile, order, true);
    const auto initial = consensus_all(profile);
    const auto final_outcomes = consensus_all(run.profile);

    std::optional<std::array<ControlReport, kNumNotions>> control;
    auto exhaustive = [&](ConsensusNotion c) -> const ControlReport& {
        if (!control)
            control = control_search_all_exhaustive(profile);
        return (*control)[static_cast<std::size_t>(c)];
    };
    auto outcome = [&](ConsensusOutcome o) { return format_outcome(o, fixture.labels); };

    std::vector<ClaimCheck> checks;
    for (const Claim& c : fixture.claims) {
        ClaimCheck check{describe_claim(c, fixture.labels), false, {}};
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, claim::InitialConsensus>) {
                    const ConsensusOutcome got = initial[static_cast<std::size_t>(v.notion)];
                    check.passed = got == v.outcome;
                    check.observed = outcome(got);
                } else if constexpr (std::is_same_v<T, claim::FinalConsensus>) {
                    const ConsensusOutcome got = final_outcomes[static_cast<std::size_t>(v.notion)];
                    check.passed = got == v.outcome;
                    check.observed = outcome(got);
                } else if constexpr (std::is_same_v<T, claim::InitialLoser>) {
                    const ConsensusOutcome got = condorcet_loser(profile);
                    check.passed = got == v.outcome;
                    check.observed = outcome(got);
                } else if constexpr (std::is_same_v<T, claim::FinalUnanimousRanking>) {
                    const Preference expected = Preference::from_ranking(v.ranking);
                    check.passed = true;
                    for (const Preference& p : run.profile) {
                        check.passed = check.passed && p == expected;
                        check.observed += (check.observed.empty() ? "" : "; ") + format_preference(p, fixture.labels);
                    }
                } else if constexpr (std::is_same_v<T, claim::StepSupports>) {
                    check.passed = run.steps.size() >= v.supports.size();
                    for (std::size_t i = 0; i < run.steps.size(); ++i) {
                        const auto& s = run.steps[i];
                        if (i < v.supports.size())
                            check.passed = check.passed && s.support_first == v.supports[i].first &&
                                           s.support_second == v.supports[i].second;
                        check.observed += (i ? " " : "") + std::to_string(s.support_first) + "/" +
                                          std::to_string(s.support_second);
                    }
                } else if constexpr (std::is_same_v<T, claim::EveryOrderYields>) {
                    const ControlReport& r = exhaustive(v.notion);
                    check.passed = r.count(v.outcome) == r.orders_examined();
                    check.observed = std::to_string(r.count(v.outcome)) + " of " +
                                     std::to_string(r.orders_examined()) + " orders";
                } else if constexpr (std::is_same_v<T, claim::NoOrderPreservesExistence>) {
                    const ControlReport& r = exhaustive(v.notion);
                    check.passed = r.can_preserve_existence() == std::optional<bool>(false);
                    check.observed = std::to_string(r.orders_examined() - r.count(kNone)) + " of " +
                                     std::to_string(r.orders_examined()) + " orders keep a consensus";
                } else if constexpr (std::is_same_v<T, claim::ChoosableIncludes>) {
                    const Row got = exhaustive(v.notion).choosable();
                    check.passed = (got & v.alternatives) == v.alternatives;
                    for (Alternative a : members(got))
                        check.observed += fixture.labels[static_cast<std::size_t>(index(a))];
                }
            },
            c);
        checks.push_back(std::move(check));
    }
    return checks;
}

std::vector<ClaimCheck> verify_fixture(const Fixture& fixture)
{
    return verify_fixture(fixture, fixture.order);
}

} // namespace majdyn
