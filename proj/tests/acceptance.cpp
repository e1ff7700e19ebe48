// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [--jobs N]

#include "oracle.hpp"

#include "majdyn/catalog.hpp"
#include "majdyn/gen.hpp"
#include "majdyn/harness.hpp"
#include "majdyn/profile_io.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>

using namespace majdyn;
using N = ConsensusNotion;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed = false;
    std::string detail;
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Profile profile_of(int m, const std::vector<std::string>& agents)
{
    const auto labels = default_labels(m);
    std::vector<Preference> prefs;
    for (const std::string& a : agents) {
        DominanceTable t(m);
        for (Pair p : parse_pair_list(a, labels))
            t.set(p.first, p.second);
        prefs.push_back(Preference::from_relation(t));
    }
    return Profile(m, std::move(prefs));
}

// Every three-agent profile over three alternatives, optionally only weak orderings.
std::vector<Profile> three_agent_profiles(bool weak_only)
{
    std::vector<Preference> prefs;
    for (const oracle::Rel& r : oracle::all_partial_orders(3))
        if (!weak_only || oracle::is_weak_ordering(3, r))
            prefs.push_back(oracle::to_preference(3, r));
    std::vector<Profile> out;
    for (const Preference& x : prefs)
        for (const Preference& y : prefs)
            for (const Preference& z : prefs)
                out.emplace_back(3, std::vector<Preference>{x, y, z});
    return out;
}

// Final outcomes of every notion under every order, indexed [order][notion].
std::vector<std::array<ConsensusOutcome, kNumNotions>> all_final_outcomes(const Profile& p,
                                                                         const std::vector<UpdateOrder>& orders)
{
    std::vector<std::array<ConsensusOutcome, kNumNotions>> out;
    out.reserve(orders.size());
    for (const UpdateOrder& o : orders)
        out.push_back(consensus_all(md_run(p, o).profile));
    return out;
}

std::size_t at(N c)
{
    return static_cast<std::size_t>(c);
}

Outcome example_trace()
{
    const Profile p = profile_of(3, {"ac", "ac", "ba", "ba", ""});
    const UpdateOrder order(3, {{Alternative{0}, Alternative{1}}, {Alternative{1}, Alternative{2}},
                                {Alternative{0}, Alternative{2}}});
    const auto start = Clock::now();
    const RunResult r = md_run(p, order, true);
    const double elapsed = seconds_since(start);
    const std::vector<std::pair<int, int>> expected{{0, 2}, {2, 0}, {2, 0}};
    bool ok = r.steps.size() == 3;
    for (std::size_t k = 0; ok && k < 3; ++k)
        ok = r.steps[k].support_first == expected[k].first && r.steps[k].support_second == expected[k].second;
    ok = ok && r.profile == Profile::replicate(Preference::from_ranking({1, 0, 2}), 5);
    ok = ok && elapsed < 1e-3;
    return {ok, fmt("supports 0/2, 2/0, 2/0 and five copies of b > a > c; %.1f us", elapsed * 1e6)};
}

Outcome fixtures()
{
    const auto start = Clock::now();
    int claims = 0;
    int failed = 0;
    Rng rng(2024);
    for (const Fixture& f : counterexample_catalog()) {
        for (const ClaimCheck& c : verify_fixture(f)) {
            ++claims;
            if (!c.passed) {
                ++failed;
                std::cerr << "  " << f.name << ": " << c.description << " observed " << c.observed << '\n';
            }
        }
        const UpdateOrder other = random_completion(f.profile.m(), f.order_prefix, rng);
        for (const ClaimCheck& c : verify_fixture(f, other)) {
            ++claims;
            if (!c.passed) {
                ++failed;
                std::cerr << "  " << f.name << " (random completion): " << c.description << '\n';
            }
        }
    }
    const double elapsed = seconds_since(start);
    return {failed == 0 && elapsed < 1.0,
            fmt("%d claims checked (stored and random completions), %d failed; %.3f s", claims, failed, elapsed)};
}

struct SweepThree {
    long profiles = 0;
    long cw_initial = 0;
    long cw_existence_violations = 0;
    long cw_identity_changes = 0;
    long dom_initial = 0;
    long dom_violations = 0;
    double seconds = 0;
};

SweepThree sweep_all_three(const std::vector<UpdateOrder>& orders)
{
    const auto start = Clock::now();
    SweepThree s;
    for (const Profile& p : three_agent_profiles(false)) {
        ++s.profiles;
        const auto initial = consensus_all(p);
        const auto finals = all_final_outcomes(p, orders);
        if (initial[at(N::CW)].has_winner()) {
            ++s.cw_initial;
            for (const auto& f : finals) {
                s.cw_existence_violations += f[at(N::CW)].has_winner() ? 0 : 1;
                s.cw_identity_changes += (f[at(N::CW)].has_winner() && f[at(N::CW)] != initial[at(N::CW)]) ? 1 : 0;
            }
        }
        for (N c : {N::UnanDom, N::MajDom}) {
            if (!initial[at(c)].has_winner())
                continue;
            ++s.dom_initial;
            for (const auto& f : finals)
                s.dom_violations += f[at(c)] == initial[at(c)] ? 0 : 1;
        }
    }
    s.seconds = seconds_since(start);
    return s;
}

Outcome weak_orderings(const std::vector<UpdateOrder>& orders)
{
    long profiles = 0, with = 0, violations = 0;
    for (const Profile& p : three_agent_profiles(true)) {
        ++profiles;
        const auto initial = consensus_all(p);
        const auto finals = all_final_outcomes(p, orders);
        for (N c : {N::CW, N::UnanUD}) {
            if (!initial[at(c)].has_winner())
                continue;
            ++with;
            for (const auto& f : finals)
                violations += f[at(c)] == initial[at(c)] ? 0 : 1;
        }
    }
    return {profiles == 2197 && violations == 0,
            fmt("%ld profiles x %zu orders, %ld (profile, notion) cases with consensus, %ld violations", profiles,
                orders.size(), with, violations)};
}

Outcome negative_control(const std::vector<UpdateOrder>& orders)
{
    long without = 0, violations = 0;
    for (const Profile& p : three_agent_profiles(false)) {
        const auto initial = consensus_all(p);
        const auto finals = all_final_outcomes(p, orders);
        for (N c : {N::CW, N::UnanUD}) {
            if (initial[at(c)].has_winner())
                continue;
            ++without;
            bool some_none = false;
            bool two_outcomes = false;
            for (const auto& f : finals) {
                some_none = some_none || !f[at(c)].has_winner();
                two_outcomes = two_outcomes || f[at(c)] != finals.front()[at(c)];
            }
            violations += (some_none || two_outcomes) ? 0 : 1;
        }
    }
    return {violations == 0, fmt("%ld (profile, notion) cases without consensus, %ld lack negative control", without,
                                 violations)};
}

Outcome dominated_never_dominant()
{
    const auto start = Clock::now();
    Rng rng(7);
    const int ns[] = {3, 5, 7};
    long violations = 0, dominated_cases = 0;
    for (int i = 0; i < 100000; ++i) {
        const int n = ns[rng.below(3)];
        const int m = 3 + static_cast<int>(rng.below(3));
        const Profile p = random_profile(GenKind::UniformPartialOrder, n, m, rng);
        const Profile final_profile = md_run(p, random_order(m, rng)).profile;
        const std::pair<Threshold, N> checks[] = {{Threshold::All, N::UnanDom}, {Threshold::Majority, N::MajDom}};
        for (auto [threshold, notion] : checks) {
            const Row dominated = dominated_by_all(p, threshold);
            dominated_cases += std::popcount(dominated);
            const ConsensusOutcome f = consensus(notion, final_profile);
            if (f.has_winner() && (dominated & bit(f.winner())))
                ++violations;
        }
    }
    const double elapsed = seconds_since(start);
    return {violations == 0 && elapsed < 60,
            fmt("100000 profiles, %ld dominated alternatives, %ld violations; %.1f s", dominated_cases, violations,
                elapsed)};
}

Outcome dynamics_invariants()
{
    Rng rng(11);
    long violations = 0;
    for (int i = 0; i < 10000; ++i) {
        // Above six alternatives rejection sampling dominates the run time.
        const int m = 2 + static_cast<int>(rng.below(5));
        const int n = 1 + static_cast<int>(rng.below(11));
        const Profile p = random_profile(GenKind::UniformPartialOrder, n, m, rng);
        const UpdateOrder o = random_order(m, rng);
        const Profile once = md_run(p, o).profile;
        bool ok = completeness_level(once) == 1.0;
        for (const Preference& pref : once)
            ok = ok && !validate_preference(pref.table()).has_value();
        ok = ok && md_run(once, o).profile == once;
        violations += ok ? 0 : 1;
    }
    return {violations == 0, fmt("10000 runs, %ld violations of completeness, validity or idempotence", violations)};
}

Outcome generator_uniformity()
{
    const int draws = 200000;
    auto worst = [&](GenKind kind, std::uint64_t seed, std::size_t classes) {
        Rng rng(seed);
        std::map<oracle::Rel, int> counts;
        for (int i = 0; i < draws; ++i)
            ++counts[oracle::from(random_preference(kind, 3, rng))];
        double dev = counts.size() == classes ? 0.0 : 1.0;
        for (const auto& [r, k] : counts)
            dev = std::max(dev, std::abs(static_cast<double>(k) / draws - 1.0 / static_cast<double>(classes)));
        return dev;
    };
    const double partial = worst(GenKind::UniformPartialOrder, 19, 19);
    const double weak = worst(GenKind::UniformWeakOrdering, 13, 13);
    return {partial <= 0.01 && weak <= 0.01,
            fmt("max deviation %.5f over 19 posets, %.5f over 13 weak orderings (limit 0.01)", partial, weak)};
}

double spearman(const std::vector<double>& x, const std::vector<double>& y)
{
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]])
                ++j;
            for (std::size_t k = i; k <= j; ++k)
                r[idx[k]] = (static_cast<double>(i + j) / 2.0) + 1.0;
            i = j + 1;
        }
        return r;
    };
    const auto rx = ranks(x), ry = ranks(y);
    const double k = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += rx[i] / k;
        my += ry[i] / k;
    }
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

const FrequencyRow* find_row(const Dataset& d, N notion, int cell, std::string_view label)
{
    for (const FrequencyRow& r : d.rows)
        if (r.notion == notion && r.cell == cell && r.label == label)
            return &r;
    return nullptr;
}

Outcome effects_by_agents()
{
    ExperimentConfig c = default_config(Experiment::Effects);
    c.agent_counts = parse_agent_counts("3..25:2");
    c.samples = 50000;
    c.seed = 1;
    c.jobs = 1;
    const auto start = Clock::now();
    const Dataset d = experiment_effects(c);
    const double elapsed = seconds_since(start);

    double min_cw = 1, min_plur = 1;
    std::string short_cells;
    std::vector<double> ns, gen;
    bool rows_ok = true;
    for (int n : c.agent_counts) {
        const FrequencyRow* cw = find_row(d, N::CW, n, "preserved_existence");
        const FrequencyRow* pl = find_row(d, N::PlurUD, n, "preserved_existence");
        const FrequencyRow* mg = find_row(d, N::MajUD, n, "generated");
        if (!cw || !pl || !mg || !cw->frequency() || !pl->frequency() || !mg->frequency()) {
            rows_ok = false;
            continue;
        }
        min_cw = std::min(min_cw, *cw->frequency());
        min_plur = std::min(min_plur, *pl->frequency());
        for (const FrequencyRow* r : {cw, pl})
            if (*r->frequency() < 0.9)
                short_cells += fmt(" %s@n=%d:%.4f", std::string(notion_name(r->notion)).c_str(), n, *r->frequency());
        ns.push_back(n);
        gen.push_back(*mg->frequency());
    }
    const double rho = rows_ok ? spearman(ns, gen) : 0.0;
    const bool ok = rows_ok && min_cw >= 0.9 && min_plur >= 0.9 && rho <= -0.8 && elapsed < 15 * 60;
    return {ok, fmt("min preserved existence CW %.4f, PlurUD %.4f (>= 0.9); MajUD generation %.3f at n=3 to %.3f at "
                    "n=25, Spearman rho %.3f (<= -0.8); %.1f s single-threaded",
                    min_cw, min_plur, gen.empty() ? 0.0 : gen.front(), gen.empty() ? 0.0 : gen.back(), rho,
                    elapsed) +
                    (short_cells.empty() ? "" : "; below 0.9:" + short_cells)};
}

Outcome control_frequencies(int jobs)
{
    ExperimentConfig c = default_config(Experiment::Control);
    c.samples = 500;
    c.seed = 1;
    c.jobs = jobs;
    const auto start = Clock::now();
    const ControlRun run = experiment_control(c);
    const double elapsed = seconds_since(start);
    const Dataset& d = run.dataset;

    const FrequencyRow* unan = find_row(d, N::UnanDom, 0, "lose_existence");
    const FrequencyRow* maj = find_row(d, N::MajDom, 0, "lose_existence");
    const FrequencyRow* prevent = find_row(d, N::CW, 0, "prevent_generation");
    const FrequencyRow* generate = find_row(d, N::CW, 0, "generate");
    if (!unan || !maj || !prevent || !generate)
        return {false, "missing rows"};

    long inconsistent = 0;
    for (const ProfileControl& pc : run.profiles)
        for (std::size_t k = 0; k < kNumNotions; ++k)
            inconsistent += effect_consistent(pc.fixed_order_effects[k], pc.reports[k]) ? 0 : 1;

    const auto freq = [](const FrequencyRow* r) { return r->frequency().value_or(-1.0); };
    const bool ok = unan->numerator == 0 && maj->numerator == 0 && prevent->frequency() && generate->frequency() &&
                    freq(prevent) < freq(generate) && d.consistency_violations == 0 && inconsistent == 0 &&
                    run.profiles.size() == 500;
    return {ok, fmt("lose_existence UnanDom %llu/%llu, MajDom %llu/%llu; CW prevent_generation %.4f < generate %.4f; "
                    "%ld inconsistent profiles; %.1f s with %d worker(s)",
                    static_cast<unsigned long long>(unan->numerator), static_cast<unsigned long long>(unan->denominator),
                    static_cast<unsigned long long>(maj->numerator), static_cast<unsigned long long>(maj->denominator),
                    freq(prevent), freq(generate), inconsistent, elapsed, jobs)};
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome byte_identical(int jobs)
{
    const auto dir = std::filesystem::temp_directory_path() / ("majdyn_acceptance_" + std::to_string(Clock::now().time_since_epoch().count()));
    std::filesystem::create_directories(dir);
    int compared = 0, differing = 0;
    for (Experiment e : {Experiment::Effects, Experiment::Completeness, Experiment::Control}) {
        ExperimentConfig c = default_config(e);
        c.seed = 99;
        c.samples = e == Experiment::Control ? 30 : 4000;
        if (e == Experiment::Effects)
            c.agent_counts = parse_agent_counts("1..9:2");
        std::vector<std::string> outputs;
        for (int j : {1, 1, 2, std::max(3, jobs)}) {
            c.jobs = j;
            const auto path = dir / (std::string(experiment_name(e)) + "_" + std::to_string(outputs.size()) + ".csv");
            write_dataset(run_experiment(c), path);
            outputs.push_back(read_file(path) + read_file(path.string() + ".meta.json"));
        }
        for (const std::string& o : outputs) {
            ++compared;
            differing += o == outputs.front() ? 0 : 1;
        }
    }
    std::filesystem::remove_all(dir);
    return {differing == 0, fmt("%d CSV and metadata files over three experiments and 1 to %d workers, %d differ",
                                compared, std::max(3, jobs), differing)};
}

} // namespace

int main(int argc, char** argv)
{
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--jobs")
            jobs = std::max(1, std::atoi(argv[i + 1]));

    int failures = 0;
    auto report = [&](std::string_view name, const std::function<Outcome()>& check) {
        const auto start = Clock::now();
        const Outcome o = check();
        failures += o.passed ? 0 : 1;
        std::cout << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << fmt("%.1f", seconds_since(start))
                  << " s]" << std::endl;
    };

    std::vector<UpdateOrder> orders;
    for (UpdateOrder o : enumerate_update_orders(3))
        orders.push_back(o);

    report("example trace", example_trace);
    report("counterexample catalog", fixtures);

    SweepThree sweep;
    report("Condorcet existence kept for three alternatives", [&] {
        sweep = sweep_all_three(orders);
        return Outcome{sweep.profiles == 6859 && sweep.cw_existence_violations == 0 && sweep.cw_identity_changes > 0 &&
                           sweep.seconds < 120,
                       fmt("%ld profiles x %zu orders, %ld with a Condorcet winner, %ld violations, %ld identity "
                           "changes; %.1f s",
                           sweep.profiles, orders.size(), sweep.cw_initial, sweep.cw_existence_violations,
                           sweep.cw_identity_changes, sweep.seconds)};
    });
    report("dominant consensus identity kept", [&] {
        return Outcome{sweep.profiles == 6859 && sweep.dom_initial > 0 && sweep.dom_violations == 0,
                       fmt("%ld (profile, notion) cases with UnanDom or MajDom consensus, %ld violations",
                           sweep.dom_initial, sweep.dom_violations)};
    });
    report("weak orderings keep Condorcet and unanimity undominated identity", [&] { return weak_orderings(orders); });
    report("negative control for Condorcet and unanimity undominated", [&] { return negative_control(orders); });
    report("dominated alternatives never become dominant", dominated_never_dominant);
    report("dynamics invariants", dynamics_invariants);
    report("generator uniformity", generator_uniformity);
    report("effects by number of agents", effects_by_agents);
    report("control frequencies", [&] { return control_frequencies(jobs); });
    report("byte-identical output across worker counts", [&] { return byte_identical(jobs); });

    std::cout << (failures == 0 ? "all criteria passed" : fmt("%d criteria failed", failures)) << std::endl;
    return failures == 0 ? 0 : 1;
}
