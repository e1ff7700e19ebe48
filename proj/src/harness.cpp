#include "majdyn/harness.hpp"

#include "majdyn/parallel.hpp"
#include "majdyn/profile_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace majdyn {

namespace {

constexpr std::uint64_t kProfilesPerTask = 512;
constexpr std::uint64_t kOrdersPerTask = 4096;
// Stream offset for random update orders, kept apart from profile streams.
constexpr std::uint64_t kOrderStream = 1ULL << 32;
constexpr int kBins = 21;

constexpr std::size_t kEffects = 5;
using EffectCounts = std::array<std::array<std::uint64_t, kEffects>, kNumNotions>;

std::size_t at(Effect e)
{
    return static_cast<std::size_t>(e);
}

std::size_t at(ConsensusNotion c)
{
    return static_cast<std::size_t>(c);
}

Profile sample_profile(const ExperimentConfig& config, int n, std::uint64_t i)
{
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(n), i));
    return random_profile(config.generator, n, config.m, rng);
}

// Runs the fixed order on a copy of the profile and classifies every notion.
std::array<EffectRecord, kNumNotions> fixed_effects(const Profile& profile, std::span<const Pair> order,
                                                    std::vector<Preference>& scratch)
{
    scratch.assign(profile.begin(), profile.end());
    md_run_in_place(scratch, order);
    const auto initial = consensus_all(profile);
    const auto final_outcomes = consensus_all(profile.m(), scratch);
    std::array<EffectRecord, kNumNotions> out;
    for (std::size_t i = 0; i < kNumNotions; ++i)
        out[i] = {kAllNotions[i], initial[i], final_outcomes[i], classify(initial[i], final_outcomes[i])};
    return out;
}

void add_counts(EffectCounts& into, const EffectCounts& from)
{
    for (std::size_t c = 0; c < kNumNotions; ++c)
        for (std::size_t e = 0; e < kEffects; ++e)
            into[c][e] += from[c][e];
}

void emit_effect_rows(std::vector<FrequencyRow>& rows, ConsensusNotion notion, int cell, std::uint64_t cell_samples,
                      const std::array<std::uint64_t, kEffects>& k)
{
    const std::uint64_t with = k[at(Effect::PreservedIdentity)] + k[at(Effect::PreservedExistenceOnly)] +
                               k[at(Effect::Lost)];
    const std::uint64_t without = k[at(Effect::Generated)] + k[at(Effect::AbsencePreserved)];
    const std::array<std::uint64_t, 5> numerators{
        k[at(Effect::PreservedIdentity)] + k[at(Effect::PreservedExistenceOnly)], k[at(Effect::PreservedIdentity)],
        k[at(Effect::Lost)], k[at(Effect::Generated)], k[at(Effect::AbsencePreserved)]};
    const std::array<std::uint64_t, 5> denominators{with, with, with, without, without};
    for (std::size_t i = 0; i < kEffectLabels.size(); ++i)
        rows.push_back({notion, cell, cell_samples, kEffectLabels[i], numerators[i], denominators[i]});
}

std::string format_frequency(const FrequencyRow& row)
{
    const auto f = row.frequency();
    if (!f)
        return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *f);
    return buf;
}

std::uint64_t parse_count(std::string_view text, std::string_view what)
{
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size())
        throw std::invalid_argument("cannot read " + std::string(what) + " from '" + std::string(text) + "'");
    return v;
}

} // namespace

std::string_view experiment_name(Experiment e)
{
    switch (e) {
    case Experiment::Effects: return "effects";
    case Experiment::Completeness: return "completeness";
    case Experiment::Control: return "control";
    }
    return "?";
}

std::string OrderPolicy::describe() const
{
    switch (kind) {
    case Kind::Lexicographic: return "lexicographic";
    case Kind::Custom: return "custom:" + custom;
    case Kind::Exhaustive: return "exhaustive";
    case Kind::Sampled: return "sampled:" + std::to_string(sample_count);
    }
    return "?";
}

OrderPolicy parse_order_policy(std::string_view text)
{
    OrderPolicy p;
    if (text == "lexicographic")
        return p;
    if (text == "exhaustive") {
        p.kind = OrderPolicy::Kind::Exhaustive;
        return p;
    }
    if (text.rfind("custom:", 0) == 0) {
        p.kind = OrderPolicy::Kind::Custom;
        p.custom = std::string(text.substr(7));
        return p;
    }
    if (text.rfind("sampled:", 0) == 0) {
        p.kind = OrderPolicy::Kind::Sampled;
        p.sample_count = parse_count(text.substr(8), "sample count");
        if (p.sample_count == 0)
            throw std::invalid_argument("sampled order policy needs at least one order");
        return p;
    }
    throw std::invalid_argument("unknown order policy '" + std::string(text) +
                                "' (lexicographic, custom:<pairs>, exhaustive, sampled:<K>)");
}

std::vector<int> parse_agent_counts(std::string_view text)
{
    std::vector<int> out;
    auto to_int = [](std::string_view t) {
        const std::uint64_t v = parse_count(t, "agent count");
        if (v == 0 || v > 100'000)
            throw std::invalid_argument("agent count out of range: " + std::string(t));
        return static_cast<int>(v);
    };
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        std::string_view rest = text.substr(dots + 2);
        int step = 1;
        if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
            step = to_int(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        const int lo = to_int(text.substr(0, dots));
        const int hi = to_int(rest);
        if (lo > hi)
            throw std::invalid_argument("empty agent range " + std::string(text));
        for (int n = lo; n <= hi; n += step)
            out.push_back(n);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = std::min(text.find(',', start), text.size());
        out.push_back(to_int(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

std::vector<ConsensusNotion> parse_notion_list(std::string_view text)
{
    if (text == "all")
        return {kAllNotions.begin(), kAllNotions.end()};
    std::vector<ConsensusNotion> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = std::min(text.find(',', start), text.size());
        const ConsensusNotion c = parse_notion(text.substr(start, end - start));
        if (std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
        start = end + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExperimentConfig default_config(Experiment e)
{
    ExperimentConfig c;
    c.experiment = e;
    switch (e) {
    case Experiment::Effects:
        for (int n = 1; n <= 25; n += 2)
            c.agent_counts.push_back(n);
        c.m = 5;
        c.samples = 50'000;
        break;
    case Experiment::Completeness:
        c.agent_counts = {15};
        c.m = 5;
        c.samples = 50'000;
        break;
    case Experiment::Control:
        c.agent_counts = {11};
        c.m = 4;
        c.samples = 500;
        c.order_policy.kind = OrderPolicy::Kind::Exhaustive;
        break;
    }
    return c;
}

void validate_config(const ExperimentConfig& c)
{
    if (c.m < 3 || c.m > kMaxAlternatives)
        throw std::invalid_argument("experiments need 3 <= m <= " + std::to_string(kMaxAlternatives) +
                                    ", got " + std::to_string(c.m));
    if (c.samples < 1)
        throw std::invalid_argument("samples must be at least 1");
    if (c.agent_counts.empty())
        throw std::invalid_argument("no agent counts given");
    for (int n : c.agent_counts)
        if (n < 1)
            throw std::invalid_argument("agent counts must be positive");
    if (c.notions.empty())
        throw std::invalid_argument("no consensus notions selected");
    if (c.experiment != Experiment::Effects && c.agent_counts.size() != 1)
        throw std::invalid_argument(std::string(experiment_name(c.experiment)) + " takes exactly one agent count");

    using K = OrderPolicy::Kind;
    const K kind = c.order_policy.kind;
    if (c.experiment == Experiment::Control) {
        if (kind != K::Exhaustive && kind != K::Sampled)
            throw std::invalid_argument("control needs order policy exhaustive or sampled:<K>");
        if (kind == K::Exhaustive && c.m > 6)
            throw std::invalid_argument("exhaustive enumeration supports m <= 6; use sampled:<K>");
    } else if (kind != K::Lexicographic && kind != K::Custom) {
        throw std::invalid_argument(std::string(experiment_name(c.experiment)) +
                                    " uses one fixed order: lexicographic or custom:<pairs>");
    }
    if (kind == K::Custom)
        fixed_order(c);
}

UpdateOrder fixed_order(const ExperimentConfig& config)
{
    if (config.order_policy.kind != OrderPolicy::Kind::Custom)
        return lexicographic_order(config.m);
    const auto labels = default_labels(config.m);
    const auto prefix = parse_pair_list(config.order_policy.custom, labels);
    return complete_order(config.m, prefix);
}

std::optional<double> FrequencyRow::frequency() const
{
    if (denominator == 0)
        return std::nullopt;
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

int completeness_bin(std::uint64_t compared, std::uint64_t total)
{
    if (total == 0 || compared > total)
        throw std::invalid_argument("completeness_bin: need 0 <= compared <= total, total > 0");
    return static_cast<int>((40 * compared + total) / (2 * total)) * 5;
}

Dataset experiment_effects(const ExperimentConfig& config)
{
    if (config.experiment != Experiment::Effects)
        throw std::invalid_argument("experiment_effects needs an effects configuration");
    validate_config(config);
    const UpdateOrder order = fixed_order(config);
    const std::uint64_t tasks_per_cell = (config.samples + kProfilesPerTask - 1) / kProfilesPerTask;
    const std::size_t cells = config.agent_counts.size();

    std::vector<EffectCounts> partial(cells * tasks_per_cell, EffectCounts{});
    parallel_for(partial.size(), config.jobs, [&](std::size_t t) {
        const int n = config.agent_counts[t / tasks_per_cell];
        const std::uint64_t first = (t % tasks_per_cell) * kProfilesPerTask;
        const std::uint64_t last = std::min(config.samples, first + kProfilesPerTask);
        std::vector<Preference> scratch;
        EffectCounts& counts = partial[t];
        for (std::uint64_t i = first; i < last; ++i) {
            const auto effects = fixed_effects(sample_profile(config, n, i), order.pairs(), scratch);
            for (std::size_t c = 0; c < kNumNotions; ++c)
                ++counts[c][at(effects[c].effect)];
        }
    });

    Dataset out{config, {}, {}, 0};
    std::vector<EffectCounts> per_cell(cells, EffectCounts{});
    for (std::size_t t = 0; t < partial.size(); ++t)
        add_counts(per_cell[t / tasks_per_cell], partial[t]);
    for (ConsensusNotion notion : config.notions)
        for (std::size_t cell = 0; cell < cells; ++cell)
            emit_effect_rows(out.rows, notion, config.agent_counts[cell], config.samples, per_cell[cell][at(notion)]);
    for (int n : config.agent_counts)
        if (n == 1)
            out.degenerate_cells.push_back(n);
    return out;
}

Dataset experiment_completeness(const ExperimentConfig& config)
{
    if (config.experiment != Experiment::Completeness)
        throw std::invalid_argument("experiment_completeness needs a completeness configuration");
    validate_config(config);
    const UpdateOrder order = fixed_order(config);
    const int n = config.agent_counts.front();
    const std::uint64_t total = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(pair_count(config.m));
    const std::uint64_t tasks = (config.samples + kProfilesPerTask - 1) / kProfilesPerTask;

    struct Partial {
        std::array<EffectCounts, kBins> counts{};
        std::array<std::uint64_t, kBins> population{};
    };
    std::vector<Partial> partial(tasks);
    parallel_for(tasks, config.jobs, [&](std::size_t t) {
        const std::uint64_t first = t * kProfilesPerTask;
        const std::uint64_t last = std::min(config.samples, first + kProfilesPerTask);
        std::vector<Preference> scratch;
        Partial& p = partial[t];
        for (std::uint64_t i = first; i < last; ++i) {
            const Profile profile = sample_profile(config, n, i);
            std::uint64_t compared = 0;
            for (const Preference& pref : profile)
                compared += static_cast<std::uint64_t>(pref.compared_pairs());
            const auto bin = static_cast<std::size_t>(completeness_bin(compared, total) / 5);
            ++p.population[bin];
            const auto effects = fixed_effects(profile, order.pairs(), scratch);
            for (std::size_t c = 0; c < kNumNotions; ++c)
                ++p.counts[bin][c][at(effects[c].effect)];
        }
    });

    Partial sum;
    for (const Partial& p : partial)
        for (std::size_t b = 0; b < kBins; ++b) {
            add_counts(sum.counts[b], p.counts[b]);
            sum.population[b] += p.population[b];
        }
    Dataset out{config, {}, {}, 0};
    for (ConsensusNotion notion : config.notions)
        for (std::size_t b = 0; b < kBins; ++b)
            emit_effect_rows(out.rows, notion, static_cast<int>(b) * 5, sum.population[b], sum.counts[b][at(notion)]);
    if (n == 1)
        out.degenerate_cells.push_back(n);
    return out;
}

bool effect_consistent(const EffectRecord& effect, const ControlReport& report)
{
    if (report.count(effect.final_outcome) == 0)
        return false;
    switch (effect.effect) {
    case Effect::PreservedIdentity: return report.can_preserve_identity() == true;
    case Effect::PreservedExistenceOnly:
        return report.can_preserve_existence() == true && report.can_change_identity() == true;
    case Effect::Lost: return report.can_lose() == true && report.can_change_identity() == true;
    case Effect::Generated: return report.can_generate() == true;
    case Effect::AbsencePreserved: return report.can_prevent_generation() == true;
    }
    return false;
}

ControlRun experiment_control(const ExperimentConfig& config)
{
    if (config.experiment != Experiment::Control)
        throw std::invalid_argument("experiment_control needs a control configuration");
    validate_config(config);
    const int n = config.agent_counts.front();
    const UpdateOrder order = fixed_order(config);
    const std::size_t profiles = config.samples;

    std::vector<Profile> sampled;
    sampled.reserve(profiles);
    for (std::uint64_t i = 0; i < profiles; ++i)
        sampled.push_back(sample_profile(config, n, i));

    using Reports = std::array<ControlReport, kNumNotions>;
    std::vector<std::optional<Reports>> partial;
    std::uint64_t chunks = 1;
    if (config.order_policy.kind == OrderPolicy::Kind::Exhaustive) {
        const UpdateOrderSpace space(config.m);
        chunks = (space.size() + kOrdersPerTask - 1) / kOrdersPerTask;
        partial.resize(profiles * chunks);
        parallel_for(partial.size(), config.jobs, [&](std::size_t t) {
            const std::uint64_t first = (t % chunks) * kOrdersPerTask;
            partial[t] = control_search_all(sampled[t / chunks], space, first,
                                            std::min(space.size(), first + kOrdersPerTask));
        });
    } else {
        partial.resize(profiles);
        parallel_for(profiles, config.jobs, [&](std::size_t p) {
            const Profile& profile = sampled[p];
            Rng rng(derive_seed(config.seed, kOrderStream + static_cast<std::uint64_t>(n), p));
            std::vector<UpdateOrder> orders;
            orders.reserve(config.order_policy.sample_count);
            for (std::uint64_t k = 0; k < config.order_policy.sample_count; ++k)
                orders.push_back(random_order(config.m, rng));
            const auto initial = consensus_all(profile);
            std::vector<Preference> scratch;
            Reports reports{ControlReport(kAllNotions[0], initial[0], config.m),
                            ControlReport(kAllNotions[1], initial[1], config.m),
                            ControlReport(kAllNotions[2], initial[2], config.m),
                            ControlReport(kAllNotions[3], initial[3], config.m),
                            ControlReport(kAllNotions[4], initial[4], config.m),
                            ControlReport(kAllNotions[5], initial[5], config.m),
                            ControlReport(kAllNotions[6], initial[6], config.m)};
            for (const UpdateOrder& o : orders) {
                scratch.assign(profile.begin(), profile.end());
                md_run_in_place(scratch, o.pairs());
                const auto finals = consensus_all(config.m, scratch);
                for (std::size_t c = 0; c < kNumNotions; ++c)
                    reports[c].record(finals[c]);
            }
            for (ControlReport& r : reports) {
                r.exhaustive = false;
                r.sample_seed = config.seed;
            }
            partial[p] = reports;
        });
    }

    ControlRun run{Dataset{config, {}, {}, 0}, {}};
    run.profiles.reserve(profiles);
    std::vector<Preference> scratch;
    for (std::size_t p = 0; p < profiles; ++p) {
        Reports reports = *partial[p * chunks];
        for (std::uint64_t c = 1; c < chunks; ++c)
            for (std::size_t i = 0; i < kNumNotions; ++i)
                reports[i].merge((*partial[p * chunks + c])[i]);
        auto effects = fixed_effects(sampled[p], order.pairs(), scratch);
        // A sampled search may miss the fixed order, so only exhaustive runs are checked.
        if (config.order_policy.kind == OrderPolicy::Kind::Exhaustive)
            for (std::size_t i = 0; i < kNumNotions; ++i)
                if (!effect_consistent(effects[i], reports[i]))
                    ++run.dataset.consistency_violations;
        run.profiles.push_back({std::move(sampled[p]), reports, effects});
    }

    const ConsensusOutcome target(kChooseTarget);
    for (ConsensusNotion notion : config.notions) {
        std::array<std::uint64_t, kControlLabels.size()> num{};
        std::uint64_t with = 0;
        for (const ProfileControl& pc : run.profiles) {
            const ControlReport& r = pc.reports[at(notion)];
            if (r.initial().has_winner()) {
                ++with;
                num[0] += r.can_preserve_existence() == true;
                num[1] += r.can_preserve_identity() == true;
                num[2] += r.can_lose() == true;
                num[3] += r.can_change_identity() == true;
            } else {
                num[4] += r.can_prevent_generation() == true;
                num[5] += r.can_generate() == true;
            }
            num[6] += r.count(target) > 0;
        }
        const std::uint64_t total = run.profiles.size();
        const std::array<std::uint64_t, kControlLabels.size()> den{with, with, with, with,
                                                                   total - with, total - with, total};
        for (std::size_t i = 0; i < kControlLabels.size(); ++i)
            run.dataset.rows.push_back({notion, 0, total, kControlLabels[i], num[i], den[i]});
    }
    if (n == 1)
        run.dataset.degenerate_cells.push_back(n);
    return run;
}

Dataset run_experiment(const ExperimentConfig& config)
{
    switch (config.experiment) {
    case Experiment::Effects: return experiment_effects(config);
    case Experiment::Completeness: return experiment_completeness(config);
    case Experiment::Control: return experiment_control(config).dataset;
    }
    throw std::invalid_argument("unknown experiment");
}

std::string csv_header(Experiment e)
{
    switch (e) {
    case Experiment::Effects: return "notion,n,m,samples,effect,numerator,denominator,frequency";
    case Experiment::Completeness: return "notion,bin_percent,samples,effect,numerator,denominator,frequency";
    case Experiment::Control: return "notion,control_type,numerator,denominator,frequency";
    }
    return "";
}

std::string format_csv(const Dataset& data)
{
    std::ostringstream os;
    os << csv_header(data.config.experiment) << '\n';
    for (const FrequencyRow& r : data.rows) {
        os << notion_name(r.notion) << ',';
        switch (data.config.experiment) {
        case Experiment::Effects: os << r.cell << ',' << data.config.m << ',' << r.cell_samples << ','; break;
        case Experiment::Completeness: os << r.cell << ',' << r.cell_samples << ','; break;
        case Experiment::Control: break;
        }
        os << r.label << ',' << r.numerator << ',' << r.denominator << ',' << format_frequency(r) << '\n';
    }
    return os.str();
}

std::string format_metadata(const Dataset& data)
{
    const ExperimentConfig& c = data.config;
    nlohmann::ordered_json doc;
    doc["experiment"] = experiment_name(c.experiment);
    doc["agent_counts"] = c.agent_counts;
    doc["m"] = c.m;
    doc["samples"] = c.samples;
    doc["seed"] = c.seed;
    doc["rng"] = "splitmix64";
    doc["generator"] = gen_kind_name(c.generator);
    doc["order_policy"] = c.order_policy.describe();
    if (c.experiment != Experiment::Control || c.order_policy.kind == OrderPolicy::Kind::Exhaustive) {
        const auto labels = default_labels(c.m);
        std::string order;
        const UpdateOrder fixed = fixed_order(c);
        for (Pair p : fixed.pairs())
            order += (order.empty() ? "" : ",") + format_pair(p, labels);
        doc["fixed_order"] = order;
    }
    std::vector<std::string> notions;
    for (ConsensusNotion n : c.notions)
        notions.emplace_back(notion_name(n));
    doc["notions"] = notions;
    doc["degenerate_agent_counts"] = data.degenerate_cells;
    if (c.experiment == Experiment::Control) {
        doc["choose_alternative_target"] = default_labels(c.m)[static_cast<std::size_t>(index(kChooseTarget))];
        doc["consistency_violations"] = data.consistency_violations;
    }
    return doc.dump(2) + "\n";
}

void write_dataset(const Dataset& data, const std::filesystem::path& path)
{
    auto write = [](const std::filesystem::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open " + p.string() + " for writing");
        out << text;
        if (!out.flush())
            throw std::runtime_error("write to " + p.string() + " failed");
    };
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    write(path, format_csv(data));
    write(path.string() + ".meta.json", format_metadata(data));
}

} // namespace majdyn
