// consensus-md: experiments, single runs and fixture checks for majority dynamics.

#include "majdyn/catalog.hpp"
#include "majdyn/harness.hpp"
#include "majdyn/profile_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace majdyn;

namespace {

struct ExperimentFlags {
    std::string agents;
    std::optional<int> alternatives;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    std::string order_policy;
    std::string notions = "all";
    std::string generator = "partial";
    std::string out;
    int jobs = 1;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f)
{
    cmd->add_option("--agents", f.agents, "Agent counts: 3,5,7 or 1..25:2");
    cmd->add_option("--alternatives", f.alternatives, "Number of alternatives m");
    cmd->add_option("--samples", f.samples, "Profiles per cell");
    cmd->add_option("--seed", f.seed, "Master seed (CONSENSUS_MD_SEED overrides)");
    cmd->add_option("--order-policy", f.order_policy, "lexicographic | custom:<pairs> | exhaustive | sampled:<K>");
    cmd->add_option("--notions", f.notions, "Comma separated notion tags, or all");
    cmd->add_option("--generator", f.generator, "Preference generator: partial | weak | complete | empty");
    cmd->add_option("--out", f.out, "CSV output path (stdout when omitted)");
    cmd->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

std::uint64_t effective_seed(std::uint64_t flag)
{
    if (const char* env = std::getenv("CONSENSUS_MD_SEED"); env && *env) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("CONSENSUS_MD_SEED is not an integer: ") + env);
        }
    }
    return flag;
}

GenKind parse_generator(const std::string& name)
{
    for (GenKind k : {GenKind::UniformPartialOrder, GenKind::UniformWeakOrdering, GenKind::Complete, GenKind::Empty})
        if (gen_kind_name(k) == name)
            return k;
    throw std::invalid_argument("unknown generator '" + name + "'");
}

int run_experiment_command(Experiment e, const ExperimentFlags& f)
{
    ExperimentConfig c = default_config(e);
    if (!f.agents.empty())
        c.agent_counts = parse_agent_counts(f.agents);
    if (f.alternatives)
        c.m = *f.alternatives;
    if (f.samples)
        c.samples = *f.samples;
    c.seed = effective_seed(f.seed);
    if (!f.order_policy.empty())
        c.order_policy = parse_order_policy(f.order_policy);
    c.notions = parse_notion_list(f.notions);
    c.generator = parse_generator(f.generator);
    c.jobs = f.jobs;

    const Dataset data = run_experiment(c);
    if (f.out.empty()) {
        std::cout << format_csv(data);
    } else {
        write_dataset(data, f.out);
        std::cerr << "wrote " << data.rows.size() << " rows to " << f.out << "\n";
    }
    for (int n : data.degenerate_cells)
        std::cerr << "note: n = " << n << " cells are degenerate (a single agent decides every notion)\n";
    if (data.consistency_violations > 0) {
        std::cerr << "error: " << data.consistency_violations
                  << " fixed-order effects disagree with the control search\n";
        return 1;
    }
    return 0;
}

int run_md_command(const std::string& profile_path, const std::string& order_text, bool trace)
{
    const ProfileDocument doc = read_profile_file(profile_path);
    const auto& labels = doc.labels;
    const int m = doc.profile.m();
    const UpdateOrder order = complete_order(m, parse_pair_list(order_text, labels));
    const RunResult run = md_run(doc.profile, order, trace);

    if (trace) {
        for (const StepTrace& s : run.steps) {
            std::cout << "step " << format_pair(s.pair, labels) << " supports " << s.support_first << '/'
                      << s.support_second << " adopted " << format_pair(s.adopted, labels) << " updaters "
                      << s.updaters.size();
            for (std::size_t i = 0; i < s.updaters.size(); ++i)
                std::cout << (i ? "," : " (agents ") << s.updaters[i] + 1;
            std::cout << (s.updaters.empty() ? "\n" : ")\n");
        }
    }
    std::cout << "final profile\n";
    for (std::size_t i = 0; i < run.profile.agents().size(); ++i)
        std::cout << "  agent " << i + 1 << ": " << format_preference(run.profile[i], labels) << '\n';
    const auto before = consensus_all(doc.profile);
    const auto after = consensus_all(run.profile);
    std::cout << "consensus (initial -> final)\n";
    for (std::size_t c = 0; c < kNumNotions; ++c)
        std::cout << "  " << notion_name(kAllNotions[c]) << ": " << format_outcome(before[c], labels) << " -> "
                  << format_outcome(after[c], labels) << '\n';
    return 0;
}

std::string flag_text(std::optional<bool> v)
{
    return v ? (*v ? "yes" : "no") : "n/a";
}

int control_search_command(const std::string& profile_path, const std::string& notion_tag, bool exhaustive,
                           std::optional<std::uint64_t> sample, std::uint64_t seed, int jobs)
{
    const ProfileDocument doc = read_profile_file(profile_path);
    const ConsensusNotion notion = parse_notion(notion_tag);
    if (exhaustive == sample.has_value())
        throw std::invalid_argument("choose exactly one of --exhaustive and --sample K");
    const ControlReport r = exhaustive ? control_search_exhaustive(notion, doc.profile, jobs)
                                       : control_search_sampled(notion, doc.profile, *sample, effective_seed(seed), jobs);
    const auto& labels = doc.labels;
    std::cout << "notion," << notion_name(notion) << '\n'
              << "search," << (r.exhaustive ? "exhaustive" : "sampled") << '\n';
    if (r.sample_seed)
        std::cout << "seed," << *r.sample_seed << '\n';
    std::cout << "orders_examined," << r.orders_examined() << '\n'
              << "initial," << format_outcome(r.initial(), labels) << '\n';
    for (const auto& [outcome, count] : r.outcome_multiset())
        std::cout << "final_count," << format_outcome(outcome, labels) << ',' << count << '\n';
    std::cout << "can_preserve_existence," << flag_text(r.can_preserve_existence()) << '\n'
              << "can_preserve_identity," << flag_text(r.can_preserve_identity()) << '\n'
              << "can_lose," << flag_text(r.can_lose()) << '\n'
              << "can_change_identity," << flag_text(r.can_change_identity()) << '\n'
              << "can_generate," << flag_text(r.can_generate()) << '\n'
              << "can_prevent_generation," << flag_text(r.can_prevent_generation()) << '\n'
              << "negative_control," << flag_text(r.negative_control_available()) << '\n';
    std::string choosable;
    for (Alternative a : members(r.choosable()))
        choosable += (choosable.empty() ? "" : " ") + labels[static_cast<std::size_t>(index(a))];
    std::cout << "choosable," << choosable << '\n';
    return 0;
}

int export_fixture_command(const std::string& name, const std::string& out)
{
    const Fixture f = find_fixture(name);
    const std::string text = format_profile_document(f.profile, f.labels);
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(out, std::ios::binary);
    if (!(file << text))
        throw std::runtime_error("cannot write " + out);
    std::string prefix;
    for (Pair p : f.order_prefix)
        prefix += (prefix.empty() ? "" : ",") + format_pair(p, f.labels);
    std::cerr << "wrote " << name << " to " << out << " (order prefix " << prefix << ")\n";
    return 0;
}

int verify_fixtures_command(const std::string& only, std::optional<std::uint64_t> completion_seed)
{
    int failures = 0;
    int checked = 0;
    for (const Fixture& f : counterexample_catalog()) {
        if (!only.empty() && f.name != only)
            continue;
        ++checked;
        std::optional<UpdateOrder> order;
        if (completion_seed) {
            Rng rng(derive_seed(*completion_seed, 0, static_cast<std::uint64_t>(checked)));
            order = random_completion(f.profile.m(), f.order_prefix, rng);
        }
        for (const ClaimCheck& c : order ? verify_fixture(f, *order) : verify_fixture(f)) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << f.name << ": " << c.description;
            if (!c.passed)
                std::cout << " (observed " << c.observed << ")";
            std::cout << '\n';
            failures += c.passed ? 0 : 1;
        }
    }
    if (checked == 0)
        throw std::invalid_argument("no fixture named '" + only + "'");
    std::cout << (failures == 0 ? "all fixture claims hold\n" : std::to_string(failures) + " claim(s) failed\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Majority dynamics for incomplete preferences"};
    app.name("consensus-md");
    app.require_subcommand(1);

    ExperimentFlags effects_flags, completeness_flags, control_flags;
    auto* effects = app.add_subcommand("effects", "Effect frequencies against the number of agents");
    add_experiment_flags(effects, effects_flags);
    auto* completeness = app.add_subcommand("completeness", "Effect frequencies against profile completeness");
    add_experiment_flags(completeness, completeness_flags);
    auto* control = app.add_subcommand("control", "Control frequencies over update orders");
    add_experiment_flags(control, control_flags);

    std::string profile_path, order_text;
    bool trace = false;
    auto* run_md = app.add_subcommand("run-md", "Run majority dynamics on a profile file");
    run_md->add_option("--profile", profile_path, "Profile JSON file")->required();
    run_md->add_option("--order", order_text, "Update order or prefix, e.g. ab,bc,ac");
    run_md->add_flag("--trace", trace, "Print one line per step");

    std::string search_profile, notion_tag;
    bool exhaustive = false;
    std::optional<std::uint64_t> sample;
    std::uint64_t search_seed = 0;
    int search_jobs = 1;
    auto* search = app.add_subcommand("control-search", "Outcomes of one profile over many update orders");
    search->add_option("--profile", search_profile, "Profile JSON file")->required();
    search->add_option("--notion", notion_tag, "Consensus notion tag")->required();
    search->add_flag("--exhaustive", exhaustive, "Every update order");
    search->add_option("--sample", sample, "Number of random update orders");
    search->add_option("--seed", search_seed, "Seed for --sample (CONSENSUS_MD_SEED overrides)");
    search->add_option("--jobs", search_jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string fixture_name, fixture_out;
    bool list = false;
    auto* export_fixture = app.add_subcommand("export-fixture", "Write a catalog profile as JSON");
    export_fixture->add_option("--name", fixture_name, "Fixture id");
    export_fixture->add_option("--out", fixture_out, "Output file (stdout when omitted)");
    export_fixture->add_flag("--list", list, "List fixture ids");

    std::string verify_name;
    std::optional<std::uint64_t> completion_seed;
    auto* verify = app.add_subcommand("verify-fixtures", "Check every catalog claim");
    verify->add_option("--name", verify_name, "Only this fixture");
    verify->add_option("--completion-seed", completion_seed,
                       "Complete order prefixes randomly from this seed instead of lexicographically");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*effects)
            return run_experiment_command(Experiment::Effects, effects_flags);
        if (*completeness)
            return run_experiment_command(Experiment::Completeness, completeness_flags);
        if (*control)
            return run_experiment_command(Experiment::Control, control_flags);
        if (*run_md)
            return run_md_command(profile_path, order_text, trace);
        if (*search)
            return control_search_command(search_profile, notion_tag, exhaustive, sample, search_seed, search_jobs);
        if (*export_fixture) {
            if (list) {
                for (const Fixture& f : counterexample_catalog())
                    std::cout << f.name << "  " << f.summary << '\n';
                return 0;
            }
            if (fixture_name.empty())
                throw std::invalid_argument("--name is required (see --list)");
            return export_fixture_command(fixture_name, fixture_out);
        }
        if (*verify)
            return verify_fixtures_command(verify_name, completion_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
