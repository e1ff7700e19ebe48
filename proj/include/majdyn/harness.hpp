#pragma once

// Experiment drivers and their CSV output.
//
// Every sampled profile draws from its own stream,
// derive_seed(seed, n, sample_index), so results do not depend on the number
// of worker threads or on the order in which tasks finish.

#include "majdyn/analysis.hpp"
#include "majdyn/gen.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace majdyn {

enum class Experiment { Effects, Completeness, Control };

std::string_view experiment_name(Experiment e);

struct OrderPolicy {
    enum class Kind { Lexicographic, Custom, Exhaustive, Sampled };
    Kind kind = Kind::Lexicographic;
    std::string custom;            // pair list for Custom, completed lexicographically
    std::uint64_t sample_count = 0; // orders per profile for Sampled

    std::string describe() const;
};

// "lexicographic", "custom:<pairs>", "exhaustive" or "sampled:<K>".
OrderPolicy parse_order_policy(std::string_view text);

struct ExperimentConfig {
    Experiment experiment = Experiment::Effects;
    std::vector<int> agent_counts;
    int m = 5;
    std::uint64_t samples = 1;
    std::uint64_t seed = 0;
    OrderPolicy order_policy;
    std::vector<ConsensusNotion> notions{kAllNotions.begin(), kAllNotions.end()};
    GenKind generator = GenKind::UniformPartialOrder;
    int jobs = 1;
};

// "3,5,7", "1..25" or "1..25:2".
std::vector<int> parse_agent_counts(std::string_view text);
// Comma separated notion tags, or "all".
std::vector<ConsensusNotion> parse_notion_list(std::string_view text);

// Desk-scale defaults for each experiment.
ExperimentConfig default_config(Experiment e);

// Throws std::invalid_argument describing the first problem.
void validate_config(const ExperimentConfig& config);

// The fixed update order used by effects runs and by the control consistency check.
UpdateOrder fixed_order(const ExperimentConfig& config);

// Row labels, in output order.
inline constexpr std::array<std::string_view, 5> kEffectLabels{
    "preserved_existence", "preserved_identity", "lost", "generated", "absence_preserved"};
inline constexpr std::array<std::string_view, 7> kControlLabels{
    "preserve_existence", "preserve_identity", "lose_existence", "lose_identity",
    "prevent_generation", "generate", "choose_alternative"};

// The alternative whose selection "choose_alternative" counts.
inline constexpr Alternative kChooseTarget = Alternative{0};

struct FrequencyRow {
    ConsensusNotion notion{};
    int cell = 0;                  // n, or completeness bin percent; unused for control
    std::uint64_t cell_samples = 0; // profiles in the cell
    std::string_view label;
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 0;

    std::optional<double> frequency() const;
};

struct Dataset {
    ExperimentConfig config;
    std::vector<FrequencyRow> rows;
    std::vector<int> degenerate_cells;     // agent counts whose consensus semantics degenerate (n = 1)
    std::uint64_t consistency_violations = 0; // control only
};

// Per-profile control results, kept for consistency checks.
struct ProfileControl {
    Profile profile;
    std::array<ControlReport, kNumNotions> reports;
    std::array<EffectRecord, kNumNotions> fixed_order_effects;
};

struct ControlRun {
    Dataset dataset;
    std::vector<ProfileControl> profiles;
};

Dataset experiment_effects(const ExperimentConfig& config);
Dataset experiment_completeness(const ExperimentConfig& config);
ControlRun experiment_control(const ExperimentConfig& config);
Dataset run_experiment(const ExperimentConfig& config);

// Bin for `compared` comparisons out of `total`: nearest multiple of 5 percent,
// halves rounded up.
int completeness_bin(std::uint64_t compared, std::uint64_t total);

// Whether the fixed-order effect agrees with what the control search found.
bool effect_consistent(const EffectRecord& effect, const ControlReport& report);

std::string csv_header(Experiment e);
std::string format_csv(const Dataset& data);
// Configuration and flags that the fixed CSV header cannot carry.
std::string format_metadata(const Dataset& data);

// Writes the CSV to `path` and the metadata next to it as <path>.meta.json.
void write_dataset(const Dataset& data, const std::filesystem::path& path);

} // namespace majdyn
