#pragma once

#include <coning/combinatorics.hpp>
#include <coning/sts.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace coning {

enum class ExperimentKind { coning_sweep, length_sweep, pattern_sweep, random_graph };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::length_sweep;

    // coning_sweep: all-ones h of base_length, cone counts over cone_range.
    unsigned base_length = 551;
    std::pair<unsigned, unsigned> cone_range{0, 19};

    // length_sweep: all-ones h over length_range, no cones.
    std::pair<unsigned, unsigned> length_range{551, 600};

    // pattern_sweep: palindromic h of base_length, non-end value over
    // pattern_range.
    std::pair<unsigned, unsigned> pattern_range{1, 20};

    // random_graph: seeded graph, cone counts over cone_range.
    std::uint64_t graph_n = 50;
    Rational graph_p{1, 2};
    std::uint64_t graph_seed = 1;

    sts::SuiteParams suite;
    std::filesystem::path output_dir = "out";
    bool byte_aligned = false;  // legacy encoding regression mode

    static ExperimentConfig desk_defaults(ExperimentKind kind);
    /// Full-scale ranges (h-lengths around 3750, 100 variants).
    void apply_full_scale();

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct PValueRow {
    std::string variant;
    std::string test_name;
    int p_index = -1;       // -1 for a skipped test
    double p_value = 0.0;   // unset for a skipped test
    bool skipped = false;
};

struct VariantSummary {
    std::string variant;
    std::uint64_t bit_length = 0;
    int applicable = 0;
    int passed = 0;
    double pass_proportion = 0.0;
    double clustering_fraction = 0.0;
    bool source_symmetrical = false;       // is_symmetrical of the encoded f
    bool source_dehn_sommerville = false;  // of the source h, when one exists
    bool has_h_source = false;
};

struct PValueTable {
    std::vector<PValueRow> rows;
    std::vector<VariantSummary> variants;
};

nlohmann::json suite_report_to_json(const sts::SuiteReport& report);

PValueTable experiment_coning(const ExperimentConfig& cfg);
PValueTable experiment_lengths(const ExperimentConfig& cfg);
PValueTable experiment_patterns(const ExperimentConfig& cfg);
PValueTable experiment_random_graph(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind; writes the output tree
///   <output_dir>/<kind>/<variant>/{stream.bin, stream.manifest.json,
///   report.json}
/// plus experiment.manifest.json and top-level scatter.csv / sparkline.csv.
PValueTable run_experiment(const ExperimentConfig& cfg);

enum class AggregateLayout { scatter_csv, sparkline_csv, json };

AggregateLayout aggregate_layout_from_string(const std::string& s);

/// scatter_csv: (variant, test, p_index, p_value, status) rows per test.
/// sparkline_csv: per-variant ordered p-value series.
/// json: all per-variant suite reports in one array.
std::filesystem::path aggregate(const PValueTable& table, AggregateLayout layout,
                                const std::filesystem::path& out_dir);

/// Rebuilds a table from the report.json files under an experiment directory.
PValueTable load_reports(const std::filesystem::path& experiment_dir);

}  // namespace coning
