#include <coning/experiments.hpp>

#include <coning/bitstream.hpp>
#include <coning/gtheorem.hpp>
#include <coning/vector_io.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

namespace coning {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::coning_sweep: return "coning_sweep";
        case ExperimentKind::length_sweep: return "length_sweep";
        case ExperimentKind::pattern_sweep: return "pattern_sweep";
        case ExperimentKind::random_graph: return "random_graph";
    }
    throw std::logic_error("unreachable experiment kind");
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "coning_sweep") return ExperimentKind::coning_sweep;
    if (s == "length_sweep") return ExperimentKind::length_sweep;
    if (s == "pattern_sweep") return ExperimentKind::pattern_sweep;
    if (s == "random_graph") return ExperimentKind::random_graph;
    throw std::invalid_argument("unknown experiment: '" + s + "'");
}

ExperimentConfig ExperimentConfig::desk_defaults(ExperimentKind kind) {
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.base_length = 551;
    cfg.cone_range = {0, 19};
    cfg.length_range = {551, 600};
    cfg.pattern_range = {1, 20};
    cfg.graph_n = 50;
    cfg.graph_p = Rational(1, 2);
    cfg.graph_seed = 1;
    return cfg;
}

void ExperimentConfig::apply_full_scale() {
    switch (kind) {
        case ExperimentKind::coning_sweep:
            base_length = 3751;
            cone_range = {0, 99};
            break;
        case ExperimentKind::length_sweep:
            length_range = {3750, 3849};
            break;
        case ExperimentKind::pattern_sweep:
            base_length = 3750;
            pattern_range = {1, 100};
            break;
        case ExperimentKind::random_graph:
            cone_range = {0, 99};
            break;
    }
}

namespace {

std::pair<unsigned, unsigned> range_from_json(const nlohmann::json& j, const char* name) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument(std::string(name) + " must be a [lo, hi] pair");
    }
    const auto lo = j[0].get<unsigned>();
    const auto hi = j[1].get<unsigned>();
    if (hi < lo) throw std::invalid_argument(std::string(name) + " range is empty");
    return {lo, hi};
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    if (!j.contains("experiment")) {
        throw std::invalid_argument("config lacks \"experiment\"");
    }
    ExperimentConfig cfg = desk_defaults(experiment_kind_from_string(j["experiment"]));
    static const char* known[] = {"experiment",   "base_length", "cone_range",
                                  "length_range", "pattern_range", "graph",
                                  "suite",        "output_dir",  "byte_aligned"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
                return it.key() == k;
            }) == std::end(known)) {
            throw std::invalid_argument("unknown config key: '" + it.key() + "'");
        }
    }
    if (j.contains("base_length")) cfg.base_length = j["base_length"].get<unsigned>();
    if (j.contains("cone_range")) cfg.cone_range = range_from_json(j["cone_range"], "cone_range");
    if (j.contains("length_range"))
        cfg.length_range = range_from_json(j["length_range"], "length_range");
    if (j.contains("pattern_range"))
        cfg.pattern_range = range_from_json(j["pattern_range"], "pattern_range");
    if (j.contains("graph")) {
        const auto& g = j["graph"];
        if (g.contains("n")) cfg.graph_n = g["n"].get<std::uint64_t>();
        if (g.contains("p")) cfg.graph_p = Rational::parse(g["p"].get<std::string>());
        if (g.contains("seed")) cfg.graph_seed = g["seed"].get<std::uint64_t>();
    }
    if (j.contains("suite")) {
        const auto& s = j["suite"];
        if (s.contains("alpha")) cfg.suite.alpha = s["alpha"].get<double>();
        if (s.contains("block_frequency_m"))
            cfg.suite.block_frequency_m = s["block_frequency_m"].get<int>();
        if (s.contains("approx_entropy_m"))
            cfg.suite.approx_entropy_m = s["approx_entropy_m"].get<int>();
        if (s.contains("serial_m")) cfg.suite.serial_m = s["serial_m"].get<int>();
        if (s.contains("linear_complexity_m"))
            cfg.suite.linear_complexity_m = s["linear_complexity_m"].get<int>();
    }
    if (j.contains("output_dir"))
        cfg.output_dir = std::filesystem::path(j["output_dir"].get<std::string>());
    if (j.contains("byte_aligned")) cfg.byte_aligned = j["byte_aligned"].get<bool>();
    if (cfg.base_length < 2) throw std::invalid_argument("base_length must be >= 2");
    if (cfg.kind == ExperimentKind::length_sweep && cfg.length_range.first < 2) {
        throw std::invalid_argument("length_range must start at >= 2");
    }
    if (cfg.kind == ExperimentKind::pattern_sweep && cfg.pattern_range.first < 1) {
        throw std::invalid_argument("pattern_range must start at >= 1");
    }
    if (cfg.kind == ExperimentKind::random_graph && cfg.graph_n < 2) {
        throw std::invalid_argument("graph needs n >= 2");
    }
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["experiment"] = to_string(kind);
    j["base_length"] = base_length;
    j["cone_range"] = {cone_range.first, cone_range.second};
    j["length_range"] = {length_range.first, length_range.second};
    j["pattern_range"] = {pattern_range.first, pattern_range.second};
    j["graph"] = {{"n", graph_n}, {"p", graph_p.str()}, {"seed", graph_seed}};
    j["suite"] = {{"alpha", suite.alpha},
                  {"block_frequency_m", suite.block_frequency_m},
                  {"approx_entropy_m", suite.approx_entropy_m},
                  {"serial_m", suite.serial_m},
                  {"linear_complexity_m", suite.linear_complexity_m}};
    j["output_dir"] = output_dir.string();
    j["byte_aligned"] = byte_aligned;
    return j;
}

nlohmann::json suite_report_to_json(const sts::SuiteReport& report) {
    nlohmann::json j;
    j["bit_length"] = report.bit_length;
    j["alpha"] = report.alpha;
    j["applicable"] = report.applicable;
    j["passed"] = report.passed;
    j["pass_proportion"] = report.pass_proportion;
    j["p_value_count"] = report.p_value_count;
    j["clustered_count"] = report.clustered_count;
    j["clustering_fraction"] = report.clustering_fraction;
    nlohmann::json results = nlohmann::json::array();
    for (const auto& r : report.results) {
        nlohmann::json rj;
        rj["name"] = r.test_name;
        rj["p_values"] = r.p_values;
        rj["passed"] = r.passed;
        rj["skipped"] = r.skipped;
        if (r.skipped) rj["skip_reason"] = r.skip_reason;
        rj["advisory"] = r.advisory;
        if (r.advisory) rj["advisory_reason"] = r.advisory_reason;
        rj["parameters"] = r.parameters;
        results.push_back(std::move(rj));
    }
    j["results"] = std::move(results);
    return j;
}

namespace {

unsigned worker_count() {
    if (const char* env = std::getenv("CONING_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 64));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct VariantInput {
    std::string id;
    FVector f;
    bool has_h_source = false;
    bool h_dehn_sommerville = false;
    nlohmann::json parameters;  // construction parameters for the manifest
};

struct VariantOutput {
    VariantSummary summary;
    std::vector<PValueRow> rows;
};

VariantOutput process_variant_impl(const ExperimentConfig& cfg,
                                   const std::string& construction,
                                   const VariantInput& in) {
    const std::filesystem::path dir =
        cfg.output_dir / to_string(cfg.kind) / in.id;
    std::filesystem::create_directories(dir);

    const BitStream stream = cfg.byte_aligned
                                 ? encode_vector_byte_aligned(in.f.components())
                                 : encode_vector(in.f.components());

    const bool symmetrical = is_symmetrical(in.f);
    nlohmann::json manifest;
    manifest["construction"] = construction;
    manifest["parameters"] = in.parameters;
    manifest["parameters"]["encoding"] = cfg.byte_aligned ? "byte-aligned" : "bitwise";
    manifest["source_vector"] = describe_vector(in.f.components());
    manifest["symmetry_certificate"]["is_symmetrical"] = symmetrical;
    if (in.has_h_source) {
        manifest["symmetry_certificate"]["dehn_sommerville"] = in.h_dehn_sommerville;
    } else {
        manifest["symmetry_certificate"]["dehn_sommerville"] = nullptr;
    }
    write_stream(stream, StreamFormat::raw, dir / "stream.bin", manifest);

    const sts::SuiteReport report = sts::run_suite(stream, cfg.suite);
    nlohmann::json rj = suite_report_to_json(report);
    rj["variant"] = in.id;
    rj["symmetry_certificate"] = manifest["symmetry_certificate"];
    {
        std::ofstream out(dir / "report.json", std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write report for variant " + in.id);
        }
        out << rj.dump(2) << "\n";
    }

    VariantOutput out;
    out.summary.variant = in.id;
    out.summary.bit_length = report.bit_length;
    out.summary.applicable = report.applicable;
    out.summary.passed = report.passed;
    out.summary.pass_proportion = report.pass_proportion;
    out.summary.clustering_fraction = report.clustering_fraction;
    out.summary.source_symmetrical = symmetrical;
    out.summary.source_dehn_sommerville = in.h_dehn_sommerville;
    out.summary.has_h_source = in.has_h_source;
    for (const auto& r : report.results) {
        if (r.skipped) {
            out.rows.push_back(PValueRow{in.id, r.test_name, -1, 0.0, true});
            continue;
        }
        for (std::size_t i = 0; i < r.p_values.size(); ++i) {
            out.rows.push_back(
                PValueRow{in.id, r.test_name, static_cast<int>(i), r.p_values[i], false});
        }
    }
    return out;
}

// Codec and suite errors surface with the variant that triggered them.
VariantOutput process_variant(const ExperimentConfig& cfg, const std::string& construction,
                              const VariantInput& in) {
    try {
        return process_variant_impl(cfg, construction, in);
    } catch (const std::exception& e) {
        throw std::runtime_error("variant " + in.id + ": " + e.what());
    }
}

PValueTable fold_outputs(std::vector<VariantOutput> outputs) {
    PValueTable table;
    for (auto& o : outputs) {
        table.variants.push_back(std::move(o.summary));
        for (auto& row : o.rows) table.rows.push_back(std::move(row));
    }
    return table;
}

// Runs one variant builder per index over a small worker pool; outputs are
// folded in index order regardless of completion order.
PValueTable run_indexed(const ExperimentConfig& cfg, const std::string& construction,
                        std::size_t count,
                        const std::function<VariantInput(std::size_t)>& make_input) {
    std::vector<VariantOutput> outputs(count);
    const unsigned workers = std::min<std::size_t>(worker_count(), count == 0 ? 1 : count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            outputs[i] = process_variant(cfg, construction, make_input(i));
        }
        return fold_outputs(std::move(outputs));
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    outputs[i] = process_variant(cfg, construction, make_input(i));
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return fold_outputs(std::move(outputs));
}

std::string format_id(const char* prefix, unsigned value, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s_%0*u", prefix, width, value);
    return std::string(buf);
}

void write_experiment_manifest(const ExperimentConfig& cfg) {
    const std::filesystem::path dir = cfg.output_dir / to_string(cfg.kind);
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "experiment.manifest.json", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write experiment manifest");
    out << cfg.to_json().dump(2) << "\n";
}

void write_csvs(const ExperimentConfig& cfg, const PValueTable& table) {
    const std::filesystem::path dir = cfg.output_dir / to_string(cfg.kind);
    aggregate(table, AggregateLayout::scatter_csv, dir);
    aggregate(table, AggregateLayout::sparkline_csv, dir);
}

}  // namespace

PValueTable experiment_coning(const ExperimentConfig& cfg) {
    if (cfg.base_length < 2) throw std::invalid_argument("base_length must be >= 2");
    write_experiment_manifest(cfg);
    const HVector h = palindromic_h(cfg.base_length, 1);
    const bool h_dehn = check_dehn_sommerville(h);
    // One live vector: cone incrementally instead of re-deriving per variant.
    FVector f = h_to_f(h);
    for (unsigned j = 0; j < cfg.cone_range.first; ++j) f = cone_f(f);
    std::vector<VariantOutput> outputs;
    for (unsigned j = cfg.cone_range.first;; ++j) {
        VariantInput in{format_id("j", j, 3), f, true, h_dehn,
                        {{"base_length", cfg.base_length}, {"cones", j}}};
        outputs.push_back(process_variant(cfg, "simplex-dual", in));
        if (j == cfg.cone_range.second) break;
        f = cone_f(f);
    }
    PValueTable table = fold_outputs(std::move(outputs));
    write_csvs(cfg, table);
    return table;
}

PValueTable experiment_lengths(const ExperimentConfig& cfg) {
    if (cfg.length_range.first < 2) throw std::invalid_argument("lengths must be >= 2");
    write_experiment_manifest(cfg);
    const unsigned lo = cfg.length_range.first;
    const std::size_t count = cfg.length_range.second - lo + 1;
    PValueTable table =
        run_indexed(cfg, "simplex-dual", count, [&](std::size_t i) {
            const unsigned L = lo + static_cast<unsigned>(i);
            const HVector h = palindromic_h(L, 1);
            VariantInput in{format_id("L", L, 4), h_to_f(h), true,
                            check_dehn_sommerville(h),
                            {{"length", L}, {"cones", 0}}};
            return in;
        });
    write_csvs(cfg, table);
    return table;
}

PValueTable experiment_patterns(const ExperimentConfig& cfg) {
    if (cfg.pattern_range.first < 1) throw std::invalid_argument("pattern values must be >= 1");
    write_experiment_manifest(cfg);
    const unsigned lo = cfg.pattern_range.first;
    const std::size_t count = cfg.pattern_range.second - lo + 1;
    PValueTable table = run_indexed(cfg, "pattern", count, [&](std::size_t i) {
        const unsigned c = lo + static_cast<unsigned>(i);
        const HVector h = palindromic_h(cfg.base_length, c);
        VariantInput in{format_id("c", c, 3), h_to_f(h), true,
                        check_dehn_sommerville(h),
                        {{"length", cfg.base_length}, {"pattern_value", c}}};
        return in;
    });
    write_csvs(cfg, table);
    return table;
}

PValueTable experiment_random_graph(const ExperimentConfig& cfg) {
    if (cfg.graph_n < 2) throw std::invalid_argument("graph needs n >= 2");
    if (cfg.graph_p.num <= 0) throw std::invalid_argument("graph needs p > 0");
    write_experiment_manifest(cfg);
    const GraphSummary g = random_graph(cfg.graph_n, cfg.graph_p, RngConfig{cfg.graph_seed});
    FVector f = iterate_cone(f_of_graph(g), cfg.cone_range.first);
    std::vector<VariantOutput> outputs;
    for (unsigned j = cfg.cone_range.first;; ++j) {
        VariantInput in{format_id("j", j, 3),
                        f,
                        false,
                        false,
                        {{"graph_n", g.num_vertices},
                         {"graph_edges", g.num_edges},
                         {"graph_p", cfg.graph_p.str()},
                         {"seed", g.seed},
                         {"cones", j}}};
        if (g.num_edges >= 1) {
            const auto threshold =
                cone_failure_threshold(static_cast<std::int64_t>(g.num_vertices),
                                       static_cast<std::int64_t>(g.num_edges));
            in.parameters["proposition_check"] = {
                {"threshold", threshold ? nlohmann::json(threshold->str())
                                        : nlohmann::json(nullptr)},
                {"vertex_equation_holds",
                 vertex_equation_holds(complex_to_polytope_profile(f),
                                       static_cast<int>(f.size()))}};
        }
        outputs.push_back(process_variant(cfg, "random-graph", in));
        if (j == cfg.cone_range.second) break;
        f = cone_f(f);
    }
    PValueTable table = fold_outputs(std::move(outputs));
    write_csvs(cfg, table);
    return table;
}

PValueTable run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.kind) {
        case ExperimentKind::coning_sweep: return experiment_coning(cfg);
        case ExperimentKind::length_sweep: return experiment_lengths(cfg);
        case ExperimentKind::pattern_sweep: return experiment_patterns(cfg);
        case ExperimentKind::random_graph: return experiment_random_graph(cfg);
    }
    throw std::logic_error("unreachable experiment kind");
}

AggregateLayout aggregate_layout_from_string(const std::string& s) {
    if (s == "scatter_csv") return AggregateLayout::scatter_csv;
    if (s == "sparkline_csv") return AggregateLayout::sparkline_csv;
    if (s == "json") return AggregateLayout::json;
    throw std::invalid_argument("unknown layout: '" + s + "'");
}

namespace {

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", p);
    return std::string(buf);
}

}  // namespace

std::filesystem::path aggregate(const PValueTable& table, AggregateLayout layout,
                                const std::filesystem::path& out_dir) {
    if (table.variants.empty()) {
        throw std::invalid_argument("nothing to aggregate: no variants");
    }
    std::filesystem::create_directories(out_dir);
    if (layout == AggregateLayout::scatter_csv) {
        const auto path = out_dir / "scatter.csv";
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << "variant,test,p_index,p_value,status\n";
        for (const auto& row : table.rows) {
            if (row.skipped) {
                out << row.variant << "," << row.test_name << ",,,skipped\n";
            } else {
                out << row.variant << "," << row.test_name << "," << row.p_index << ","
                    << format_p(row.p_value) << ",ok\n";
            }
        }
        return path;
    }
    if (layout == AggregateLayout::sparkline_csv) {
        const auto path = out_dir / "sparkline.csv";
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << "variant,series_index,p_value\n";
        std::string current;
        int series = 0;
        for (const auto& row : table.rows) {
            if (row.skipped) continue;
            if (row.variant != current) {
                current = row.variant;
                series = 0;
            }
            out << row.variant << "," << series++ << "," << format_p(row.p_value) << "\n";
        }
        return path;
    }
    const auto path = out_dir / "reports.json";
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : table.variants) {
        std::ifstream in(out_dir / v.variant / "report.json");
        nlohmann::json rj;
        if (in) {
            in >> rj;
        } else {
            rj = {{"variant", v.variant},
                  {"pass_proportion", v.pass_proportion},
                  {"clustering_fraction", v.clustering_fraction}};
        }
        arr.push_back(std::move(rj));
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << arr.dump(2) << "\n";
    return path;
}

PValueTable load_reports(const std::filesystem::path& experiment_dir) {
    std::vector<std::filesystem::path> dirs;
    for (const auto& entry : std::filesystem::directory_iterator(experiment_dir)) {
        if (entry.is_directory() && std::filesystem::exists(entry.path() / "report.json")) {
            dirs.push_back(entry.path());
        }
    }
    if (dirs.empty()) {
        throw std::runtime_error("no variant reports under " + experiment_dir.string());
    }
    std::sort(dirs.begin(), dirs.end());
    PValueTable table;
    for (const auto& dir : dirs) {
        std::ifstream in(dir / "report.json");
        nlohmann::json rj;
        try {
            in >> rj;
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("bad report in " + dir.string() + ": " + e.what());
        }
        VariantSummary vs;
        vs.variant = rj.value("variant", dir.filename().string());
        vs.bit_length = rj.value("bit_length", std::uint64_t{0});
        vs.applicable = rj.value("applicable", 0);
        vs.passed = rj.value("passed", 0);
        vs.pass_proportion = rj.value("pass_proportion", 0.0);
        vs.clustering_fraction = rj.value("clustering_fraction", 0.0);
        if (rj.contains("symmetry_certificate")) {
            const auto& cert = rj["symmetry_certificate"];
            vs.source_symmetrical = cert.value("is_symmetrical", false);
            if (cert.contains("dehn_sommerville") && !cert["dehn_sommerville"].is_null()) {
                vs.has_h_source = true;
                vs.source_dehn_sommerville = cert["dehn_sommerville"].get<bool>();
            }
        }
        for (const auto& r : rj["results"]) {
            const std::string name = r["name"].get<std::string>();
            if (r.value("skipped", false)) {
                table.rows.push_back(PValueRow{vs.variant, name, -1, 0.0, true});
                continue;
            }
            int idx = 0;
            for (const auto& p : r["p_values"]) {
                table.rows.push_back(
                    PValueRow{vs.variant, name, idx++, p.get<double>(), false});
            }
        }
        table.variants.push_back(std::move(vs));
    }
    return table;
}

}  // namespace coning
