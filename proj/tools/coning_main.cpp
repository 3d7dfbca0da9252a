#include <coning/bitstream.hpp>
#include <coning/combinatorics.hpp>
#include <coning/experiments.hpp>
#include <coning/gtheorem.hpp>
#include <coning/sts.hpp>
#include <coning/vector_io.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using coning::BigInt;
using coning::FVector;
using coning::HVector;
using nlohmann::json;

// Exit codes: 0 success, 1 usage, 2 data/format, 3 threshold failure
// under --strict.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ThresholdFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write: " + path.string());
    out << j.dump(2) << "\n";
}

struct GenerateOpts {
    std::string construction;
    unsigned length = 0;
    long pattern_value = -1;
    std::uint64_t graph_n = 0;
    std::string graph_p;
    std::uint64_t seed = 0;
    unsigned cones = 0;
    std::string out;
};

int run_generate(const GenerateOpts& o) {
    FVector f{1};
    json params;
    if (o.construction == "simplex-dual") {
        if (o.length == 0) throw UsageError("simplex-dual needs --length");
        if (o.pattern_value >= 0 || !o.graph_p.empty()) {
            throw UsageError("simplex-dual takes only --length and --cones");
        }
        f = coning::simplex_dual_f(o.length);
        params = {{"length", o.length}};
    } else if (o.construction == "pattern") {
        if (o.length == 0) throw UsageError("pattern needs --length");
        if (o.pattern_value < 1) throw UsageError("pattern needs --pattern-value >= 1");
        if (!o.graph_p.empty() || o.graph_n != 0) {
            throw UsageError("pattern takes only --length, --pattern-value and --cones");
        }
        f = coning::h_to_f(coning::palindromic_h(o.length, o.pattern_value));
        params = {{"length", o.length}, {"pattern_value", o.pattern_value}};
    } else if (o.construction == "random-graph") {
        if (o.graph_n == 0 || o.graph_p.empty()) {
            throw UsageError("random-graph needs --graph-n and --graph-p");
        }
        if (o.length != 0 || o.pattern_value >= 0) {
            throw UsageError("random-graph takes only --graph-n/--graph-p/--seed/--cones");
        }
        const auto p = coning::Rational::parse(o.graph_p);
        const auto g = coning::random_graph(o.graph_n, p, coning::RngConfig{o.seed});
        f = coning::f_of_graph(g);
        params = {{"graph_n", g.num_vertices},
                  {"graph_edges", g.num_edges},
                  {"graph_p", p.str()},
                  {"seed", g.seed}};
    } else {
        throw UsageError("unknown construction: '" + o.construction + "'");
    }
    f = coning::iterate_cone(f, o.cones);
    params["cones"] = o.cones;

    coning::write_vector_file(o.out, coning::VectorKind::f, f.components());
    json manifest = {{"construction", o.construction},
                     {"parameters", params},
                     {"vector", coning::describe_vector(f.components())},
                     {"is_symmetrical", coning::is_symmetrical(f)}};
    const auto mpath = coning::manifest_path_for(o.out);
    write_json_file(mpath, manifest);
    std::cout << "wrote " << o.out << "\nmanifest " << mpath.string() << "\n";
    return 0;
}

int run_convert(const std::string& direction, const std::string& in_path,
                const std::string& out_path) {
    const auto vf = coning::read_vector_file(in_path);
    json manifest = {{"construction", "convert"},
                     {"parameters", {{"direction", direction}, {"input", in_path}}}};
    if (direction == "f2h") {
        if (vf.kind != coning::VectorKind::f) {
            throw std::runtime_error("f2h expects an fvector file: " + in_path);
        }
        const HVector h = coning::f_to_h(FVector(vf.components));
        coning::write_vector_file(out_path, coning::VectorKind::h, h.components());
        manifest["vector"] = coning::describe_vector(h.components());
    } else if (direction == "h2f") {
        if (vf.kind != coning::VectorKind::h) {
            throw std::runtime_error("h2f expects an hvector file: " + in_path);
        }
        const FVector f = coning::h_to_f(HVector(vf.components));
        coning::write_vector_file(out_path, coning::VectorKind::f, f.components());
        manifest["vector"] = coning::describe_vector(f.components());
    } else {
        throw UsageError("direction must be f2h or h2f");
    }
    const auto mpath = coning::manifest_path_for(out_path);
    write_json_file(mpath, manifest);
    std::cout << "wrote " << out_path << "\nmanifest " << mpath.string() << "\n";
    return 0;
}

int run_certify(const std::string& in_path, int dimension, const std::string& report_path,
                bool strict) {
    const auto vf = coning::read_vector_file(in_path);
    json report;
    bool ok = true;
    if (vf.kind == coning::VectorKind::h) {
        const bool ds = coning::check_dehn_sommerville(HVector(vf.components));
        report = {{"input", "hvector"}, {"dehn_sommerville", ds}, {"threshold", nullptr}};
        ok = ds;
    } else {
        const FVector f(vf.components);
        const int d = dimension > 0 ? dimension : static_cast<int>(f.size());
        const FVector profile = coning::complex_to_polytope_profile(f);
        const auto mc = coning::check_mcmullen(profile, d);
        report["input"] = "fvector";
        report["dimension"] = d;
        report["conditions"] = {{"symmetric", mc.symmetric_ok},
                                {"monotone", mc.monotone_ok},
                                {"growth", mc.growth_ok}};
        if (mc.first_violation) {
            static const char* names[] = {"", "symmetric", "monotone", "growth"};
            report["first_violation"] = {
                {"condition", names[static_cast<int>(mc.first_violation->first)]},
                {"index", mc.first_violation->second}};
        } else {
            report["first_violation"] = nullptr;
        }
        report["dehn_sommerville"] =
            coning::check_dehn_sommerville(coning::f_to_h(f));
        report["vertex_equation_holds"] = coning::vertex_equation_holds(profile, d);
        if (f.size() >= 2 && f[1] >= 1 && f[0].fits_slong_p() && f[1].fits_slong_p()) {
            const auto threshold =
                coning::cone_failure_threshold(f[0].get_si(), f[1].get_si());
            report["threshold"] = threshold ? json(threshold->str()) : json(nullptr);
        } else {
            report["threshold"] = nullptr;
        }
        ok = mc.pass();
    }
    if (report_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        write_json_file(report_path, report);
        std::cout << "report " << report_path << "\n";
    }
    if (strict && !ok) throw ThresholdFailure("certification failed");
    return 0;
}

int run_encode(const std::string& in_path, const std::string& format, const std::string& mode,
               const std::string& out_path) {
    const auto vf = coning::read_vector_file(in_path);
    const bool byte_aligned = mode == "byte-aligned";
    if (!byte_aligned && mode != "bitwise") {
        throw UsageError("mode must be bitwise or byte-aligned");
    }
    const auto stream = byte_aligned ? coning::encode_vector_byte_aligned(vf.components)
                                     : coning::encode_vector(vf.components);
    json manifest = {{"construction", "cli-encode"},
                     {"parameters", {{"input", in_path}, {"mode", mode}}},
                     {"source_vector", coning::describe_vector(vf.components)}};
    coning::write_stream(stream, coning::stream_format_from_string(format), out_path,
                         manifest);
    std::cout << "wrote " << out_path << " (" << stream.bit_length() << " bits)\nmanifest "
              << coning::manifest_path_for(out_path).string() << "\n";
    return 0;
}

struct TestOpts {
    std::string in;
    std::string format = "raw";
    coning::sts::SuiteParams params;
    std::string report;
    bool strict = false;
    double min_pass_proportion = 0.94;
};

int run_test(const TestOpts& o) {
    const auto stream =
        coning::read_stream(o.in, coning::stream_format_from_string(o.format));
    const auto report = coning::sts::run_suite(stream, o.params);
    json rj = coning::suite_report_to_json(report);
    rj["input"] = o.in;
    if (o.report.empty()) {
        std::cout << rj.dump(2) << "\n";
    } else {
        write_json_file(o.report, rj);
        std::cout << "report " << o.report << "\n";
    }
    std::cout << "pass_proportion " << report.pass_proportion << " (" << report.passed << "/"
              << report.applicable << "), clustering_fraction " << report.clustering_fraction
              << "\n";
    if (o.strict && report.pass_proportion < o.min_pass_proportion) {
        throw ThresholdFailure("pass proportion below threshold");
    }
    return 0;
}

int run_experiment_cmd(const std::string& config_path, bool full, const std::string& out_dir) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config: " + config_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("bad config json: " + std::string(e.what()));
    }
    auto cfg = coning::ExperimentConfig::from_json(j);
    if (full) cfg.apply_full_scale();
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    const auto table = coning::run_experiment(cfg);
    const auto root = cfg.output_dir / coning::to_string(cfg.kind);
    std::cout << "manifest " << (root / "experiment.manifest.json").string() << "\n";
    std::cout << "variants " << table.variants.size() << "\n";
    for (const auto& v : table.variants) {
        std::cout << v.variant << " pass_proportion " << v.pass_proportion
                  << " clustering_fraction " << v.clustering_fraction << "\n";
    }
    return 0;
}

int run_report(const std::string& dir, const std::string& layout) {
    const auto table = coning::load_reports(dir);
    const auto path =
        coning::aggregate(table, coning::aggregate_layout_from_string(layout), dir);
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bit sequences from coning constructions, with SP 800-22 style testing"};
    app.require_subcommand(1);

    GenerateOpts gen;
    auto* cmd_gen = app.add_subcommand("generate", "build an f-vector from a construction");
    cmd_gen->add_option("--construction", gen.construction,
                        "simplex-dual | pattern | random-graph")
        ->required();
    cmd_gen->add_option("--length", gen.length, "h-vector component count L");
    cmd_gen->add_option("--pattern-value", gen.pattern_value, "non-end h value (pattern)");
    cmd_gen->add_option("--graph-n", gen.graph_n, "vertex count (random-graph)");
    cmd_gen->add_option("--graph-p", gen.graph_p, "edge probability, e.g. 1/2");
    cmd_gen->add_option("--seed", gen.seed, "generator seed (random-graph)");
    cmd_gen->add_option("--cones", gen.cones, "cone applications (default 0)");
    cmd_gen->add_option("--out", gen.out, "output vector file")->required();

    std::string cv_direction, cv_in, cv_out;
    auto* cmd_cv = app.add_subcommand("convert", "convert between f- and h-vectors");
    cmd_cv->add_option("--direction", cv_direction, "f2h | h2f")->required();
    cmd_cv->add_option("--in", cv_in, "input vector file")->required();
    cmd_cv->add_option("--out", cv_out, "output vector file")->required();

    std::string ce_in, ce_report;
    int ce_dim = 0;
    bool ce_strict = false;
    auto* cmd_ce = app.add_subcommand("certify", "run symmetry and g-theorem checks");
    cmd_ce->add_option("--in", ce_in, "vector file")->required();
    cmd_ce->add_option("--dimension", ce_dim, "polytope dimension (default: component count)");
    cmd_ce->add_option("--report", ce_report, "write JSON report here instead of stdout");
    cmd_ce->add_flag("--strict", ce_strict, "exit 3 when certification fails");

    std::string en_in, en_out, en_format = "raw", en_mode = "bitwise";
    auto* cmd_en = app.add_subcommand("encode", "encode a vector file into a bit stream");
    cmd_en->add_option("--in", en_in, "input vector file")->required();
    cmd_en->add_option("--format", en_format, "raw | ascii (default raw)");
    cmd_en->add_option("--mode", en_mode, "bitwise | byte-aligned (default bitwise)");
    cmd_en->add_option("--out", en_out, "output stream file")->required();

    TestOpts t;
    auto* cmd_t = app.add_subcommand("test", "run the statistical test suite on a stream");
    cmd_t->add_option("--in", t.in, "input stream file")->required();
    cmd_t->add_option("--format", t.format, "raw | ascii (default raw)");
    cmd_t->add_option("--alpha", t.params.alpha, "significance level (default 0.01)");
    cmd_t->add_option("--block-frequency-m", t.params.block_frequency_m, "block length");
    cmd_t->add_option("--approx-entropy-m", t.params.approx_entropy_m, "pattern length");
    cmd_t->add_option("--serial-m", t.params.serial_m, "pattern length");
    cmd_t->add_option("--linear-complexity-m", t.params.linear_complexity_m, "block length");
    cmd_t->add_option("--report", t.report, "write JSON report here");
    cmd_t->add_flag("--strict", t.strict, "exit 3 when the pass proportion is too low");
    cmd_t->add_option("--min-pass-proportion", t.min_pass_proportion,
                      "threshold for --strict (default 0.94)");

    std::string ex_config, ex_out;
    bool ex_full = false;
    auto* cmd_ex = app.add_subcommand("experiment", "run a config-driven sweep");
    cmd_ex->add_option("--config", ex_config, "experiment config JSON")->required();
    cmd_ex->add_flag("--full", ex_full, "full-scale ranges (~10 Mbit streams)");
    cmd_ex->add_option("--out", ex_out, "override the config's output directory");

    std::string rp_dir, rp_layout = "scatter_csv";
    auto* cmd_rp = app.add_subcommand("report", "aggregate reports from an experiment dir");
    cmd_rp->add_option("--dir", rp_dir, "experiment directory")->required();
    cmd_rp->add_option("--layout", rp_layout, "scatter_csv | sparkline_csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(cmd_gen)) return run_generate(gen);
        if (app.got_subcommand(cmd_cv)) return run_convert(cv_direction, cv_in, cv_out);
        if (app.got_subcommand(cmd_ce))
            return run_certify(ce_in, ce_dim, ce_report, ce_strict);
        if (app.got_subcommand(cmd_en)) return run_encode(en_in, en_format, en_mode, en_out);
        if (app.got_subcommand(cmd_t)) return run_test(t);
        if (app.got_subcommand(cmd_ex)) return run_experiment_cmd(ex_config, ex_full, ex_out);
        if (app.got_subcommand(cmd_rp)) return run_report(rp_dir, rp_layout);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const ThresholdFailure& e) {
        std::cerr << "threshold failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
