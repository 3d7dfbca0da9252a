// Acceptance suite: every release gate in one binary, one line per criterion.

#include <coning/bitstream.hpp>
#include <coning/combinatorics.hpp>
#include <coning/experiments.hpp>
#include <coning/gtheorem.hpp>
#include <coning/special_functions.hpp>
#include <coning/sts.hpp>

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

using namespace coning;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string hex(const std::vector<std::uint8_t>& bytes) {
    std::string out;
    char buf[3];
    for (auto b : bytes) {
        std::snprintf(buf, sizeof(buf), "%02x", b);
        out += buf;
    }
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return "<unreadable:" + p.string() + ">";
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "coning_acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// --- criterion 1: symmetry theorem -----------------------------------------

Outcome symmetry_theorem() {
    Outcome o;
    for (unsigned L = 2; L <= 300; ++L) {
        const FVector f = simplex_dual_f(L);
        if (!is_symmetrical(f)) {
            o.fail("not symmetrical at L=" + std::to_string(L));
            break;
        }
        if (f[0] != L || f[f.size() - 1] != L) {
            o.fail("endpoint components differ from L at L=" + std::to_string(L));
            break;
        }
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (f[j] != f[f.size() - 1 - j]) {
                o.fail("component mismatch at L=" + std::to_string(L));
                break;
            }
        }
    }
    if (o.ok) o.note("L=2..300 exact");
    return o;
}

// --- criterion 2: dual identities -------------------------------------------

Outcome dual_identities() {
    Outcome o;
    for (unsigned L = 2; L <= 300 && o.ok; ++L) {
        const HVector h = f_to_h(simplex_dual_f(L));
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (h[i] != 1) {
                o.fail("h not all ones at L=" + std::to_string(L));
                break;
            }
        }
    }
    SplitMix64 gen(0x0accede5u);
    int trials = 0;
    for (; trials < 1000 && o.ok; ++trials) {
        const std::size_t n = 1 + gen.next() % 64;
        std::vector<BigInt> comps(n);
        for (auto& c : comps) c = gen.next();  // < 2^64
        const FVector f(comps);
        if (h_to_f(f_to_h(f)) != f) {
            o.fail("round trip failed at trial " + std::to_string(trials));
        }
    }
    if (o.ok) o.note("all-ones L=2..300; 1000 round trips exact");
    return o;
}

// --- criterion 3: cone oracle equivalence -----------------------------------

Outcome cone_oracle() {
    Outcome o;
    int graphs = 0;
    const std::int64_t ps[][2] = {{1, 5}, {1, 2}, {4, 5}};  // 0.2, 0.5, 0.8
    for (std::uint64_t seed = 1; seed <= 200 && o.ok; ++seed) {
        const int n = 1 + static_cast<int>(seed % 8);
        const auto& pr = ps[seed % 3];
        const auto edges = oracles::reference_graph_edges(n, pr[0], pr[1], seed);
        const auto g = random_graph(n, Rational(pr[0], pr[1]), RngConfig{seed});
        if (g.num_edges != edges.size()) {
            o.fail("edge count disagrees with documented draw order at seed " +
                   std::to_string(seed));
            break;
        }
        oracles::SetComplex complex = oracles::SetComplex::from_graph(n, edges);
        FVector f = f_of_graph(g);
        ++graphs;
        for (unsigned j = 0; j <= 4; ++j) {
            if (f.components() != complex.f_vector()) {
                o.fail("mismatch at seed " + std::to_string(seed) +
                       ", j=" + std::to_string(j));
                break;
            }
            complex = complex.cone();
            f = cone_f(f);
        }
    }
    if (o.ok) o.note(std::to_string(graphs) + " graphs x j=0..4 exact");
    return o;
}

// --- criterion 4: proposition threshold --------------------------------------

bool vertex_equation_on_cones(std::int64_t s, std::int64_t t, unsigned max_j,
                              Outcome& o) {
    const auto threshold = cone_failure_threshold(s, t);
    FVector f{static_cast<long>(s), static_cast<long>(t)};
    for (unsigned j = 0; j <= max_j; ++j) {
        const bool holds =
            vertex_equation_holds(complex_to_polytope_profile(f), static_cast<int>(j) + 2);
        const bool expected = threshold.has_value() && threshold->den == 1 &&
                              threshold->num >= 0 &&
                              threshold->num == static_cast<std::int64_t>(j);
        if (holds != expected) {
            o.fail("s=" + std::to_string(s) + ", t=" + std::to_string(t) +
                   ", j=" + std::to_string(j) + ": equation " +
                   (holds ? "holds" : "fails") + " unexpectedly");
            return false;
        }
        f = cone_f(f);
    }
    return true;
}

Outcome proposition_threshold() {
    Outcome o;
    if (!vertex_equation_on_cones(4, 6, 50, o)) return o;  // K_4, threshold j=1
    if (cone_failure_threshold(4, 6) != Rational(1, 1)) {
        o.fail("K_4 threshold is not 1");
        return o;
    }
    SplitMix64 gen(20240807);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t s = 3 + static_cast<std::int64_t>(gen.next() % 8);  // 3..10
        const std::int64_t tmax = s * (s - 1) / 2;
        const std::int64_t t = 1 + static_cast<std::int64_t>(gen.next() % tmax);
        if (!vertex_equation_on_cones(s, t, 50, o)) return o;
    }
    o.note("K_4 plus 50 random (s,t), j=0..50 exact");
    return o;
}

// --- criterion 5: mcmullen certifier ------------------------------------------

Outcome mcmullen_certifier() {
    Outcome o;
    for (int d = 2; d <= 50; ++d) {
        const FVector profile =
            complex_to_polytope_profile(simplex_dual_f(static_cast<unsigned>(d) + 1));
        const auto report = check_mcmullen(profile, d);
        if (!report.pass()) {
            o.fail("simplex profile rejected at d=" + std::to_string(d));
            return o;
        }
        const bool ds =
            check_dehn_sommerville(f_to_h(polytope_to_complex_profile(profile)));
        if (report.symmetric_ok != ds) {
            o.fail("condition 1 disagrees with Dehn-Sommerville at d=" +
                   std::to_string(d));
            return o;
        }
    }
    for (int i = 1; i <= 8; ++i) {
        for (long a = 1; a <= 10000; ++a) {
            const auto rep = macaulay_rep(a, i);
            BigInt sum = 0;
            for (std::size_t t = 0; t < rep.size(); ++t) {
                if (t > 0 && rep[t].index >= rep[t - 1].index) {
                    o.fail("indices not strictly decreasing");
                    return o;
                }
                if (rep[t].index < rep[t].lower || rep[t].lower < 1) {
                    o.fail("invalid term bounds");
                    return o;
                }
                sum += binomial(rep[t].index.get_ui(),
                                static_cast<std::int64_t>(rep[t].lower));
            }
            if (sum != a) {
                o.fail("reconstruction failed at a=" + std::to_string(a) +
                       ", i=" + std::to_string(i));
                return o;
            }
        }
    }
    o.note("simplex profiles d<=50; macaulay exhaustive a<=10^4, i<=8");
    return o;
}

// --- criterion 6: bit codec ---------------------------------------------------

Outcome bit_codec() {
    Outcome o;
    const auto small = encode_vector({5, 3});
    if (small.bit_length() != 5 || hex(small.payload()) != "b8") {
        o.fail("[5,3] does not encode to 0xb8/5 bits");
    }
    const auto golden = encode_vector(simplex_dual_f(11).components());
    if (golden.bit_length() != 72 || hex(golden.payload()) != "bde9695cee752a977b") {
        o.fail("simplex_dual_f(11) golden stream changed: " + hex(golden.payload()));
    }
    {
        const auto g = random_graph(24, Rational(1, 2), RngConfig{7});
        const auto f = iterate_cone(f_of_graph(g), 6);
        const auto stream = encode_vector(f.components());
        const std::string expected = "f4a2594fb61144c69d12";
        if (hex(stream.payload()) != expected || stream.bit_length() != 79) {
            o.fail("random-graph golden stream changed: " + hex(stream.payload()) +
                   " (" + std::to_string(stream.bit_length()) + " bits)");
        }
    }
    const auto dir = fresh_dir("codec");
    SplitMix64 gen(0xc0dec);
    for (int trial = 0; trial < 10000 && o.ok; ++trial) {
        BitStream s;
        const std::size_t nbits = gen.next() % 160;
        for (std::size_t i = 0; i < nbits; ++i) s.append_bit(gen.next() & 1);
        const auto fmt = (trial % 2 == 0) ? StreamFormat::raw : StreamFormat::ascii;
        const auto path = dir / "stream.bin";
        write_stream(s, fmt, path);
        if (read_stream(path, fmt) != s) {
            o.fail("round trip failed at trial " + std::to_string(trial));
        }
    }
    if (o.ok) o.note("goldens byte-exact; 10^4 round trips");
    return o;
}

// --- criterion 7: sts fidelity --------------------------------------------------

Outcome sts_fidelity() {
    Outcome o;
    auto bits_of = [](const std::string& s) {
        sts::Bits out;
        for (char c : s) out.push_back(c == '1' ? 1 : 0);
        return out;
    };
    const sts::SuiteParams base;
    struct Case {
        const char* name;
        double expected;
        std::function<double()> run;
    };
    sts::SuiteParams bf = base;
    bf.block_frequency_m = 3;
    sts::SuiteParams ae = base;
    ae.approx_entropy_m = 3;
    const Case cases[] = {
        {"monobit", 0.527089,
         [&] { return sts::frequency_monobit(bits_of("1011010101"), base).p_values[0]; }},
        {"block_frequency", 0.801252,
         [&] { return sts::block_frequency(bits_of("0110011010"), bf).p_values[0]; }},
        {"runs", 0.147232,
         [&] { return sts::runs(bits_of("1001101011"), base).p_values[0]; }},
        {"approximate_entropy", 0.261961,
         [&] { return sts::approximate_entropy(bits_of("0100110101"), ae).p_values[0]; }},
    };
    char buf[64];
    for (const auto& c : cases) {
        const double got = c.run();
        if (std::fabs(got - c.expected) > 1e-4) {
            std::snprintf(buf, sizeof(buf), "%s: got %.6f, want %.6f", c.name, got,
                          c.expected);
            o.fail(buf);
        }
    }
    if (o.ok) o.note("4 reference p-values within 1e-4");
    return o;
}

// --- criterion 8: central claim at desk scale -----------------------------------

Outcome central_claim() {
    Outcome o;
    auto cfg = ExperimentConfig::desk_defaults(ExperimentKind::length_sweep);
    cfg.length_range = {551, 600};
    cfg.output_dir = fresh_dir("central_claim");
    const auto table = experiment_lengths(cfg);
    if (table.variants.size() != 50) {
        o.fail("expected 50 streams");
        return o;
    }
    double proportion_sum = 0.0;
    double min_proportion = 1.0;
    std::size_t clustered = 0, p_count = 0;
    std::map<std::string, std::pair<int, int>> per_test;  // passed / applicable
    for (const auto& v : table.variants) {
        if (v.bit_length < 100000) {
            o.fail(v.variant + " has fewer than 10^5 bits");
            return o;
        }
        if (!v.source_symmetrical || !v.source_dehn_sommerville) {
            o.fail(v.variant + " lost its symmetry certificate");
            return o;
        }
        proportion_sum += v.pass_proportion;
        min_proportion = std::min(min_proportion, v.pass_proportion);
    }
    for (const auto& row : table.rows) {
        if (row.skipped) continue;
        ++p_count;
        if (row.p_value < 0.01 || row.p_value > 0.99) ++clustered;
    }
    // Per-test pass rate across streams needs per-test pass flags; derive
    // from rows (a test passes when all its p-values clear alpha).
    std::map<std::pair<std::string, std::string>, bool> test_pass;
    for (const auto& row : table.rows) {
        if (row.skipped) continue;
        auto key = std::make_pair(row.variant, row.test_name);
        auto [it, inserted] = test_pass.try_emplace(key, true);
        it->second = it->second && row.p_value >= cfg.suite.alpha;
    }
    for (const auto& [key, passed] : test_pass) {
        auto& [pass_count, total] = per_test[key.second];
        ++total;
        if (passed) ++pass_count;
    }

    const double mean_proportion = proportion_sum / 50.0;
    const double clustering = static_cast<double>(clustered) / p_count;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "mean pass proportion %.4f (min %.4f), clustering %.4f over %zu p-values",
                  mean_proportion, min_proportion, clustering, p_count);
    o.note(buf);
    if (min_proportion < 0.94) o.fail("a stream's pass proportion is below 0.94");
    if (mean_proportion < 0.94) o.fail("mean pass proportion below 0.94");
    for (const auto& [name, counts] : per_test) {
        const double rate = static_cast<double>(counts.first) / counts.second;
        if (rate < 0.94) {
            std::snprintf(buf, sizeof(buf), "%s passes only %.3f of streams",
                          name.c_str(), rate);
            o.fail(buf);
        }
    }
    if (clustering >= 0.05) o.fail("clustering fraction at or above 0.05");
    return o;
}

// --- criterion 9: determinism ------------------------------------------------

Outcome determinism() {
    Outcome o;
    auto cfg = ExperimentConfig::desk_defaults(ExperimentKind::length_sweep);
    cfg.length_range = {551, 553};
    cfg.output_dir = fresh_dir("det_a");
    experiment_lengths(cfg);

    nlohmann::json manifest;
    {
        std::ifstream in(cfg.output_dir / "length_sweep" / "experiment.manifest.json");
        in >> manifest;
    }
    auto replay = ExperimentConfig::from_json(manifest);
    replay.output_dir = fresh_dir("det_b");
    run_experiment(replay);

    const fs::path a = cfg.output_dir / "length_sweep";
    const fs::path b = replay.output_dir / "length_sweep";
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), a);
        if (rel == "experiment.manifest.json") continue;  // carries output_dir
        if (slurp(entry.path()) != slurp(b / rel)) {
            o.fail("replay differs at " + rel.string());
            return o;
        }
    }
    o.note("manifest replay byte-identical");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"symmetry theorem", 1.0, symmetry_theorem},
        {"dual identities", 10.0, dual_identities},
        {"cone oracle equivalence", 60.0, cone_oracle},
        {"proposition threshold", 1.0, proposition_threshold},
        {"mcmullen certifier", 30.0, mcmullen_certifier},
        {"bit codec", 10.0, bit_codec},
        {"sts fidelity", 1.0, sts_fidelity},
        {"central claim (desk scale)", 600.0, central_claim},
        {"determinism", 120.0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > c.limit_seconds) {
            o.fail("exceeded time limit of " + std::to_string(c.limit_seconds) + "s");
        }
        std::printf("[%s] %-28s %6.2fs  %s\n", o.ok ? "PASS" : "FAIL", c.name, elapsed,
                    o.detail.c_str());
        if (!o.ok) ++failures;
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
