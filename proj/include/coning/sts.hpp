#pragma once

#include <coning/bitstream.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace coning::sts {

struct SuiteParams {
    double alpha = 0.01;
    int block_frequency_m = 128;    // block length M
    int approx_entropy_m = 10;      // pattern length m
    int serial_m = 14;              // pattern length m
    int linear_complexity_m = 500;  // block length M
    // binary matrix rank is fixed at 32x32
};

/// Outcome of one statistical test on one stream. A skipped test carries no
/// p-values, only the reason; an advisory result was computed below the
/// SP 800-22 recommended stream length or parameter range.
struct TestResult {
    std::string test_name;
    std::vector<double> p_values;
    bool passed = false;  // all p-values >= alpha
    bool skipped = false;
    std::string skip_reason;
    bool advisory = false;
    std::string advisory_reason;
    std::map<std::string, double> parameters;
};

struct SuiteReport {
    std::uint64_t bit_length = 0;
    double alpha = 0.01;
    std::vector<TestResult> results;  // fixed order by test name
    int applicable = 0;               // tests that were not skipped
    int passed = 0;
    double pass_proportion = 0.0;  // passed / applicable
    std::size_t p_value_count = 0;
    std::size_t clustered_count = 0;  // p in [0, 0.01) u (0.99, 1]
    double clustering_fraction = 0.0;
};

/// One 0/1 byte per bit; the representation the individual tests consume.
using Bits = std::vector<std::uint8_t>;

Bits unpack(const BitStream& stream);

TestResult frequency_monobit(const Bits& bits, const SuiteParams& params);
TestResult block_frequency(const Bits& bits, const SuiteParams& params);
TestResult cumulative_sums(const Bits& bits, const SuiteParams& params);
TestResult runs(const Bits& bits, const SuiteParams& params);
TestResult longest_run_of_ones(const Bits& bits, const SuiteParams& params);
TestResult binary_matrix_rank(const Bits& bits, const SuiteParams& params);
TestResult approximate_entropy(const Bits& bits, const SuiteParams& params);
TestResult serial(const Bits& bits, const SuiteParams& params);
TestResult linear_complexity(const Bits& bits, const SuiteParams& params);

// Stream-level convenience signatures.
inline TestResult frequency_monobit(const BitStream& s, const SuiteParams& p) {
    return frequency_monobit(unpack(s), p);
}
inline TestResult block_frequency(const BitStream& s, const SuiteParams& p) {
    return block_frequency(unpack(s), p);
}
inline TestResult cumulative_sums(const BitStream& s, const SuiteParams& p) {
    return cumulative_sums(unpack(s), p);
}
inline TestResult runs(const BitStream& s, const SuiteParams& p) {
    return runs(unpack(s), p);
}
inline TestResult longest_run_of_ones(const BitStream& s, const SuiteParams& p) {
    return longest_run_of_ones(unpack(s), p);
}
inline TestResult binary_matrix_rank(const BitStream& s, const SuiteParams& p) {
    return binary_matrix_rank(unpack(s), p);
}
inline TestResult approximate_entropy(const BitStream& s, const SuiteParams& p) {
    return approximate_entropy(unpack(s), p);
}
inline TestResult serial(const BitStream& s, const SuiteParams& p) {
    return serial(unpack(s), p);
}
inline TestResult linear_complexity(const BitStream& s, const SuiteParams& p) {
    return linear_complexity(unpack(s), p);
}

/// Runs every test above, in name order, over a shared unpacking of the
/// stream. Skipped tests are recorded and excluded from the pass proportion;
/// the clustering fraction flags p-values piling up near 0 or 1.
SuiteReport run_suite(const BitStream& stream, const SuiteParams& params);

/// GF(2) rank of a 32x32 matrix, rows as 32-bit words (bit j = column j).
int rank_gf2_32(std::array<std::uint32_t, 32> rows);

/// Berlekamp-Massey linear complexity of bits[0..n).
int berlekamp_massey(const std::uint8_t* bits, int n);

}  // namespace coning::sts
