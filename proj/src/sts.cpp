#include <coning/sts.hpp>

#include <coning/special_functions.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace coning::sts {

namespace {

TestResult skipped(std::string name, std::string reason) {
    TestResult r;
    r.test_name = std::move(name);
    r.skipped = true;
    r.skip_reason = std::move(reason);
    return r;
}

void finish(TestResult& r, double alpha) {
    r.passed = !r.p_values.empty() &&
               std::all_of(r.p_values.begin(), r.p_values.end(),
                           [alpha](double p) { return p >= alpha; });
}

double log2_floor(std::size_t n) {
    return std::floor(std::log2(static_cast<double>(n)));
}

}  // namespace

Bits unpack(const BitStream& stream) {
    Bits bits(stream.bit_length());
    for (std::uint64_t i = 0; i < stream.bit_length(); ++i) {
        bits[i] = stream.bit(i) ? 1 : 0;
    }
    return bits;
}

TestResult frequency_monobit(const Bits& bits, const SuiteParams& params) {
    const std::size_t n = bits.size();
    if (n == 0) return skipped("frequency_monobit", "empty stream");
    TestResult r;
    r.test_name = "frequency_monobit";
    r.parameters["n"] = static_cast<double>(n);
    std::int64_t sum = 0;
    for (std::uint8_t b : bits) sum += 2 * static_cast<int>(b) - 1;
    const double s_obs = std::fabs(static_cast<double>(sum)) / std::sqrt(static_cast<double>(n));
    r.p_values.push_back(special::erfc(s_obs / std::sqrt(2.0)));
    if (n < 100) {
        r.advisory = true;
        r.advisory_reason = "recommended n >= 100";
    }
    finish(r, params.alpha);
    return r;
}

TestResult block_frequency(const Bits& bits, const SuiteParams& params) {
    const std::size_t n = bits.size();
    const int M = params.block_frequency_m;
    if (M < 1) return skipped("block_frequency", "block length must be >= 1");
    const std::size_t N = n / static_cast<std::size_t>(M);
    if (N == 0) return skipped("block_frequency", "stream shorter than one block");
    TestResult r;
    r.test_name = "block_frequency";
    r.parameters["M"] = M;
    r.parameters["N"] = static_cast<double>(N);
    double chi2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t ones = 0;
        for (int j = 0; j < M; ++j) ones += bits[i * M + j];
        const double pi = static_cast<double>(ones) / M;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * M;
    r.p_values.push_back(special::gamma_q(static_cast<double>(N) / 2.0, chi2 / 2.0));
    if (!(n >= 100 && M >= 20 && static_cast<double>(M) > 0.01 * n && N < 100)) {
        r.advisory = true;
        r.advisory_reason = "outside recommended M/N ranges";
    }
    finish(r, params.alpha);
    return r;
}

TestResult cumulative_sums(const Bits& bits, const SuiteParams& params) {
    const std::size_t n = bits.size();
    if (n == 0) return skipped("cumulative_sums", "empty stream");
    TestResult r;
    r.test_name = "cumulative_sums";
    r.parameters["n"] = static_cast<double>(n);
    const double sqn = std::sqrt(static_cast<double>(n));
    for (int mode = 0; mode < 2; ++mode) {
        std::int64_t sum = 0;
        std::int64_t z = 0;
        for (std::size_t idx = 0; idx < n; ++idx) {
            const std::uint8_t b = mode == 0 ? bits[idx] : bits[n - 1 - idx];
            sum += 2 * static_cast<int>(b) - 1;
            z = std::max(z, sum < 0 ? -sum : sum);
        }
        const double zn = static_cast<double>(z);
        double sum1 = 0.0;
        {
            const long start = static_cast<long>(std::ceil((-(static_cast<double>(n) / zn) + 1.0) / 4.0));
            const long finish_k = static_cast<long>(std::floor(((static_cast<double>(n) / zn) - 1.0) / 4.0));
            for (long k = start; k <= finish_k; ++k) {
                sum1 += special::normal_cdf((4.0 * k + 1.0) * zn / sqn) -
                        special::normal_cdf((4.0 * k - 1.0) * zn / sqn);
            }
        }
        double sum2 = 0.0;
        {
            const long start = static_cast<long>(std::ceil((-(static_cast<double>(n) / zn) - 3.0) / 4.0));
            const long finish_k = static_cast<long>(std::floor(((static_cast<double>(n) / zn) - 1.0) / 4.0));
            for (long k = start; k <= finish_k; ++k) {
                sum2 += special::normal_cdf((4.0 * k + 3.0) * zn / sqn) -
                        special::normal_cdf((4.0 * k + 1.0) * zn / sqn);
            }
        }
        double p = 1.0 - sum1 + sum2;
        p = std::clamp(p, 0.0, 1.0);
        r.p_values.push_back(p);
    }
    if (n < 100) {
        r.advisory = true;
        r.advisory_reason = "recommended n >= 100";
    }
    finish(r, params.alpha);
    return r;
}

TestResult runs(const Bits& bits, const SuiteParams& params) {
    const std::size_t n = bits.size();
    if (n < 2) return skipped("runs", "need at least two bits");
    TestResult r;
    r.test_name = "runs";
    r.parameters["n"] = static_cast<double>(n);
    const double ones = static_cast<double>(
        std::accumulate(bits.begin(), bits.end(), std::size_t{0}));
    const double pi = ones / static_cast<double>(n);
    const double tau = 2.0 / std::sqrt(static_cast<double>(n));
    r.parameters["pi"] = pi;
    if (std::fabs(pi - 0.5) >= tau) {
        // Frequency prerequisite failed; the test reports 0 rather than
        // skipping.
        r.parameters["prerequisite_met"] = 0.0;
        r.p_values.push_back(0.0);
        finish(r, params.alpha);
        return r;
    }
    r.parameters["prerequisite_met"] = 1.0;
    std::size_t v_obs = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (bits[i] != bits[i + 1]) ++v_obs;
    }
    const double num = std::fabs(static_cast<double>(v_obs) - 2.0 * n * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
    r.p_values.push_back(special::erfc(num / den));
    if (n < 100) {
        r.advisory = true;
        r.advisory_reason = "recommended n >= 100";
    }
    finish(r, params.alpha);
    return r;
}

TestResult longest_run_of_ones(const Bits& bits, const SuiteParams& params) {
    const std::size_t n = bits.size();
    if (n < 128) return skipped("longest_run_of_ones", "need at least 128 bits");
    int M;
    int K;
    std::vector<double> pi;
    int lowest;  // category floor: longest run <= lowest maps to class 0
    if (n < 6272) {
        M = 8;
        K = 3;
        lowest = 1;
        pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
    } else if (n < 750000) {
        M = 128;
        K = 5;
        lowest = 4;
        pi = {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071,
              0.112398847};
    } else {
        M = 10000;
        K = 6;
        lowest = 10;
        pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
    }
    const std::size_t N = n / static_cast<std::size_t>(M);
    std::vector<std::size_t> nu(K + 1, 0);
    for (std::size_t i = 0; i < N; ++i) {
        int longest = 0;
        int cur = 0;
        for (int j = 0; j < M; ++j) {
            if (bits[i * M + j]) {
                ++cur;
                longest = std::max(longest, cur);
            } else {
                cur = 0;
            }
        }
        int cls = longest - lowest;
        cls = std::clamp(cls, 0, K);
        ++nu[cls];
    }
    double chi2 = 0.0;
    for (int k = 0; k <= K; ++k) {
        const double expect = static_cast<double>(N) * pi[k];
        const double d = static_cast<double>(nu[k]) - expect;
        chi2 += d * d / expect;
    }
    TestResult r;
    r.test_name = "longest_run_of_ones";
    r.parameters["M"] = M;
    r.parameters["N"] = static_cast<double>(N);
    r.parameters["K"] = K;
    r.p_values.push_back(special::gamma_q(K / 2.0, chi2 / 2.0));
    finish(r, params.alpha);
    return r;
}

int rank_gf2_32(std::array<std::uint32_t, 32> rows) {
    int rank = 0;
    for (int col = 0; col < 32 && rank < 32; ++col) {
        const std::uint32_t mask = 1u << col;
        int pivot = -1;
        for (int row = rank; row < 32; ++row) {
            if (rows[row] & mask) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int row = 0; row < 32; ++row) {
            if (row != rank && (rows[row] & mask)) rows[row] ^= rows[rank];
        }
        ++rank;
    }
    return rank;
}

namespace {

// P(rank = r) for a random 32x32 matrix over GF(2).
double rank_probability_32(int r) {
    constexpr int m = 32, q = 32;
    double prod = 1.0;
    for (int i = 0; i < r; ++i) {
        prod *= (1.0 - std::ldexp(1.0, i - q)) * (1.0 - std::ldexp(1.0, i - m)) /
                (1.0 - std::ldexp(1.0, i - r));
    }
    return std::ldexp(prod, r * (q + m - r) - m * q);
}

}  // namespace

TestResult binary_matrix_rank(const Bits& bits, const SuiteParams& params) {
    const std::size_t n = bits.size();
    const std::size_t N = n / 1024;
    if (N < 38) {
        return skipped("binary_matrix_rank", "need at least 38 32x32 matrices (38912 bits)");
    }
    std::size_t f_full = 0, f_minus1 = 0;
    std::array<std::uint32_t, 32> rows;
    for (std::size_t k = 0; k < N; ++k) {
        const std::size_t base = k * 1024;
        for (int i = 0; i < 32; ++i) {
            std::uint32_t w = 0;
            const std::size_t row_base = base + 32 * static_cast<std::size_t>(i);
            for (int j = 0; j < 32; ++j) {
                if (bits[row_base + j]) w |= 1u << j;
            }
            rows[i] = w;
        }
        const int rank = rank_gf2_32(rows);
        if (rank == 32)
            ++f_full;
        else if (rank == 31)
            ++f_minus1;
    }
    const double p32 = rank_probability_32(32);
    const double p31 = rank_probability_32(31);
    const double p30 = 1.0 - p32 - p31;
    const double Nn = static_cast<double>(N);
    const double rest = Nn - static_cast<double>(f_full) - static_cast<double>(f_minus1);
    double chi2 = (f_full - p32 * Nn) * (f_full - p32 * Nn) / (p32 * Nn) +
                  (f_minus1 - p31 * Nn) * (f_minus1 - p31 * Nn) / (p31 * Nn) +
                  (rest - p30 * Nn) * (rest - p30 * Nn) / (p30 * Nn);
    TestResult r;
    r.test_name = "binary_matrix_rank";
    r.parameters["N"] = Nn;
    r.parameters["discarded_bits"] = static_cast<double>(n - N * 1024);
    r.p_values.push_back(std::exp(-chi2 / 2.0));
    finish(r, params.alpha);
    return r;
}

namespace {

// phi^(m) = sum_i pi_i ln pi_i over overlapping m-bit patterns of the
// wrapped sequence.
double apen_phi(const Bits& bits, int m) {
    if (m == 0) return 0.0;
    const std::size_t n = bits.size();
    std::vector<std::uint32_t> counts(std::size_t{1} << m, 0);
    const std::uint32_t mask = (m == 32) ? 0xffffffffu : ((1u << m) - 1u);
    std::uint32_t value = 0;
    for (int j = 0; j < m - 1; ++j) value = ((value << 1) | bits[j % n]) & mask;
    for (std::size_t i = 0; i < n; ++i) {
        value = ((value << 1) | bits[(i + m - 1) % n]) & mask;
        ++counts[value];
    }
    double phi = 0.0;
    for (std::uint32_t c : counts) {
        if (c == 0) continue;
        const double pi = static_cast<double>(c) / static_cast<double>(n);
        phi += pi * std::log(pi);
    }
    return phi;
}

// psi^2_m of the serial test; 0 for m <= 0 by convention.
double serial_psi2(const Bits& bits, int m) {
    if (m <= 0) return 0.0;
    const std::size_t n = bits.size();
    std::vector<std::uint32_t> counts(std::size_t{1} << m, 0);
    const std::uint32_t mask = (m == 32) ? 0xffffffffu : ((1u << m) - 1u);
    std::uint32_t value = 0;
    for (int j = 0; j < m - 1; ++j) value = ((value << 1) | bits[j % n]) & mask;
    for (std::size_t i = 0; i < n; ++i) {
        value = ((value << 1) | bits[(i + m - 1) % n]) & mask;
        ++counts[value];
    }
    double sum = 0.0;
    for (std::uint32_t c : counts) {
        sum += static_cast<double>(c) * static_cast<double>(c);
    }
    return std::ldexp(sum, m) / static_cast<double>(n) - static_cast<double>(n);
}

}  // namespace

TestResult approximate_entropy(const Bits& bits, const SuiteParams& params) {
    const std::size_t n = bits.size();
    const int m = params.approx_entropy_m;
    if (m < 1 || m > 24) return skipped("approximate_entropy", "pattern length out of range");
    if (n < static_cast<std::size_t>(m) + 2) {
        return skipped("approximate_entropy", "stream shorter than pattern length");
    }
    TestResult r;
    r.test_name = "approximate_entropy";
    r.parameters["m"] = m;
    r.parameters["n"] = static_cast<double>(n);
    const double apen = apen_phi(bits, m) - apen_phi(bits, m + 1);
    // apen <= ln 2 mathematically; keep rounding noise out of gamma_q.
    const double chi2 =
        std::max(0.0, 2.0 * static_cast<double>(n) * (std::log(2.0) - apen));
    r.parameters["apen"] = apen;
    r.p_values.push_back(special::gamma_q(std::ldexp(1.0, m - 1), chi2 / 2.0));
    if (m > log2_floor(n) - 5) {
        r.advisory = true;
        r.advisory_reason = "recommended m <= floor(log2 n) - 5";
    }
    finish(r, params.alpha);
    return r;
}

TestResult serial(const Bits& bits, const SuiteParams& params) {
    const std::size_t n = bits.size();
    const int m = params.serial_m;
    if (m < 2 || m > 24) return skipped("serial", "pattern length out of range");
    if (n < static_cast<std::size_t>(m)) {
        return skipped("serial", "stream shorter than pattern length");
    }
    TestResult r;
    r.test_name = "serial";
    r.parameters["m"] = m;
    r.parameters["n"] = static_cast<double>(n);
    const double psi_m = serial_psi2(bits, m);
    const double psi_m1 = serial_psi2(bits, m - 1);
    const double psi_m2 = serial_psi2(bits, m - 2);
    // Both deltas are non-negative mathematically.
    const double del1 = std::max(0.0, psi_m - psi_m1);
    const double del2 = std::max(0.0, psi_m - 2.0 * psi_m1 + psi_m2);
    r.p_values.push_back(special::gamma_q(std::ldexp(1.0, m - 2), del1 / 2.0));
    r.p_values.push_back(special::gamma_q(std::ldexp(1.0, m - 3), del2 / 2.0));
    if (m >= log2_floor(n) - 2) {
        r.advisory = true;
        r.advisory_reason = "recommended m < floor(log2 n) - 2";
    }
    finish(r, params.alpha);
    return r;
}

namespace {

// Parity of (c & (r >> shift)) over nwords words, where r is a packed bit
// array (bit k of word w = bit 64w + k).
int shifted_and_parity(const std::uint64_t* c, std::size_t nwords, const std::uint64_t* r,
                       std::size_t r_words, std::uint64_t shift) {
    const std::size_t word_off = shift / 64;
    const unsigned bit_off = static_cast<unsigned>(shift % 64);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < nwords; ++w) {
        const std::size_t src = word_off + w;
        std::uint64_t window = 0;
        if (src < r_words) window = r[src] >> bit_off;
        if (bit_off != 0 && src + 1 < r_words) window |= r[src + 1] << (64 - bit_off);
        acc ^= c[w] & window;
    }
    return static_cast<int>(__builtin_parityll(acc));
}

}  // namespace

int berlekamp_massey(const std::uint8_t* bits, int n) {
    if (n <= 0) return 0;
    const std::size_t words = static_cast<std::size_t>(n) / 64 + 2;
    // rev holds the block reversed so the discrepancy window is a single
    // shifted slice: rev bit k = bits[n-1-k], hence bits[i - j] = rev bit
    // (n-1-i+j), i.e. c & (rev >> (n-1-i)).
    std::vector<std::uint64_t> rev(words, 0), c(words, 0), b(words, 0), tmp(words, 0);
    for (int k = 0; k < n; ++k) {
        if (bits[n - 1 - k]) rev[k / 64] |= 1ull << (k % 64);
    }
    c[0] = 1;
    b[0] = 1;
    int L = 0;
    int m = -1;
    for (int i = 0; i < n; ++i) {
        const std::size_t active = static_cast<std::size_t>(L) / 64 + 1;
        const int d = shifted_and_parity(c.data(), active, rev.data(), words,
                                         static_cast<std::uint64_t>(n - 1 - i));
        if (d == 0) continue;
        tmp = c;
        // c ^= b << (i - m)
        const int shift = i - m;
        const std::size_t wsh = static_cast<std::size_t>(shift) / 64;
        const unsigned bsh = static_cast<unsigned>(shift % 64);
        for (std::size_t w = words; w-- > 0;) {
            std::uint64_t v = 0;
            if (w >= wsh) {
                v = b[w - wsh] << bsh;
                if (bsh != 0 && w > wsh) v |= b[w - wsh - 1] >> (64 - bsh);
            }
            c[w] ^= v;
        }
        if (2 * L <= i) {
            L = i + 1 - L;
            m = i;
            b = tmp;
        }
    }
    return L;
}

TestResult linear_complexity(const Bits& bits, const SuiteParams& params) {
    const std::size_t n = bits.size();
    const int M = params.linear_complexity_m;
    if (M < 8) return skipped("linear_complexity", "block length must be >= 8");
    const std::size_t N = n / static_cast<std::size_t>(M);
    if (N == 0) return skipped("linear_complexity", "stream shorter than one block");
    static const double pi_classes[7] = {0.010417, 0.03125, 0.125, 0.5,
                                         0.25,     0.0625,  0.020833};
    const double mu = M / 2.0 + (9.0 + ((M + 1) % 2 == 0 ? 1.0 : -1.0)) / 36.0 -
                      (M / 3.0 + 2.0 / 9.0) / std::pow(2.0, M);
    std::array<std::size_t, 7> nu{};
    for (std::size_t i = 0; i < N; ++i) {
        const int L = berlekamp_massey(bits.data() + i * static_cast<std::size_t>(M), M);
        const double sign = (M % 2 == 0) ? 1.0 : -1.0;
        const double t = sign * (static_cast<double>(L) - mu) + 2.0 / 9.0;
        int cls;
        if (t <= -2.5)
            cls = 0;
        else if (t <= -1.5)
            cls = 1;
        else if (t <= -0.5)
            cls = 2;
        else if (t <= 0.5)
            cls = 3;
        else if (t <= 1.5)
            cls = 4;
        else if (t <= 2.5)
            cls = 5;
        else
            cls = 6;
        ++nu[cls];
    }
    double chi2 = 0.0;
    for (int k = 0; k < 7; ++k) {
        const double expect = static_cast<double>(N) * pi_classes[k];
        const double d = static_cast<double>(nu[k]) - expect;
        chi2 += d * d / expect;
    }
    TestResult r;
    r.test_name = "linear_complexity";
    r.parameters["M"] = M;
    r.parameters["N"] = static_cast<double>(N);
    r.p_values.push_back(special::gamma_q(3.0, chi2 / 2.0));
    if (n < 1000000 || N < 200 || M < 500 || M > 5000) {
        r.advisory = true;
        r.advisory_reason = "full validity needs n >= 10^6, 500 <= M <= 5000, N >= 200";
    }
    finish(r, params.alpha);
    return r;
}

SuiteReport run_suite(const BitStream& stream, const SuiteParams& params) {
    const Bits bits = unpack(stream);
    SuiteReport report;
    report.bit_length = stream.bit_length();
    report.alpha = params.alpha;
    // Alphabetical by test name; the report order is fixed by name.
    report.results.push_back(approximate_entropy(bits, params));
    report.results.push_back(binary_matrix_rank(bits, params));
    report.results.push_back(block_frequency(bits, params));
    report.results.push_back(cumulative_sums(bits, params));
    report.results.push_back(frequency_monobit(bits, params));
    report.results.push_back(linear_complexity(bits, params));
    report.results.push_back(longest_run_of_ones(bits, params));
    report.results.push_back(runs(bits, params));
    report.results.push_back(serial(bits, params));

    for (const TestResult& r : report.results) {
        if (r.skipped) continue;
        ++report.applicable;
        if (r.passed) ++report.passed;
        for (double p : r.p_values) {
            ++report.p_value_count;
            if (p < 0.01 || p > 0.99) ++report.clustered_count;
        }
    }
    report.pass_proportion =
        report.applicable == 0
            ? 0.0
            : static_cast<double>(report.passed) / static_cast<double>(report.applicable);
    report.clustering_fraction =
        report.p_value_count == 0
            ? 0.0
            : static_cast<double>(report.clustered_count) /
                  static_cast<double>(report.p_value_count);
    return report;
}

}  // namespace coning::sts
