#include <coning/combinatorics.hpp>

#include <stdexcept>

namespace coning {

std::uint64_t fnv1a64_of_components(const std::vector<BigInt>& components) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](char c) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    };
    for (const BigInt& v : components) {
        for (char c : v.get_str()) mix(c);
        mix(',');
    }
    return h;
}

FVector::FVector(std::vector<BigInt> components) : comps_(std::move(components)) {
    if (comps_.empty()) {
        throw std::invalid_argument("f-vector needs at least one component");
    }
    for (const BigInt& c : comps_) {
        if (c < 0) throw std::invalid_argument("f-vector components must be non-negative");
    }
}

FVector::FVector(std::initializer_list<long> components)
    : FVector(std::vector<BigInt>(components.begin(), components.end())) {}

HVector::HVector(std::vector<BigInt> components) : comps_(std::move(components)) {
    if (comps_.empty()) {
        throw std::invalid_argument("h-vector needs at least one component");
    }
}

HVector::HVector(std::initializer_list<long> components)
    : HVector(std::vector<BigInt>(components.begin(), components.end())) {}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

FVector cone_f(const FVector& f) {
    const std::size_t n = f.size();
    std::vector<BigInt> out(n + 1);
    out[0] = f[0] + 1;
    for (std::size_t i = 1; i < n; ++i) out[i] = f[i - 1] + f[i];
    out[n] = f[n - 1];
    return FVector(std::move(out));
}

FVector iterate_cone(const FVector& f, unsigned j) {
    FVector cur = f;
    for (unsigned k = 0; k < j; ++k) cur = cone_f(cur);
    return cur;
}

BigInt binomial(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    std::uint64_t kk = static_cast<std::uint64_t>(k);
    if (kk > n - kk) kk = n - kk;
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= kk; ++i) {
        mpz_mul_ui(result.get_mpz_t(), result.get_mpz_t(), n - kk + i);
        mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), i);
    }
    return result;
}

FVector simplex_dual_f(unsigned L) {
    if (L < 2) throw std::invalid_argument("simplex dual needs h-length >= 2");
    const unsigned n = L - 1;
    std::vector<BigInt> out(n);
    // Walk row n+1 of Pascal's triangle: C(n+1, j+2) = C(n+1, j+1)(n-j)/(j+2).
    out[0] = n + 1;
    for (unsigned j = 0; j + 1 < n; ++j) {
        out[j + 1] = out[j];
        mpz_mul_ui(out[j + 1].get_mpz_t(), out[j + 1].get_mpz_t(), n - j);
        mpz_divexact_ui(out[j + 1].get_mpz_t(), out[j + 1].get_mpz_t(), j + 2);
    }
    return FVector(std::move(out));
}

HVector f_to_h(const FVector& f) {
    const std::size_t n = f.size();
    std::vector<BigInt> h(n + 1);
    BigInt binom, term;
    for (std::size_t k = 0; k <= n; ++k) {
        // Term i carries C(n-i, n-k); start at i = 0 with C(n, n-k) = C(n, k)
        // and step down via C(n-i-1, n-k) = C(n-i, n-k)(k-i)/(n-i).
        binom = binomial(n, static_cast<std::int64_t>(k));
        BigInt acc = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            term = (i == 0) ? binom : BigInt(binom * f[i - 1]);  // f_{-1} = 1
            if ((k - i) % 2 == 0)
                acc += term;
            else
                acc -= term;
            if (i < k) {
                mpz_mul_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                           static_cast<unsigned long>(k - i));
                mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                                static_cast<unsigned long>(n - i));
            }
        }
        h[k] = acc;
    }
    return HVector(std::move(h));
}

FVector h_to_f(const HVector& h) {
    const std::size_t n = h.size() - 1;
    if (n == 0) {
        throw std::invalid_argument("h-vector needs at least two components to invert");
    }
    std::vector<BigInt> f(n);
    BigInt binom;
    for (std::size_t k = 0; k < n; ++k) {
        // C(q+1, k) = C(q, k)(q+1)/(q+1-k), division exact.
        binom = 1;
        BigInt acc = 0;
        for (std::size_t q = k; q <= n; ++q) {
            mpz_addmul(acc.get_mpz_t(), binom.get_mpz_t(), h[n - q].get_mpz_t());
            if (q < n) {
                mpz_mul_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                           static_cast<unsigned long>(q + 1));
                mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                                static_cast<unsigned long>(q + 1 - k));
            }
        }
        if (acc < 0) {
            throw std::domain_error("h-vector inverts to a negative face count");
        }
        f[n - 1 - k] = acc;
    }
    return FVector(std::move(f));
}

GraphSummary random_graph(std::uint64_t n, const Rational& p, const RngConfig& rng) {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    if (p.num < 0 || p.num > p.den) {
        throw std::invalid_argument("edge probability must lie in [0, 1]");
    }
    SplitMix64 gen(rng.seed);
    const auto num = static_cast<unsigned __int128>(p.num) << 53;
    std::uint64_t edges = 0;
    for (std::uint64_t i = 0; i + 1 < n; ++i) {
        for (std::uint64_t j = i + 1; j < n; ++j) {
            const std::uint64_t draw = gen.next() >> 11;  // top 53 bits
            // draw / 2^53 < num/den, compared exactly in integers
            if (static_cast<unsigned __int128>(draw) * p.den < num) ++edges;
        }
    }
    return GraphSummary{n, edges, rng.seed, p};
}

FVector f_of_graph(const GraphSummary& g) {
    std::vector<BigInt> comps;
    comps.emplace_back(static_cast<unsigned long>(g.num_vertices));
    if (g.num_edges > 0) comps.emplace_back(static_cast<unsigned long>(g.num_edges));
    return FVector(std::move(comps));
}

bool is_symmetrical(const FVector& f) {
    const std::size_t n = f.size();
    for (std::size_t j = 0; j < n / 2; ++j) {
        if (f[j] != f[n - 1 - j]) return false;
    }
    return true;
}

HVector palindromic_h(unsigned L, const BigInt& c) {
    if (L < 2) throw std::invalid_argument("palindromic h-vector needs length >= 2");
    if (c < 1) throw std::invalid_argument("non-end value must be >= 1");
    std::vector<BigInt> h(L, c);
    h.front() = 1;
    h.back() = 1;
    return HVector(std::move(h));
}

}  // namespace coning
