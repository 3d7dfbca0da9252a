#pragma once

#include <coning/bigint.hpp>
#include <coning/rational.hpp>

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace coning {

/// Face-count profile (f_0, ..., f_{n-1}) of an (n-1)-dimensional simplicial
/// complex: f_i counts the i-simplices. The empty face f_{-1} = 1 is implicit
/// and never stored. Components are non-negative and there is at least one.
class FVector {
public:
    explicit FVector(std::vector<BigInt> components);
    FVector(std::initializer_list<long> components);

    std::size_t size() const { return comps_.size(); }
    /// Dimension of the underlying complex, i.e. component count - 1.
    int dimension() const { return static_cast<int>(comps_.size()) - 1; }
    const BigInt& operator[](std::size_t i) const { return comps_[i]; }
    const std::vector<BigInt>& components() const { return comps_; }

    friend bool operator==(const FVector&, const FVector&) = default;

private:
    std::vector<BigInt> comps_;
};

/// Dual profile (h_0, ..., h_n). Entries are signed: complexes that are not
/// simplicial spheres can produce negative components.
class HVector {
public:
    explicit HVector(std::vector<BigInt> components);
    HVector(std::initializer_list<long> components);

    std::size_t size() const { return comps_.size(); }
    const BigInt& operator[](std::size_t i) const { return comps_[i]; }
    const std::vector<BigInt>& components() const { return comps_; }

    friend bool operator==(const HVector&, const HVector&) = default;

private:
    std::vector<BigInt> comps_;
};

/// The pinned deterministic generator behind random_graph. One 64-bit output
/// per state step; uniforms are the top 53 bits of an output word.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
};

struct RngConfig {
    static constexpr const char* algorithm = "splitmix64";
    std::uint64_t seed = 0;
};

struct GraphSummary {
    std::uint64_t num_vertices = 0;
    std::uint64_t num_edges = 0;
    std::uint64_t seed = 0;
    Rational edge_probability;
};

/// Cone over a complex, on the f-vector level: one more component,
/// out[0] = f[0] + 1, out[i] = f[i-1] + f[i], last component unchanged.
FVector cone_f(const FVector& f);

/// j-fold application of cone_f; j == 0 is the identity.
FVector iterate_cone(const FVector& f, unsigned j);

/// f-vector of the (n-1)-dimensional dual of the n-simplex, n = L - 1,
/// whose h-vector is L ones: component j equals C(n+1, j+1).
/// Rejects L < 2.
FVector simplex_dual_f(unsigned L);

/// h-vector of the dual, via h_k = sum_{i=0..k} (-1)^{k-i} C(n-i, n-k) f_{i-1}
/// with the implicit f_{-1} = 1. Output has one more component than f and
/// always starts with h_0 = 1.
HVector f_to_h(const FVector& f);

/// Inverse dictionary, via f_{n-1-k} = sum_{q=k..n} C(q, k) h_{n-q}.
/// Exact over the integers: f_to_h(h_to_f(h)) == h whenever h_0 == 1.
FVector h_to_f(const HVector& h);

/// Erdos-Renyi graph: every unordered pair {i, j}, i < j (iterated in
/// row-major order), becomes an edge when the next uniform draw is < p.
/// Pure function of (n, p, rng).
GraphSummary random_graph(std::uint64_t n, const Rational& p, const RngConfig& rng);

/// A simple graph as a complex: (vertices, edges), or just (vertices) when
/// there are no edges.
FVector f_of_graph(const GraphSummary& g);

/// True iff f_j = f_{n-j-1} for all j.
bool is_symmetrical(const FVector& f);

/// (1, c, c, ..., c, 1) with L components; (1, 1) when L == 2.
/// Rejects L < 2 and c < 1.
HVector palindromic_h(unsigned L, const BigInt& c);

/// C(n, k); zero when k < 0 or k > n.
BigInt binomial(std::uint64_t n, std::int64_t k);

}  // namespace coning
