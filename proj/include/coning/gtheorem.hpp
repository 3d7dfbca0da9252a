#pragma once

#include <coning/combinatorics.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace coning {

/// g_0, ..., g_d computed from a polytope face profile.
struct GVector {
    std::vector<BigInt> components;

    int dimension() const { return static_cast<int>(components.size()) - 1; }
    friend bool operator==(const GVector&, const GVector&) = default;
};

enum class McMullenCondition { symmetric = 1, monotone = 2, growth = 3 };

struct McMullenReport {
    bool symmetric_ok = false;
    bool monotone_ok = false;
    bool growth_ok = false;
    int m_index = 0;     // floor((d-1)/2)
    int half_index = 0;  // floor(d/2)
    std::optional<std::pair<McMullenCondition, int>> first_violation;

    bool pass() const { return symmetric_ok && monotone_ok && growth_ok; }
};

/// One term of a Macaulay representation: a = sum of C(index, lower).
struct MacaulayTerm {
    BigInt index;
    int lower = 0;

    friend bool operator==(const MacaulayTerm&, const MacaulayTerm&) = default;
};

/// The dictionary between the complex convention (f_i = i-simplices of K) and
/// the polytope convention (f_i = i-faces of P): f_i(K) is the number of
/// codimension-(i+1) faces of P, i.e. the profile reversed. This is the only
/// place the reversal happens.
FVector complex_to_polytope_profile(const FVector& f_complex);
FVector polytope_to_complex_profile(const FVector& f_polytope);

/// g_i = sum_{j=0..d} (-1)^{i+j} C(j, i) f_j with the convention f_d := 1.
/// Rejects profiles whose component count differs from d.
GVector g_vector(const FVector& f_polytope, int d);

/// True iff h_i = h_{n-i} for all i.
bool check_dehn_sommerville(const HVector& h);

/// Canonical i-binomial representation of a >= 1: the unique expansion
/// a = C(a_i, i) + C(a_{i-1}, i-1) + ... + C(a_j, j) with
/// a_i > a_{i-1} > ... > a_j >= j >= 1, found greedily from the top.
/// Rejects a < 1 or i < 1.
std::vector<MacaulayTerm> macaulay_rep(const BigInt& a, int i);

/// Macaulay pseudo-power a^<i>: both indices of every term of the
/// representation shifted up by one. 0^<i> := 0. Rejects a < 0 or i < 1.
BigInt pseudo_power(const BigInt& a, int i);

/// McMullen's three conditions on a polytope face profile:
///   (1) g_i = g_{d-i}        for i = 0..m_index
///   (2) g_i <= g_{i+1}       for i = 0..half_index-1
///   (3) g_{i+1} - g_i <= (g_i - g_{i-1})^<i>  for i = 1..half_index-1
McMullenReport check_mcmullen(const FVector& f_polytope, int d);

/// f_0 = (d-1) f_{d-1} - (d+1)(d-2), exactly.
bool vertex_equation_holds(const FVector& f_polytope, int d);

/// The single cone count j = (t-s)/(s-2) at which the vertex equation can
/// hold for the dual of C^j(G), where s = f_0(G), t = f_1(G); no value when
/// s == 2. Rejects t < 1.
std::optional<Rational> cone_failure_threshold(std::int64_t s, std::int64_t t);

}  // namespace coning
