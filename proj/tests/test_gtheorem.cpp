#include <coning/gtheorem.hpp>

#include <doctest.h>

#include "oracles.hpp"

using namespace coning;

namespace {

// h-vector of the dual complex, via the polynomial oracle on the reversed
// profile. The ordering against g is part of what the tests pin down.
std::vector<BigInt> dual_h_oracle(const FVector& f_polytope) {
    const FVector complex_f = polytope_to_complex_profile(f_polytope);
    return oracles::h_by_polynomial_expansion(complex_f.components());
}

}  // namespace

TEST_SUITE_BEGIN("gtheorem");

TEST_CASE("profile adapter reverses and round-trips") {
    const FVector f{3, 1};
    CHECK(complex_to_polytope_profile(f) == FVector{1, 3});
    CHECK(polytope_to_complex_profile(complex_to_polytope_profile(f)) == f);
}

TEST_CASE("g-vector of simplex profiles is all ones") {
    CHECK(g_vector(FVector{3, 3}, 2) == GVector{{1, 1, 1}});
    CHECK(g_vector(FVector{4, 6, 4}, 3) == GVector{{1, 1, 1, 1}});
}

TEST_CASE("g-vector equals the reversed dual h-vector") {
    // Simple polytopes have palindromic h, so only non-palindromic inputs
    // can pin the orientation: g_i = h_{d-i} of the dual complex.
    const struct {
        FVector f;
        int d;
    } cases[] = {
        {FVector{8, 12, 6}, 3},   // cube, dual h = (1,3,3,1)
        {FVector{6, 9, 5}, 3},    // triangular prism
        {FVector{8, 12, 7}, 3},   // perturbed cube, non-palindromic dual h
        {FVector{5, 4}, 2},
    };
    for (const auto& c : cases) {
        const GVector g = g_vector(c.f, c.d);
        const auto h = dual_h_oracle(c.f);
        REQUIRE(g.components.size() == h.size());
        const std::size_t d = h.size() - 1;
        for (std::size_t i = 0; i <= d; ++i) CHECK(g.components[i] == h[d - i]);
    }
}

TEST_CASE("cube g-vector is the cube h-vector") {
    CHECK(g_vector(FVector{8, 12, 6}, 3) == GVector{{1, 3, 3, 1}});
}

TEST_CASE("g_vector validates the component count") {
    CHECK_THROWS_AS(g_vector(FVector{4, 6, 4}, 4), std::invalid_argument);
    CHECK_THROWS_AS(g_vector(FVector{4, 6, 4}, 0), std::invalid_argument);
}

TEST_CASE("dehn-sommerville symmetry check") {
    CHECK(check_dehn_sommerville(HVector{1, 2, 1}));
    CHECK_FALSE(check_dehn_sommerville(HVector{1, 1, -1}));
    for (unsigned L = 2; L <= 20; ++L) {
        CHECK(check_dehn_sommerville(palindromic_h(L, 5)));
    }
}

TEST_CASE("macaulay representation examples") {
    using Terms = std::vector<MacaulayTerm>;
    CHECK(macaulay_rep(8, 3) == Terms{{4, 3}, {3, 2}, {1, 1}});
    CHECK(macaulay_rep(1, 1) == Terms{{1, 1}});
    CHECK(macaulay_rep(10, 3) == Terms{{5, 3}});
    CHECK_THROWS_AS(macaulay_rep(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(macaulay_rep(5, 0), std::invalid_argument);
}

TEST_CASE("macaulay representation reconstructs and is canonical") {
    for (int i = 1; i <= 5; ++i) {
        for (long a = 1; a <= 2000; ++a) {
            const auto rep = macaulay_rep(a, i);
            REQUIRE(!rep.empty());
            CHECK(rep.front().lower == i);
            BigInt sum = 0;
            for (std::size_t t = 0; t < rep.size(); ++t) {
                if (t > 0) {
                    CHECK(rep[t].index < rep[t - 1].index);
                    CHECK(rep[t].lower == rep[t - 1].lower - 1);
                }
                CHECK(rep[t].index >= rep[t].lower);
                CHECK(rep[t].lower >= 1);
                BigInt binom = 1;
                for (int q = 1; q <= rep[t].lower; ++q) {
                    binom *= rep[t].index - (rep[t].lower - q);
                    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                                    static_cast<unsigned long>(q));
                }
                sum += binom;
            }
            CHECK(sum == a);
        }
    }
}

TEST_CASE("pseudo-power") {
    CHECK(pseudo_power(0, 1) == 0);
    CHECK(pseudo_power(0, 5) == 0);
    CHECK(pseudo_power(10, 3) == 15);
    CHECK(pseudo_power(8, 3) == 10);
    CHECK_THROWS_AS(pseudo_power(-1, 3), std::invalid_argument);
}

TEST_CASE("pseudo-power is monotone in a") {
    for (int i = 1; i <= 5; ++i) {
        BigInt prev = 0;
        for (long a = 1; a <= 1500; ++a) {
            const BigInt cur = pseudo_power(a, i);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("mcmullen certifier on simplex profiles") {
    for (unsigned L = 3; L <= 100; ++L) {
        const int d = static_cast<int>(L) - 1;
        const FVector profile = complex_to_polytope_profile(simplex_dual_f(L));
        const auto report = check_mcmullen(profile, d);
        CHECK(report.pass());
        CHECK(report.m_index == (d - 1) / 2);
        CHECK(report.half_index == d / 2);
        CHECK_FALSE(report.first_violation.has_value());
        // Condition 1 is the Dehn-Sommerville symmetry of the dual h.
        CHECK(report.symmetric_ok ==
              check_dehn_sommerville(f_to_h(polytope_to_complex_profile(profile))));
    }
}

TEST_CASE("mcmullen condition-1 violation") {
    const auto report = check_mcmullen(FVector{5, 4}, 2);
    CHECK_FALSE(report.pass());
    CHECK_FALSE(report.symmetric_ok);
    REQUIRE(report.first_violation.has_value());
    CHECK(report.first_violation->first == McMullenCondition::symmetric);
    CHECK(report.first_violation->second == 0);
}

TEST_CASE("vertex equation") {
    CHECK(vertex_equation_holds(FVector{4, 6, 4}, 3));
    CHECK(vertex_equation_holds(FVector{8, 12, 6}, 3));
    CHECK_FALSE(vertex_equation_holds(FVector{8, 12, 7}, 3));
}

TEST_CASE("cone failure threshold") {
    CHECK(cone_failure_threshold(4, 6) == Rational(1, 1));
    CHECK(cone_failure_threshold(3, 3) == Rational(0, 1));
    CHECK_FALSE(cone_failure_threshold(2, 1).has_value());
    CHECK_THROWS_AS(cone_failure_threshold(4, 0), std::invalid_argument);
}

TEST_CASE("vertex equation on iterated cones holds only at the threshold") {
    for (std::int64_t s = 3; s <= 10; ++s) {
        for (std::int64_t t : {std::int64_t{1}, s, s * (s - 1) / 2}) {
            const auto threshold = cone_failure_threshold(s, t);
            REQUIRE(threshold.has_value());
            FVector f = t > 0 ? FVector{long(s), long(t)} : FVector{long(s)};
            for (unsigned j = 0; j <= 30; ++j) {
                const int d = static_cast<int>(j) + 2;
                const bool holds =
                    vertex_equation_holds(complex_to_polytope_profile(f), d);
                const bool at_threshold =
                    threshold->den == 1 &&
                    threshold->num == static_cast<std::int64_t>(j);
                CHECK(holds == at_threshold);
                f = cone_f(f);
            }
        }
    }
}

TEST_SUITE_END();
