#include <coning/gtheorem.hpp>

#include <algorithm>
#include <stdexcept>

namespace coning {

FVector complex_to_polytope_profile(const FVector& f_complex) {
    std::vector<BigInt> rev(f_complex.components().rbegin(), f_complex.components().rend());
    return FVector(std::move(rev));
}

FVector polytope_to_complex_profile(const FVector& f_polytope) {
    return complex_to_polytope_profile(f_polytope);
}

GVector g_vector(const FVector& f_polytope, int d) {
    if (d < 1 || f_polytope.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("polytope profile must have exactly d components");
    }
    GVector g;
    g.components.resize(d + 1);
    BigInt binom, term;
    for (int i = 0; i <= d; ++i) {
        BigInt acc = 0;
        // C(j, i) over j = i..d, stepping C(j+1, i) = C(j, i)(j+1)/(j+1-i);
        // f_d := 1 (the polytope as its own face).
        binom = 1;
        for (int j = i; j <= d; ++j) {
            term = (j == d) ? binom : BigInt(binom * f_polytope[j]);
            if ((i + j) % 2 == 0)
                acc += term;
            else
                acc -= term;
            if (j < d) {
                mpz_mul_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                           static_cast<unsigned long>(j + 1));
                mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                                static_cast<unsigned long>(j + 1 - i));
            }
        }
        g.components[i] = acc;
    }
    return g;
}

bool check_dehn_sommerville(const HVector& h) {
    const std::size_t len = h.size();
    for (std::size_t i = 0; i < len / 2; ++i) {
        if (h[i] != h[len - 1 - i]) return false;
    }
    return true;
}

namespace {

// C(m, r) for BigInt m >= 0, small r >= 0.
BigInt binomial_big(const BigInt& m, int r) {
    if (r < 0 || m < r) return 0;
    BigInt result = 1;
    for (int i = 1; i <= r; ++i) {
        result *= m - (r - i);
        mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(),
                        static_cast<unsigned long>(i));
    }
    return result;
}

// Largest m with C(m, r) <= a (a >= 1, r >= 1). Doubling plus binary search.
BigInt greedy_index(const BigInt& a, int r) {
    BigInt lo = r;  // C(r, r) = 1 <= a
    BigInt hi = lo + 1;
    while (binomial_big(hi, r) <= a) {
        lo = hi;
        hi *= 2;
    }
    while (lo + 1 < hi) {
        BigInt mid = (lo + hi) / 2;
        if (binomial_big(mid, r) <= a)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

std::vector<MacaulayTerm> macaulay_rep(const BigInt& a, int i) {
    if (a < 1) throw std::invalid_argument("macaulay representation needs a >= 1");
    if (i < 1) throw std::invalid_argument("macaulay representation needs i >= 1");
    std::vector<MacaulayTerm> rep;
    BigInt rem = a;
    int r = i;
    while (rem > 0) {
        // r >= 1 is guaranteed: the lowest term C(a_1, 1) can absorb any
        // remainder.
        BigInt idx = greedy_index(rem, r);
        rem -= binomial_big(idx, r);
        rep.push_back(MacaulayTerm{std::move(idx), r});
        --r;
    }
    return rep;
}

BigInt pseudo_power(const BigInt& a, int i) {
    if (a < 0) throw std::invalid_argument("pseudo-power needs a >= 0");
    if (i < 1) throw std::invalid_argument("pseudo-power needs i >= 1");
    if (a == 0) return 0;
    BigInt out = 0;
    for (const MacaulayTerm& t : macaulay_rep(a, i)) {
        out += binomial_big(t.index + 1, t.lower + 1);
    }
    return out;
}

McMullenReport check_mcmullen(const FVector& f_polytope, int d) {
    const GVector g = g_vector(f_polytope, d);
    McMullenReport report;
    report.m_index = (d - 1) / 2;
    report.half_index = d / 2;

    auto record = [&report](McMullenCondition cond, int i) {
        if (!report.first_violation) report.first_violation = {cond, i};
    };

    report.symmetric_ok = true;
    for (int i = 0; i <= report.m_index; ++i) {
        if (g.components[i] != g.components[d - i]) {
            report.symmetric_ok = false;
            record(McMullenCondition::symmetric, i);
            break;
        }
    }
    report.monotone_ok = true;
    for (int i = 0; i + 1 <= report.half_index; ++i) {
        if (g.components[i] > g.components[i + 1]) {
            report.monotone_ok = false;
            record(McMullenCondition::monotone, i);
            break;
        }
    }
    report.growth_ok = true;
    for (int i = 1; i + 1 <= report.half_index; ++i) {
        const BigInt lower_diff = g.components[i] - g.components[i - 1];
        // A negative lower difference already fails condition 2; the
        // pseudo-power bound degenerates to 0 there as it does at 0.
        const BigInt bound = lower_diff <= 0 ? BigInt(0) : pseudo_power(lower_diff, i);
        if (g.components[i + 1] - g.components[i] > bound) {
            report.growth_ok = false;
            record(McMullenCondition::growth, i);
            break;
        }
    }
    return report;
}

bool vertex_equation_holds(const FVector& f_polytope, int d) {
    if (d < 1 || f_polytope.size() != static_cast<std::size_t>(d)) {
        throw std::invalid_argument("polytope profile must have exactly d components");
    }
    const BigInt rhs = BigInt(d - 1) * f_polytope[d - 1] - BigInt(d + 1) * (d - 2);
    return f_polytope[0] == rhs;
}

std::optional<Rational> cone_failure_threshold(std::int64_t s, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("threshold needs at least one edge (t >= 1)");
    if (s == 2) return std::nullopt;
    return Rational(t - s, s - 2);
}

}  // namespace coning
