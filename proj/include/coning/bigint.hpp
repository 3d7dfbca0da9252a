#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace coning {

using BigInt = mpz_class;

/// Bits in the minimal binary representation of |v|; bit_length(0) == 1.
inline std::size_t bit_length(const BigInt& v) {
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt bigint_from_string(const std::string& s) {
    BigInt v;
    if (v.set_str(s, 10) != 0) {
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    }
    return v;
}

/// FNV-1a 64-bit digest of the decimal serialization of a vector of
/// integers, used to identify large vectors in manifests.
std::uint64_t fnv1a64_of_components(const std::vector<BigInt>& components);

}  // namespace coning
