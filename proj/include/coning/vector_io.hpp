#pragma once

#include <coning/bigint.hpp>

#include <filesystem>
#include <vector>

namespace coning {

enum class VectorKind { f, h };

struct VectorFile {
    VectorKind kind;
    std::vector<BigInt> components;
};

/// Line-oriented text format: a one-line header "fvector <count>" or
/// "hvector <count>", then one decimal integer per line.
VectorFile read_vector_file(const std::filesystem::path& path);
void write_vector_file(const std::filesystem::path& path, VectorKind kind,
                       const std::vector<BigInt>& components);

}  // namespace coning
