#include <coning/vector_io.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coning {

VectorFile read_vector_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vector file: " + path.string());
    std::string header;
    if (!std::getline(in, header)) {
        throw std::runtime_error("empty vector file: " + path.string());
    }
    std::istringstream hs(header);
    std::string kind_word;
    std::size_t count = 0;
    if (!(hs >> kind_word >> count) || (kind_word != "fvector" && kind_word != "hvector")) {
        throw std::runtime_error("bad vector header '" + header + "' in " + path.string());
    }
    VectorFile vf;
    vf.kind = kind_word == "fvector" ? VectorKind::f : VectorKind::h;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            vf.components.push_back(bigint_from_string(line));
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("bad component '" + line + "' in " + path.string());
        }
    }
    if (vf.components.size() != count) {
        throw std::runtime_error("component count mismatch in " + path.string() +
                                 ": header says " + std::to_string(count) + ", found " +
                                 std::to_string(vf.components.size()));
    }
    if (vf.components.empty()) {
        throw std::runtime_error("vector file has no components: " + path.string());
    }
    return vf;
}

void write_vector_file(const std::filesystem::path& path, VectorKind kind,
                       const std::vector<BigInt>& components) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write vector file: " + path.string());
    out << (kind == VectorKind::f ? "fvector " : "hvector ") << components.size() << "\n";
    for (const BigInt& c : components) out << c.get_str() << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace coning
