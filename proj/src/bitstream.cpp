#include <coning/bitstream.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace coning {

void BitStream::append_bit(bool b) {
    if ((bit_length_ & 7) == 0) payload_.push_back(0);
    if (b) payload_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_length_ & 7));
    ++bit_length_;
}

void BitStream::append(const BitStream& other) {
    for (std::uint64_t i = 0; i < other.bit_length_; ++i) append_bit(other.bit(i));
}

BitStream BitStream::from_bit_string(const std::string& zeros_and_ones) {
    BitStream s;
    for (char c : zeros_and_ones) {
        if (c == '0')
            s.append_bit(false);
        else if (c == '1')
            s.append_bit(true);
        else
            throw std::invalid_argument(std::string("not a bit character: '") + c + "'");
    }
    return s;
}

BitStream BitStream::from_payload(std::vector<std::uint8_t> bytes, std::uint64_t bits) {
    if (bytes.size() != (bits + 7) / 8) {
        throw std::invalid_argument("payload size does not match bit length");
    }
    if (bits % 8 != 0 && !bytes.empty()) {
        const std::uint8_t mask = static_cast<std::uint8_t>(0xffu >> (bits % 8));
        if (bytes.back() & mask) {
            throw std::invalid_argument("nonzero padding bits past bit length");
        }
    }
    BitStream s;
    s.payload_ = std::move(bytes);
    s.bit_length_ = bits;
    return s;
}

std::string BitStream::to_bit_string() const {
    std::string out;
    out.reserve(bit_length_);
    for (std::uint64_t i = 0; i < bit_length_; ++i) out.push_back(bit(i) ? '1' : '0');
    return out;
}

namespace {

void append_integer_bits(const BigInt& v, BitStream& out) {
    if (v < 0) {
        throw std::domain_error("negative integer reached the bit codec: " + v.get_str());
    }
    const std::size_t len = bit_length(v);  // 1 for v == 0
    for (std::size_t i = len; i-- > 0;) {
        out.append_bit(mpz_tstbit(v.get_mpz_t(), i) != 0);
    }
}

}  // namespace

BitStream encode_integer(const BigInt& v) {
    BitStream s;
    append_integer_bits(v, s);
    return s;
}

BitStream encode_vector(const std::vector<BigInt>& components) {
    BitStream s;
    for (const BigInt& v : components) append_integer_bits(v, s);
    return s;
}

BitStream encode_vector_byte_aligned(const std::vector<BigInt>& components) {
    BitStream s;
    for (const BigInt& v : components) {
        if (v < 0) {
            throw std::domain_error("negative integer reached the bit codec: " +
                                    v.get_str());
        }
        const std::size_t len = bit_length(v);
        const std::size_t padded = ((len + 7) / 8) * 8;
        for (std::size_t i = padded; i-- > 0;) {
            s.append_bit(i < len && mpz_tstbit(v.get_mpz_t(), i) != 0);
        }
    }
    return s;
}

StreamFormat stream_format_from_string(const std::string& s) {
    if (s == "raw") return StreamFormat::raw;
    if (s == "ascii") return StreamFormat::ascii;
    throw std::invalid_argument("unknown stream format: '" + s + "'");
}

std::string to_string(StreamFormat f) {
    return f == StreamFormat::raw ? "raw" : "ascii";
}

std::filesystem::path manifest_path_for(const std::filesystem::path& stream_path) {
    std::filesystem::path p = stream_path;
    p.replace_extension(".manifest.json");
    return p;
}

void write_stream(const BitStream& stream, StreamFormat format,
                  const std::filesystem::path& path, const nlohmann::json& manifest_extra) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    if (format == StreamFormat::raw) {
        const auto& bytes = stream.payload();
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    } else {
        const std::string bits = stream.to_bit_string();
        out.write(bits.data(), static_cast<std::streamsize>(bits.size()));
        out.put('\n');
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
    out.close();

    nlohmann::json manifest = manifest_extra;
    manifest["bit_length"] = stream.bit_length();
    manifest["format"] = to_string(format);
    std::ofstream mout(manifest_path_for(path), std::ios::trunc);
    if (!mout) {
        throw std::runtime_error("cannot write manifest for: " + path.string());
    }
    mout << manifest.dump(2) << "\n";
}

BitStream read_stream(const std::filesystem::path& path, StreamFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    if (format == StreamFormat::ascii) {
        BitStream s;
        char c;
        bool saw_newline = false;
        std::uint64_t pos = 0;
        while (in.get(c)) {
            ++pos;
            if (c == '\n') {
                saw_newline = true;
                continue;
            }
            if (saw_newline || (c != '0' && c != '1')) {
                throw std::runtime_error("malformed ascii stream at byte " +
                                         std::to_string(pos) + " in " + path.string());
            }
            s.append_bit(c == '1');
        }
        return s;
    }

    const auto mpath = manifest_path_for(path);
    std::ifstream min(mpath);
    if (!min) throw std::runtime_error("missing stream manifest: " + mpath.string());
    nlohmann::json manifest;
    try {
        min >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("bad stream manifest " + mpath.string() + ": " + e.what());
    }
    if (!manifest.contains("bit_length")) {
        throw std::runtime_error("stream manifest lacks bit_length: " + mpath.string());
    }
    const std::uint64_t bits = manifest["bit_length"].get<std::uint64_t>();
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    const std::uint64_t expected = (bits + 7) / 8;
    if (bytes.size() < expected) {
        throw std::runtime_error("raw stream shorter than manifest bit_length: " +
                                 path.string());
    }
    if (bytes.size() > expected) {
        throw std::runtime_error("raw stream longer than manifest bit_length: " +
                                 path.string());
    }
    try {
        return BitStream::from_payload(std::move(bytes), bits);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string(e.what()) + ": " + path.string());
    }
}

nlohmann::json describe_vector(const std::vector<BigInt>& components,
                               std::size_t inline_limit) {
    nlohmann::json j;
    j["component_count"] = components.size();
    std::ostringstream digest;
    digest << std::hex << std::setw(16) << std::setfill('0')
           << fnv1a64_of_components(components);
    j["fnv1a64"] = digest.str();
    if (components.size() <= inline_limit) {
        nlohmann::json arr = nlohmann::json::array();
        for (const BigInt& c : components) arr.push_back(c.get_str());
        j["components"] = arr;
    }
    return j;
}

}  // namespace coning
