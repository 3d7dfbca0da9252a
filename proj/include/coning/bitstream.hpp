#pragma once

#include <coning/bigint.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace coning {

/// Exact-length bit sequence packed most-significant-bit-first into bytes.
/// Padding bits past bit_length in the final byte are always zero.
class BitStream {
public:
    BitStream() = default;

    std::uint64_t bit_length() const { return bit_length_; }
    const std::vector<std::uint8_t>& payload() const { return payload_; }

    bool bit(std::uint64_t i) const {
        return (payload_[i >> 3] >> (7 - (i & 7))) & 1u;
    }
    void append_bit(bool b);
    void append(const BitStream& other);

    static BitStream from_bit_string(const std::string& zeros_and_ones);
    /// Adopts packed bytes; rejects size mismatches and nonzero padding.
    static BitStream from_payload(std::vector<std::uint8_t> bytes, std::uint64_t bits);
    std::string to_bit_string() const;

    friend bool operator==(const BitStream&, const BitStream&) = default;

private:
    std::vector<std::uint8_t> payload_;
    std::uint64_t bit_length_ = 0;
};

/// Minimal binary representation, most significant bit first, no leading
/// zeros; 0 encodes as the single bit 0. Negative input is a hard error:
/// it means an h-vector with negative entries reached the codec.
BitStream encode_integer(const BigInt& v);

/// Concatenation of the minimal representations with no inter-integer
/// padding; bit_length is the sum of the per-integer bit counts.
BitStream encode_vector(const std::vector<BigInt>& components);

/// Legacy regression mode: each integer's representation is left-padded with
/// zeros to a whole number of bytes before concatenation.
BitStream encode_vector_byte_aligned(const std::vector<BigInt>& components);

enum class StreamFormat { raw, ascii };

StreamFormat stream_format_from_string(const std::string& s);
std::string to_string(StreamFormat f);

/// Sidecar path for a stream file: extension replaced by ".manifest.json"
/// ("stream.bin" -> "stream.manifest.json").
std::filesystem::path manifest_path_for(const std::filesystem::path& stream_path);

/// raw: payload bytes verbatim plus a sidecar manifest recording bit_length
/// (and any fields supplied in manifest_extra). ascii: one '0'/'1' character
/// per bit, no separators, newline at end.
void write_stream(const BitStream& stream, StreamFormat format,
                  const std::filesystem::path& path,
                  const nlohmann::json& manifest_extra = nlohmann::json::object());

/// Inverse of write_stream. Raw payloads are validated against the sidecar
/// manifest's bit_length; malformed ascii characters are rejected.
BitStream read_stream(const std::filesystem::path& path, StreamFormat format);

/// Manifest block describing a source vector: full components when small,
/// component count plus digest otherwise.
nlohmann::json describe_vector(const std::vector<BigInt>& components,
                               std::size_t inline_limit = 64);

}  // namespace coning
