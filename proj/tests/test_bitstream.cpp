#include <coning/bitstream.hpp>

#include <coning/combinatorics.hpp>

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace coning;

namespace {

std::string hex(const std::vector<std::uint8_t>& bytes) {
    std::string out;
    char buf[3];
    for (auto b : bytes) {
        std::snprintf(buf, sizeof(buf), "%02x", b);
        out += buf;
    }
    return out;
}

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "coning_bitstream_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE_BEGIN("bitcodec");

TEST_CASE("integer encodings are minimal binary") {
    CHECK(encode_integer(5).to_bit_string() == "101");
    CHECK(encode_integer(0).to_bit_string() == "0");
    const BigInt two_to_64 = BigInt(1) << 64;
    CHECK(encode_integer(two_to_64).to_bit_string() == "1" + std::string(64, '0'));
    CHECK_THROWS_AS(encode_integer(BigInt(-3)), std::domain_error);
}

TEST_CASE("vector encoding packs with no inter-integer padding") {
    const auto s = encode_vector({5, 3});
    CHECK(s.bit_length() == 5);
    CHECK(s.to_bit_string() == "10111");
    CHECK(hex(s.payload()) == "b8");

    const auto ones = encode_vector(std::vector<BigInt>(8, 1));
    CHECK(ones.bit_length() == 8);
    CHECK(hex(ones.payload()) == "ff");
}

TEST_CASE("golden stream for the dual of the 10-simplex") {
    const auto s = encode_vector(simplex_dual_f(11).components());
    CHECK(s.bit_length() == 72);
    CHECK(hex(s.payload()) == "bde9695cee752a977b");
}

TEST_CASE("byte-aligned mode pads each integer to whole bytes") {
    const auto s = encode_vector_byte_aligned({5, 3});
    CHECK(s.bit_length() == 16);
    CHECK(hex(s.payload()) == "0503");
    const auto t = encode_vector_byte_aligned({256});
    CHECK(hex(t.payload()) == "0100");
    CHECK_THROWS_AS(encode_vector_byte_aligned({BigInt(-1)}), std::domain_error);
}

TEST_CASE("bit length bookkeeping and mode comparison") {
    SplitMix64 gen(31337);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<BigInt> comps(1 + gen.next() % 12);
        bool any_ragged = false;
        std::size_t expected_bits = 0;
        for (auto& c : comps) {
            c = gen.next() >> (gen.next() % 60);
            const std::size_t len = bit_length(c);
            expected_bits += len;
            if (len % 8 != 0) any_ragged = true;
        }
        const auto bitwise = encode_vector(comps);
        const auto aligned = encode_vector_byte_aligned(comps);
        CHECK(bitwise.bit_length() == expected_bits);
        CHECK(aligned.bit_length() % 8 == 0);
        if (any_ragged) CHECK(bitwise.bit_length() < aligned.bit_length());

        // Concatenation associativity.
        const std::size_t cut = comps.size() / 2;
        std::vector<BigInt> left(comps.begin(), comps.begin() + cut);
        std::vector<BigInt> right(comps.begin() + cut, comps.end());
        BitStream joined = encode_vector(left);
        joined.append(encode_vector(right));
        CHECK(joined == bitwise);

        // Padding stays zero past bit_length.
        if (bitwise.bit_length() % 8 != 0) {
            const std::uint8_t mask =
                static_cast<std::uint8_t>(0xffu >> (bitwise.bit_length() % 8));
            CHECK((bitwise.payload().back() & mask) == 0);
        }
    }
}

TEST_CASE("raw and ascii files round trip") {
    const auto dir = temp_dir();
    SplitMix64 gen(777);
    for (int trial = 0; trial < 200; ++trial) {
        BitStream s;
        const std::size_t nbits = gen.next() % 200;
        for (std::size_t i = 0; i < nbits; ++i) s.append_bit(gen.next() & 1);
        const auto fmt = (trial % 2 == 0) ? StreamFormat::raw : StreamFormat::ascii;
        const auto path = dir / "roundtrip.bin";
        write_stream(s, fmt, path);
        CHECK(read_stream(path, fmt) == s);
    }
}

TEST_CASE("ascii format is one character per bit plus newline") {
    const auto dir = temp_dir();
    const auto path = dir / "ascii.txt";
    write_stream(encode_vector({5, 3}), StreamFormat::ascii, path);
    std::ifstream in(path);
    std::string contents((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    CHECK(contents == "10111\n");
    CHECK(read_stream(path, StreamFormat::ascii).to_bit_string() == "10111");
}

TEST_CASE("raw sidecar manifest carries the bit length") {
    const auto dir = temp_dir();
    const auto path = dir / "stream.bin";
    write_stream(encode_vector({5, 3}), StreamFormat::raw, path);
    std::ifstream in(manifest_path_for(path));
    nlohmann::json manifest;
    in >> manifest;
    CHECK(manifest["bit_length"] == 5);
    std::ifstream raw(path, std::ios::binary);
    std::string payload((std::istreambuf_iterator<char>(raw)),
                        std::istreambuf_iterator<char>());
    CHECK(payload.size() == 1);
    CHECK(static_cast<std::uint8_t>(payload[0]) == 0xb8);
}

TEST_CASE("malformed inputs are rejected") {
    const auto dir = temp_dir();
    {
        const auto path = dir / "bad.txt";
        std::ofstream out(path);
        out << "10x1\n";
        out.close();
        CHECK_THROWS_AS(read_stream(path, StreamFormat::ascii), std::runtime_error);
    }
    {
        const auto path = dir / "short.bin";
        write_stream(encode_vector({500, 500, 500}), StreamFormat::raw, path);
        std::filesystem::resize_file(path, 1);
        CHECK_THROWS_AS(read_stream(path, StreamFormat::raw), std::runtime_error);
    }
    {
        const auto path = dir / "orphan.bin";
        std::ofstream out(path, std::ios::binary);
        out.put('\xb8');
        out.close();
        CHECK_THROWS_AS(read_stream(path, StreamFormat::raw), std::runtime_error);
    }
    CHECK_THROWS_AS(BitStream::from_payload({0xb8}, 20), std::invalid_argument);
    CHECK_THROWS_AS(BitStream::from_payload({0xb9}, 5), std::invalid_argument);
    CHECK(BitStream::from_payload({0xb8}, 5).to_bit_string() == "10111");
}

TEST_CASE("manifest path replaces the extension") {
    CHECK(manifest_path_for("a/stream.bin") ==
          std::filesystem::path("a/stream.manifest.json"));
    CHECK(manifest_path_for("plain") == std::filesystem::path("plain.manifest.json"));
}

TEST_SUITE_END();
