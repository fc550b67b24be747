#ifndef SA2FE_BYTES_HPP
#define SA2FE_BYTES_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sa2fe {

using Bytes = std::vector<std::uint8_t>;
using Digest32 = std::array<std::uint8_t, 32>;

std::string to_hex(std::span<const std::uint8_t> data);
Bytes from_hex(std::string_view hex);  // throws std::invalid_argument

Digest32 sha256(std::span<const std::uint8_t> data);
Digest32 sha256_concat(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

Bytes hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data);

// Big-endian helpers for canonical encodings.
void put_u32_be(Bytes& out, std::uint32_t v);
void put_u64_be(Bytes& out, std::uint64_t v);
std::uint32_t read_u32_be(std::span<const std::uint8_t> in);  // in.size() >= 4
std::uint64_t read_u64_be(std::span<const std::uint8_t> in);  // in.size() >= 8

inline Bytes concat(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    Bytes out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline std::span<const std::uint8_t> as_span(const Bytes& b) { return {b.data(), b.size()}; }
inline std::span<const std::uint8_t> as_span(const Digest32& d) { return {d.data(), d.size()}; }
inline Bytes to_bytes(const Digest32& d) { return Bytes(d.begin(), d.end()); }
inline Bytes str_bytes(std::string_view s) {
    return Bytes(reinterpret_cast<const std::uint8_t*>(s.data()),
                 reinterpret_cast<const std::uint8_t*>(s.data()) + s.size());
}

}  // namespace sa2fe

#endif  // SA2FE_BYTES_HPP
