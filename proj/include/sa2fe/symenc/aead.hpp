#ifndef SA2FE_SYMENC_AEAD_HPP
#define SA2FE_SYMENC_AEAD_HPP

#include <optional>

#include "sa2fe/bytes.hpp"
#include "sa2fe/rng.hpp"

namespace sa2fe::symenc {

/// AES-256-CBC with encrypt-then-MAC (HMAC-SHA256); encryption and MAC keys
/// are derived from the 32-byte service key. A failed open is a single
/// uniform outcome whether the key was wrong or the bytes were tampered.

inline constexpr std::size_t kKeyBytes = 32;
inline constexpr std::size_t kIvBytes = 16;
inline constexpr std::size_t kTagBytes = 32;

Bytes keygen(RandomSource& rng);

struct Sealed {
    Bytes iv;
    Bytes ct;
    Bytes tag;

    Bytes encode() const;
    static std::optional<Sealed> decode(std::span<const std::uint8_t> in);
};

Sealed seal(std::span<const std::uint8_t> key, std::span<const std::uint8_t> plaintext,
            RandomSource& rng);

std::optional<Bytes> open(std::span<const std::uint8_t> key, const Sealed& sealed);

}  // namespace sa2fe::symenc

#endif  // SA2FE_SYMENC_AEAD_HPP
