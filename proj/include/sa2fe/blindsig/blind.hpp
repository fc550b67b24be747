#ifndef SA2FE_BLINDSIG_BLIND_HPP
#define SA2FE_BLINDSIG_BLIND_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "sa2fe/bn.hpp"
#include "sa2fe/bytes.hpp"
#include "sa2fe/rng.hpp"

namespace sa2fe::blindsig {

class BlindSigError : public std::runtime_error {
public:
    explicit BlindSigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Role : std::uint8_t {
    Platform = 1,  // service-agnostic key held by the FA
    Service = 2,   // per-service key, secret half custodied by the FA
};

/// RSA public half. Messages are full-domain-hashed to the modulus before
/// blinding and signing, so the raw-RSA multiplicativity does not yield
/// forgeries.
struct PublicKey {
    Role role = Role::Platform;
    std::string service_id;  // empty for Platform
    Bytes n, e;              // big-endian

    std::size_t modulus_bytes() const { return n.size(); }
    Bytes encode() const;
    static PublicKey decode(std::span<const std::uint8_t> in);
    bool operator==(const PublicKey& rhs) const = default;
};

class BlindKeyPair {
public:
    /// Deterministic given the injected source; primes come from the rng and
    /// are validated with a standard primality test.
    static BlindKeyPair generate(Role role, int security_level, RandomSource& rng,
                                 const std::string& service_id = "");
    /// Textbook-RSA with a caller-chosen tiny modulus. Only reachable by
    /// naming the flag; vectors and exhaustive blindness checks use it.
    static BlindKeyPair insecure_test_keypair(std::uint64_t n, std::uint64_t e, std::uint64_t d,
                                              Role role = Role::Platform);

    const PublicKey& pub() const { return pub_; }
    bool has_secret() const { return !d_.is_zero(); }
    const Bn& secret_exponent() const { return d_; }
    bool insecure_test_mode() const { return insecure_test_; }

    Bytes secret_encode() const;  // d big-endian, for SP -> FA custody transfer
    static BlindKeyPair from_parts(const PublicKey& pub, std::span<const std::uint8_t> d,
                                   bool insecure_test = false);

private:
    BlindKeyPair() = default;
    PublicKey pub_;
    Bn d_;
    bool insecure_test_ = false;
};

struct BlindingFactor {
    Bytes r;  // big-endian, invertible mod n
};

/// Message representative: full-domain hash into [0, n) in production, raw
/// big-endian reduction in insecure-test mode.
Bn message_representative(const PublicKey& pk, std::span<const std::uint8_t> msg,
                          bool insecure_test);

BlindingFactor fresh_blinding(const PublicKey& pk, RandomSource& rng);

/// m' = rep(m) * r^e mod n. Throws on a non-invertible factor.
Bytes blind_msg(const PublicKey& pk, std::span<const std::uint8_t> msg, const BlindingFactor& r,
                bool insecure_test = false);
/// s' = (m')^d mod n.
Bytes blind_sign(const BlindKeyPair& kp, std::span<const std::uint8_t> blinded);
/// s = s' * r^{-1} mod n.
Bytes unblind_sign(const PublicKey& pk, std::span<const std::uint8_t> blinded_sig,
                   const BlindingFactor& r);
/// s^e == rep(m) mod n. Deterministic; malformed input is false, not an error.
bool blind_verify(const PublicKey& pk, std::span<const std::uint8_t> msg,
                  std::span<const std::uint8_t> sig, bool insecure_test = false);

// ---- dual-part token ------------------------------------------------------

struct TokenSecret {
    Bytes m1, m2;            // 32 random bytes each, m1 != m2
    BlindingFactor r1, r2;   // independent factors for the two halves
};

struct Token {
    Bytes m1, sig1;  // service-agnostic half, verified with the platform key
    Bytes m2, sig2;  // service-specific half, verified with the service key

    Bytes encode() const;
    static std::optional<Token> decode(std::span<const std::uint8_t> in);
    /// Double-spend identity: SHA-256(m1 || m2).
    Digest32 identity_hash() const;
};

struct TokenRequest {
    TokenSecret secret;
    Bytes blinded_m1, blinded_m2;
};

TokenRequest token_request_build(const PublicKey& pk_platform, const PublicKey& pk_service,
                                 RandomSource& rng);

enum class TokenHalf : std::uint8_t { Platform = 1, Service = 2 };

class TokenFinalizeError : public BlindSigError {
public:
    TokenFinalizeError(TokenHalf half, const std::string& msg)
        : BlindSigError(msg), failed_half(half) {}
    TokenHalf failed_half;
};

/// Unblinds both halves and verifies each against its key; reports which
/// half failed.
Token token_finalize(const TokenSecret& secret, std::span<const std::uint8_t> blinded_sig1,
                     std::span<const std::uint8_t> blinded_sig2, const PublicKey& pk_platform,
                     const PublicKey& pk_service);

}  // namespace sa2fe::blindsig

#endif  // SA2FE_BLINDSIG_BLIND_HPP
