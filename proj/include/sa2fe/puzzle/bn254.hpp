#ifndef SA2FE_PUZZLE_BN254_HPP
#define SA2FE_PUZZLE_BN254_HPP

#include <array>
#include <cstdint>
#include <optional>

#include "sa2fe/bytes.hpp"
#include "sa2fe/rng.hpp"

namespace sa2fe::puzzle::bn254 {

// Type-3 pairing-friendly curve (the alt_bn128 parameterization): G1 over
// Fp on y^2 = x^3 + 3, G2 on the sextic D-twist over Fp2, optimal ate
// pairing into Fp12. Self-contained 4-limb Montgomery arithmetic; nothing
// here depends on an external bignum library.

inline constexpr std::size_t kScalarBytes = 32;
inline constexpr std::size_t kG2CompressedBytes = 65;  // x.c1 || x.c0 || y-parity

/// Scalar in Z_r, r the prime group order.
class Scalar {
public:
    Scalar();  // zero
    static Scalar one();
    static Scalar from_u64(std::uint64_t v);
    /// Big-endian bytes reduced mod r.
    static Scalar from_bytes_reduced(std::span<const std::uint8_t> be);
    /// Uniform in [1, r-1].
    static Scalar random_nonzero(RandomSource& rng);
    /// Uniform in [0, r-1].
    static Scalar random(RandomSource& rng);

    Scalar inverse() const;  // Fermat; inverse of zero is zero
    Scalar mul(const Scalar& rhs) const;
    bool is_zero() const;
    bool operator==(const Scalar& rhs) const;

    Bytes to_bytes() const;  // 32-byte big-endian

    std::array<std::uint64_t, 4> mont;  // Montgomery form, little-endian limbs
};

class G1Point {
public:
    G1Point();  // infinity
    static G1Point generator();
    G1Point mul(const Scalar& k) const;
    G1Point neg() const;
    bool is_infinity() const;
    bool operator==(const G1Point& rhs) const;

    // affine Montgomery-form coordinates; inf flag
    std::array<std::uint64_t, 4> x, y;
    bool inf;
};

class G2Point {
public:
    G2Point();  // infinity
    static G2Point generator();
    G2Point add(const G2Point& rhs) const;
    G2Point mul(const Scalar& k) const;
    G2Point neg() const;
    bool is_infinity() const;
    bool is_on_curve() const;
    /// Order-r subgroup membership (the twist curve has a large cofactor).
    bool in_subgroup() const;
    bool operator==(const G2Point& rhs) const;

    Bytes compress() const;  // 65 bytes; infinity not representable
    /// Decompress + on-curve check; subgroup check unless the caller already
    /// trusts membership (points produced by this module stay in-subgroup).
    static std::optional<G2Point> decompress(std::span<const std::uint8_t> in,
                                             bool subgroup_check = true);

    // affine coordinates in Fp2 = Fp[u]/(u^2+1), each as (c0, c1) Montgomery limbs
    std::array<std::uint64_t, 4> x_c0, x_c1, y_c0, y_c1;
    bool inf;
};

/// Full pairing value in Fp12, for property tests.
class Gt {
public:
    Gt();  // one
    static Gt pairing(const G1Point& p, const G2Point& q);
    Gt mul(const Gt& rhs) const;
    Gt pow(const Scalar& k) const;
    bool is_one() const;
    bool operator==(const Gt& rhs) const;

    std::array<std::uint64_t, 48> limbs;  // 12 Fp coefficients, Montgomery form
};

/// e(a1, a2) == e(b1, b2), evaluated as one double Miller loop plus a single
/// final exponentiation.
bool pairing_check(const G1Point& a1, const G2Point& a2, const G1Point& b1, const G2Point& b2);

}  // namespace sa2fe::puzzle::bn254

#endif  // SA2FE_PUZZLE_BN254_HPP
