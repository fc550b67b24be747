#ifndef SA2FE_PUZZLE_EC_GROUP_HPP
#define SA2FE_PUZZLE_EC_GROUP_HPP

#include <memory>
#include <optional>

#include "sa2fe/bn.hpp"
#include "sa2fe/bytes.hpp"
#include "sa2fe/rng.hpp"

typedef struct ec_group_st EC_GROUP;

namespace sa2fe::puzzle {

/// Prime-order NIST curve wrapper (cofactor 1). Points cross the API as
/// compressed octets; the identity is deliberately not representable.
class EcGroup {
public:
    static const EcGroup& p256();
    static const EcGroup& p384();
    static const EcGroup& by_security_level(int bits);  // 128 -> P-256, 192 -> P-384

    std::size_t point_bytes() const { return point_bytes_; }
    const Bn& order() const { return order_; }

    Bn random_scalar(RandomSource& rng) const;          // uniform in [0, q)
    Bn random_scalar_nonzero(RandomSource& rng) const;  // uniform in [1, q)

    Bytes mul_generator(const Bn& k) const;
    Bytes mul(std::span<const std::uint8_t> point, const Bn& k) const;
    Bytes add(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) const;
    Bytes sub(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) const;
    bool points_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) const;

    /// mul() and friends throw on the identity; this probes without throwing.
    bool is_identity_combination(std::span<const std::uint8_t> a,
                                 std::span<const std::uint8_t> b) const;  // a - b == O

    bool is_valid_point(std::span<const std::uint8_t> encoded) const;

    /// Deterministic rehash-and-check map from a 32-byte digest to a point.
    Bytes hash_to_point(std::span<const std::uint8_t> digest) const;

private:
    explicit EcGroup(int nid);
    EC_GROUP* group_;
    Bn order_;
    std::size_t point_bytes_;
};

}  // namespace sa2fe::puzzle

#endif  // SA2FE_PUZZLE_EC_GROUP_HPP
