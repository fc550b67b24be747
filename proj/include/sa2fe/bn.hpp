#ifndef SA2FE_BN_HPP
#define SA2FE_BN_HPP

#include <openssl/bn.h>

#include <cstdint>
#include <span>
#include <string>

#include "sa2fe/bytes.hpp"
#include "sa2fe/rng.hpp"

namespace sa2fe {

/// RAII wrapper over OpenSSL BIGNUM with the handful of modular operations
/// the blind-signature and group code need.
class Bn {
public:
    Bn();
    explicit Bn(std::uint64_t w);
    Bn(const Bn& other);
    Bn(Bn&& other) noexcept;
    Bn& operator=(const Bn& other);
    Bn& operator=(Bn&& other) noexcept;
    ~Bn();

    static Bn from_bytes(std::span<const std::uint8_t> be);
    static Bn from_dec(const std::string& s);
    static Bn from_hex(const std::string& s);

    Bytes to_bytes() const;                   // minimal big-endian
    Bytes to_bytes_padded(std::size_t len) const;  // fixed-width big-endian
    std::string to_dec() const;

    int num_bits() const;
    int num_bytes() const;
    bool is_zero() const;
    bool is_one() const;
    bool is_odd() const;

    bool operator==(const Bn& rhs) const;
    bool operator<(const Bn& rhs) const;

    BIGNUM* get() { return bn_; }
    const BIGNUM* get() const { return bn_; }

    static Bn add(const Bn& a, const Bn& b);
    static Bn sub(const Bn& a, const Bn& b);
    static Bn mul(const Bn& a, const Bn& b);
    static Bn mod(const Bn& a, const Bn& m);
    static Bn mod_mul(const Bn& a, const Bn& b, const Bn& m);
    static Bn mod_exp(const Bn& a, const Bn& e, const Bn& m);
    /// Returns the inverse, or a zero Bn when no inverse exists.
    static Bn mod_inverse(const Bn& a, const Bn& m);
    static Bn gcd(const Bn& a, const Bn& b);

    /// Uniform in [0, bound) from the injected source, rejection sampled.
    static Bn random_below(const Bn& bound, RandomSource& rng);
    /// Random value of exactly `bits` bits (top bit set), lowest bit forced odd.
    static Bn random_odd_bits(int bits, RandomSource& rng);

    bool is_prime() const;

private:
    BIGNUM* bn_;
};

}  // namespace sa2fe

#endif  // SA2FE_BN_HPP
