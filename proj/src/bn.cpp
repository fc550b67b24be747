#include "sa2fe/bn.hpp"

#include <openssl/err.h>

#include <stdexcept>

namespace sa2fe {

namespace {

// Thread-local scratch context; OpenSSL BN_CTX is not shareable across threads.
BN_CTX* ctx() {
    thread_local BN_CTX* c = BN_CTX_new();
    return c;
}

[[noreturn]] void fail(const char* what) {
    throw std::runtime_error(std::string("bignum: ") + what);
}

}  // namespace

Bn::Bn() : bn_(BN_new()) {
    if (!bn_) fail("alloc");
    BN_zero(bn_);
}

Bn::Bn(std::uint64_t w) : Bn() {
    if (!BN_set_word(bn_, w)) fail("set_word");
}

Bn::Bn(const Bn& other) : bn_(BN_dup(other.bn_)) {
    if (!bn_) fail("dup");
}

Bn::Bn(Bn&& other) noexcept : bn_(other.bn_) {
    other.bn_ = nullptr;
}

Bn& Bn::operator=(const Bn& other) {
    if (this != &other) {
        if (!BN_copy(bn_, other.bn_)) fail("copy");
    }
    return *this;
}

Bn& Bn::operator=(Bn&& other) noexcept {
    if (this != &other) {
        if (bn_) BN_free(bn_);
        bn_ = other.bn_;
        other.bn_ = nullptr;
    }
    return *this;
}

Bn::~Bn() {
    if (bn_) BN_free(bn_);
}

Bn Bn::from_bytes(std::span<const std::uint8_t> be) {
    Bn out;
    if (!BN_bin2bn(be.data(), static_cast<int>(be.size()), out.bn_)) fail("bin2bn");
    return out;
}

Bn Bn::from_dec(const std::string& s) {
    Bn out;
    BIGNUM* p = out.bn_;
    if (!BN_dec2bn(&p, s.c_str())) fail("dec2bn");
    return out;
}

Bn Bn::from_hex(const std::string& s) {
    Bn out;
    BIGNUM* p = out.bn_;
    if (!BN_hex2bn(&p, s.c_str())) fail("hex2bn");
    return out;
}

Bytes Bn::to_bytes() const {
    Bytes out(static_cast<std::size_t>(BN_num_bytes(bn_)));
    BN_bn2bin(bn_, out.data());
    return out;
}

Bytes Bn::to_bytes_padded(std::size_t len) const {
    Bytes out(len);
    if (BN_bn2binpad(bn_, out.data(), static_cast<int>(len)) < 0) fail("bn2binpad");
    return out;
}

std::string Bn::to_dec() const {
    char* s = BN_bn2dec(bn_);
    std::string out(s);
    OPENSSL_free(s);
    return out;
}

int Bn::num_bits() const { return BN_num_bits(bn_); }
int Bn::num_bytes() const { return BN_num_bytes(bn_); }
bool Bn::is_zero() const { return BN_is_zero(bn_); }
bool Bn::is_one() const { return BN_is_one(bn_); }
bool Bn::is_odd() const { return BN_is_odd(bn_); }

bool Bn::operator==(const Bn& rhs) const { return BN_cmp(bn_, rhs.bn_) == 0; }
bool Bn::operator<(const Bn& rhs) const { return BN_cmp(bn_, rhs.bn_) < 0; }

Bn Bn::add(const Bn& a, const Bn& b) {
    Bn out;
    if (!BN_add(out.bn_, a.bn_, b.bn_)) fail("add");
    return out;
}

Bn Bn::sub(const Bn& a, const Bn& b) {
    Bn out;
    if (!BN_sub(out.bn_, a.bn_, b.bn_)) fail("sub");
    return out;
}

Bn Bn::mul(const Bn& a, const Bn& b) {
    Bn out;
    if (!BN_mul(out.bn_, a.bn_, b.bn_, ctx())) fail("mul");
    return out;
}

Bn Bn::mod(const Bn& a, const Bn& m) {
    Bn out;
    if (!BN_nnmod(out.bn_, a.bn_, m.bn_, ctx())) fail("mod");
    return out;
}

Bn Bn::mod_mul(const Bn& a, const Bn& b, const Bn& m) {
    Bn out;
    if (!BN_mod_mul(out.bn_, a.bn_, b.bn_, m.bn_, ctx())) fail("mod_mul");
    return out;
}

Bn Bn::mod_exp(const Bn& a, const Bn& e, const Bn& m) {
    Bn out;
    if (!BN_mod_exp(out.bn_, a.bn_, e.bn_, m.bn_, ctx())) fail("mod_exp");
    return out;
}

Bn Bn::mod_inverse(const Bn& a, const Bn& m) {
    Bn out;
    if (!BN_mod_inverse(out.bn_, a.bn_, m.bn_, ctx())) {
        ERR_clear_error();
        return Bn();  // zero: no inverse
    }
    return out;
}

Bn Bn::gcd(const Bn& a, const Bn& b) {
    Bn out;
    if (!BN_gcd(out.bn_, a.bn_, b.bn_, ctx())) fail("gcd");
    return out;
}

Bn Bn::random_below(const Bn& bound, RandomSource& rng) {
    if (bound.is_zero()) fail("random_below: zero bound");
    const std::size_t len = static_cast<std::size_t>(bound.num_bytes());
    for (;;) {
        Bytes buf = rng.bytes(len);
        Bn candidate = Bn::from_bytes(buf);
        if (candidate < bound) return candidate;
    }
}

Bn Bn::random_odd_bits(int bits, RandomSource& rng) {
    const std::size_t len = static_cast<std::size_t>((bits + 7) / 8);
    Bytes buf = rng.bytes(len);
    // Force exact bit length and oddness.
    const int top = (bits - 1) % 8;
    buf[0] |= static_cast<std::uint8_t>(1u << top);
    buf[0] &= static_cast<std::uint8_t>((1u << (top + 1)) - 1);
    buf[len - 1] |= 1;
    return Bn::from_bytes(buf);
}

bool Bn::is_prime() const {
    int rc = BN_check_prime(bn_, ctx(), nullptr);
    if (rc < 0) fail("check_prime");
    return rc == 1;
}

}  // namespace sa2fe
