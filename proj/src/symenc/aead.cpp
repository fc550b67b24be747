#include "sa2fe/symenc/aead.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <memory>
#include <stdexcept>

namespace sa2fe::symenc {

namespace {

struct CipherCtx {
    EVP_CIPHER_CTX* c = EVP_CIPHER_CTX_new();
    ~CipherCtx() { EVP_CIPHER_CTX_free(c); }
};

Bytes derive(std::span<const std::uint8_t> key, const char* label) {
    return hmac_sha256(key, str_bytes(label));
}

bool const_time_eq(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) return false;
    unsigned char acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc |= a[i] ^ b[i];
    return acc == 0;
}

}  // namespace

Bytes keygen(RandomSource& rng) { return rng.bytes(kKeyBytes); }

Bytes Sealed::encode() const {
    Bytes out;
    out.insert(out.end(), iv.begin(), iv.end());
    put_u32_be(out, static_cast<std::uint32_t>(ct.size()));
    out.insert(out.end(), ct.begin(), ct.end());
    out.insert(out.end(), tag.begin(), tag.end());
    return out;
}

std::optional<Sealed> Sealed::decode(std::span<const std::uint8_t> in) {
    if (in.size() < kIvBytes + 4 + kTagBytes) return std::nullopt;
    Sealed s;
    s.iv.assign(in.begin(), in.begin() + kIvBytes);
    std::size_t len = read_u32_be(in.subspan(kIvBytes));
    if (in.size() != kIvBytes + 4 + len + kTagBytes) return std::nullopt;
    auto ct_begin = in.begin() + kIvBytes + 4;
    s.ct.assign(ct_begin, ct_begin + static_cast<std::ptrdiff_t>(len));
    s.tag.assign(ct_begin + static_cast<std::ptrdiff_t>(len), in.end());
    return s;
}

Sealed seal(std::span<const std::uint8_t> key, std::span<const std::uint8_t> plaintext,
            RandomSource& rng) {
    if (key.size() != kKeyBytes) throw std::invalid_argument("seal: bad key size");
    Bytes enc_key = derive(key, "sa2fe-enc");
    Bytes mac_key = derive(key, "sa2fe-mac");

    Sealed out;
    out.iv = rng.bytes(kIvBytes);
    out.ct.resize(plaintext.size() + kIvBytes);  // room for CBC padding

    CipherCtx ctx;
    int len1 = 0, len2 = 0;
    if (EVP_EncryptInit_ex(ctx.c, EVP_aes_256_cbc(), nullptr, enc_key.data(), out.iv.data()) != 1 ||
        EVP_EncryptUpdate(ctx.c, out.ct.data(), &len1, plaintext.data(),
                          static_cast<int>(plaintext.size())) != 1 ||
        EVP_EncryptFinal_ex(ctx.c, out.ct.data() + len1, &len2) != 1)
        throw std::runtime_error("seal: cipher failure");
    out.ct.resize(static_cast<std::size_t>(len1 + len2));

    Bytes mac_input = out.iv;
    mac_input.insert(mac_input.end(), out.ct.begin(), out.ct.end());
    out.tag = hmac_sha256(mac_key, mac_input);
    return out;
}

std::optional<Bytes> open(std::span<const std::uint8_t> key, const Sealed& sealed) {
    if (key.size() != kKeyBytes) return std::nullopt;
    if (sealed.iv.size() != kIvBytes || sealed.tag.size() != kTagBytes) return std::nullopt;
    Bytes enc_key = derive(key, "sa2fe-enc");
    Bytes mac_key = derive(key, "sa2fe-mac");

    Bytes mac_input = sealed.iv;
    mac_input.insert(mac_input.end(), sealed.ct.begin(), sealed.ct.end());
    if (!const_time_eq(hmac_sha256(mac_key, mac_input), sealed.tag)) return std::nullopt;

    Bytes plain(sealed.ct.size() + kIvBytes);
    CipherCtx ctx;
    int len1 = 0, len2 = 0;
    if (EVP_DecryptInit_ex(ctx.c, EVP_aes_256_cbc(), nullptr, enc_key.data(),
                           sealed.iv.data()) != 1 ||
        EVP_DecryptUpdate(ctx.c, plain.data(), &len1, sealed.ct.data(),
                          static_cast<int>(sealed.ct.size())) != 1 ||
        EVP_DecryptFinal_ex(ctx.c, plain.data() + len1, &len2) != 1)
        return std::nullopt;
    plain.resize(static_cast<std::size_t>(len1 + len2));
    return plain;
}

}  // namespace sa2fe::symenc
