#include "sa2fe/puzzle/ec_group.hpp"

#include <openssl/ec.h>
#include <openssl/err.h>
#include <openssl/obj_mac.h>

#include <stdexcept>

namespace sa2fe::puzzle {

namespace {

BN_CTX* ctx() {
    thread_local BN_CTX* c = BN_CTX_new();
    return c;
}

struct PointHandle {
    EC_POINT* p = nullptr;
    explicit PointHandle(const EC_GROUP* g) : p(EC_POINT_new(g)) {
        if (!p) throw std::runtime_error("EC_POINT_new failed");
    }
    PointHandle(const PointHandle&) = delete;
    ~PointHandle() { EC_POINT_free(p); }
};

}  // namespace

EcGroup::EcGroup(int nid) : group_(EC_GROUP_new_by_curve_name(nid)) {
    if (!group_) throw std::runtime_error("EC_GROUP_new_by_curve_name failed");
    BIGNUM* q = BN_new();
    if (!EC_GROUP_get_order(group_, q, ctx())) throw std::runtime_error("EC_GROUP_get_order");
    order_ = Bn::from_bytes([&] {
        Bytes b(static_cast<std::size_t>(BN_num_bytes(q)));
        BN_bn2bin(q, b.data());
        return b;
    }());
    BN_free(q);
    point_bytes_ = 1 + (static_cast<std::size_t>(EC_GROUP_get_degree(group_)) + 7) / 8;
}

const EcGroup& EcGroup::p256() {
    static const EcGroup g(NID_X9_62_prime256v1);
    return g;
}

const EcGroup& EcGroup::p384() {
    static const EcGroup g(NID_secp384r1);
    return g;
}

const EcGroup& EcGroup::by_security_level(int bits) {
    switch (bits) {
        case 128: return p256();
        case 192: return p384();
        default: throw std::invalid_argument("unsupported security level");
    }
}

Bn EcGroup::random_scalar(RandomSource& rng) const { return Bn::random_below(order_, rng); }

Bn EcGroup::random_scalar_nonzero(RandomSource& rng) const {
    for (;;) {
        Bn k = random_scalar(rng);
        if (!k.is_zero()) return k;
    }
}

namespace {

Bytes encode_point(const EC_GROUP* g, const EC_POINT* p) {
    if (EC_POINT_is_at_infinity(g, p))
        throw std::runtime_error("ec: identity has no compressed encoding");
    std::size_t len = EC_POINT_point2oct(g, p, POINT_CONVERSION_COMPRESSED, nullptr, 0, ctx());
    Bytes out(len);
    if (EC_POINT_point2oct(g, p, POINT_CONVERSION_COMPRESSED, out.data(), len, ctx()) != len)
        throw std::runtime_error("ec: point2oct failed");
    return out;
}

bool decode_point(const EC_GROUP* g, std::span<const std::uint8_t> in, EC_POINT* out) {
    if (in.empty()) return false;
    if (EC_POINT_oct2point(g, out, in.data(), in.size(), ctx()) != 1) {
        ERR_clear_error();
        return false;
    }
    return EC_POINT_is_on_curve(g, out, ctx()) == 1 && !EC_POINT_is_at_infinity(g, out);
}

}  // namespace

Bytes EcGroup::mul_generator(const Bn& k) const {
    PointHandle r(group_);
    if (!EC_POINT_mul(group_, r.p, k.get(), nullptr, nullptr, ctx()))
        throw std::runtime_error("ec: generator mul failed");
    return encode_point(group_, r.p);
}

Bytes EcGroup::mul(std::span<const std::uint8_t> point, const Bn& k) const {
    PointHandle p(group_), r(group_);
    if (!decode_point(group_, point, p.p)) throw std::invalid_argument("ec: bad point");
    if (!EC_POINT_mul(group_, r.p, nullptr, p.p, k.get(), ctx()))
        throw std::runtime_error("ec: point mul failed");
    return encode_point(group_, r.p);
}

Bytes EcGroup::add(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) const {
    PointHandle pa(group_), pb(group_), r(group_);
    if (!decode_point(group_, a, pa.p) || !decode_point(group_, b, pb.p))
        throw std::invalid_argument("ec: bad point");
    if (!EC_POINT_add(group_, r.p, pa.p, pb.p, ctx())) throw std::runtime_error("ec: add failed");
    return encode_point(group_, r.p);
}

Bytes EcGroup::sub(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) const {
    PointHandle pa(group_), pb(group_), r(group_);
    if (!decode_point(group_, a, pa.p) || !decode_point(group_, b, pb.p))
        throw std::invalid_argument("ec: bad point");
    if (!EC_POINT_invert(group_, pb.p, ctx())) throw std::runtime_error("ec: invert failed");
    if (!EC_POINT_add(group_, r.p, pa.p, pb.p, ctx())) throw std::runtime_error("ec: add failed");
    return encode_point(group_, r.p);
}

bool EcGroup::points_equal(std::span<const std::uint8_t> a,
                           std::span<const std::uint8_t> b) const {
    PointHandle pa(group_), pb(group_);
    if (!decode_point(group_, a, pa.p) || !decode_point(group_, b, pb.p)) return false;
    return EC_POINT_cmp(group_, pa.p, pb.p, ctx()) == 0;
}

bool EcGroup::is_identity_combination(std::span<const std::uint8_t> a,
                                      std::span<const std::uint8_t> b) const {
    PointHandle pa(group_), pb(group_), r(group_);
    if (!decode_point(group_, a, pa.p) || !decode_point(group_, b, pb.p)) return false;
    if (!EC_POINT_invert(group_, pb.p, ctx())) return false;
    if (!EC_POINT_add(group_, r.p, pa.p, pb.p, ctx())) return false;
    return EC_POINT_is_at_infinity(group_, r.p) == 1;
}

bool EcGroup::is_valid_point(std::span<const std::uint8_t> encoded) const {
    if (encoded.size() != point_bytes_) return false;
    PointHandle p(group_);
    return decode_point(group_, encoded, p.p);
}

Bytes EcGroup::hash_to_point(std::span<const std::uint8_t> digest) const {
    // Rehash-and-check: candidate x = SHA-256(digest || ctr) (with the curve's
    // byte width), try both compressed parities via oct2point.
    const std::size_t xlen = point_bytes_ - 1;
    for (std::uint32_t ctr = 0;; ++ctr) {
        Bytes material(digest.begin(), digest.end());
        put_u32_be(material, ctr);
        Bytes x;
        std::uint32_t block = 0;
        while (x.size() < xlen) {
            Bytes m2 = material;
            put_u32_be(m2, block++);
            Digest32 d = sha256(m2);
            x.insert(x.end(), d.begin(), d.end());
        }
        x.resize(xlen);
        Bytes candidate;
        candidate.reserve(point_bytes_);
        candidate.push_back(0x02);
        candidate.insert(candidate.end(), x.begin(), x.end());
        PointHandle p(group_);
        if (decode_point(group_, candidate, p.p)) return candidate;
        ERR_clear_error();
    }
}

}  // namespace sa2fe::puzzle
