#include "sa2fe/blindsig/blind.hpp"

namespace sa2fe::blindsig {

namespace {

constexpr std::uint64_t kPublicExponent = 65537;

int modulus_bits(int security_level) {
    switch (security_level) {
        case 128: return 2048;
        case 192: return 3072;
        default: throw BlindSigError("unsupported security level");
    }
}

Bn prime_for(int bits, const Bn& e, RandomSource& rng) {
    for (;;) {
        Bn cand = Bn::random_odd_bits(bits, rng);
        if (!cand.is_prime()) continue;
        Bn pm1 = Bn::sub(cand, Bn(1));
        if (Bn::gcd(e, pm1).is_one()) return cand;
    }
}

// MGF1-SHA256 expansion of the message, reduced into [0, n).
Bn fdh(std::span<const std::uint8_t> msg, const Bn& n) {
    const std::size_t want = static_cast<std::size_t>(n.num_bytes()) + 8;
    Bytes out;
    std::uint32_t ctr = 0;
    while (out.size() < want) {
        Bytes block(msg.begin(), msg.end());
        put_u32_be(block, ctr++);
        Digest32 d = sha256(block);
        out.insert(out.end(), d.begin(), d.end());
    }
    out.resize(want);
    return Bn::mod(Bn::from_bytes(out), n);
}

}  // namespace

Bytes PublicKey::encode() const {
    Bytes out;
    out.push_back(static_cast<std::uint8_t>(role));
    put_u32_be(out, static_cast<std::uint32_t>(service_id.size()));
    out.insert(out.end(), service_id.begin(), service_id.end());
    put_u32_be(out, static_cast<std::uint32_t>(n.size()));
    out.insert(out.end(), n.begin(), n.end());
    put_u32_be(out, static_cast<std::uint32_t>(e.size()));
    out.insert(out.end(), e.begin(), e.end());
    return out;
}

PublicKey PublicKey::decode(std::span<const std::uint8_t> in) {
    auto need = [&](std::size_t off, std::size_t len) {
        if (in.size() < off + len) throw BlindSigError("public key: truncated");
    };
    need(0, 5);
    PublicKey pk;
    pk.role = static_cast<Role>(in[0]);
    if (pk.role != Role::Platform && pk.role != Role::Service)
        throw BlindSigError("public key: bad role");
    std::size_t off = 1;
    std::size_t sid_len = read_u32_be(in.subspan(off));
    off += 4;
    need(off, sid_len);
    pk.service_id.assign(in.begin() + static_cast<std::ptrdiff_t>(off),
                         in.begin() + static_cast<std::ptrdiff_t>(off + sid_len));
    off += sid_len;
    need(off, 4);
    std::size_t n_len = read_u32_be(in.subspan(off));
    off += 4;
    need(off, n_len);
    pk.n.assign(in.begin() + static_cast<std::ptrdiff_t>(off),
                in.begin() + static_cast<std::ptrdiff_t>(off + n_len));
    off += n_len;
    need(off, 4);
    std::size_t e_len = read_u32_be(in.subspan(off));
    off += 4;
    need(off, e_len);
    pk.e.assign(in.begin() + static_cast<std::ptrdiff_t>(off),
                in.begin() + static_cast<std::ptrdiff_t>(off + e_len));
    if (off + e_len != in.size()) throw BlindSigError("public key: trailing bytes");
    return pk;
}

BlindKeyPair BlindKeyPair::generate(Role role, int security_level, RandomSource& rng,
                                    const std::string& service_id) {
    const int bits = modulus_bits(security_level);
    Bn e(kPublicExponent);
    Bn p = prime_for(bits / 2, e, rng);
    Bn q = prime_for(bits / 2, e, rng);
    while (q == p) q = prime_for(bits / 2, e, rng);
    Bn n = Bn::mul(p, q);
    Bn phi = Bn::mul(Bn::sub(p, Bn(1)), Bn::sub(q, Bn(1)));
    Bn d = Bn::mod_inverse(e, phi);

    BlindKeyPair kp;
    kp.pub_.role = role;
    kp.pub_.service_id = role == Role::Service ? service_id : "";
    kp.pub_.n = n.to_bytes();
    kp.pub_.e = e.to_bytes();
    kp.d_ = std::move(d);
    return kp;
}

BlindKeyPair BlindKeyPair::insecure_test_keypair(std::uint64_t n, std::uint64_t e,
                                                 std::uint64_t d, Role role) {
    BlindKeyPair kp;
    kp.pub_.role = role;
    kp.pub_.n = Bn(n).to_bytes();
    kp.pub_.e = Bn(e).to_bytes();
    kp.d_ = Bn(d);
    kp.insecure_test_ = true;
    return kp;
}

Bytes BlindKeyPair::secret_encode() const { return d_.to_bytes(); }

BlindKeyPair BlindKeyPair::from_parts(const PublicKey& pub, std::span<const std::uint8_t> d,
                                      bool insecure_test) {
    BlindKeyPair kp;
    kp.pub_ = pub;
    kp.d_ = Bn::from_bytes(d);
    kp.insecure_test_ = insecure_test;
    return kp;
}

Bn message_representative(const PublicKey& pk, std::span<const std::uint8_t> msg,
                          bool insecure_test) {
    Bn n = Bn::from_bytes(pk.n);
    if (insecure_test) return Bn::mod(Bn::from_bytes(msg), n);
    return fdh(msg, n);
}

BlindingFactor fresh_blinding(const PublicKey& pk, RandomSource& rng) {
    Bn n = Bn::from_bytes(pk.n);
    for (;;) {
        Bn r = Bn::random_below(n, rng);
        if (r.is_zero()) continue;
        if (!Bn::mod_inverse(r, n).is_zero()) return BlindingFactor{r.to_bytes()};
    }
}

Bytes blind_msg(const PublicKey& pk, std::span<const std::uint8_t> msg, const BlindingFactor& r,
                bool insecure_test) {
    Bn n = Bn::from_bytes(pk.n);
    Bn e = Bn::from_bytes(pk.e);
    Bn rb = Bn::from_bytes(r.r);
    if (Bn::mod_inverse(rb, n).is_zero()) throw BlindSigError("blinding factor not invertible");
    Bn rep = message_representative(pk, msg, insecure_test);
    Bn blinded = Bn::mod_mul(rep, Bn::mod_exp(rb, e, n), n);
    return blinded.to_bytes_padded(pk.modulus_bytes());
}

Bytes blind_sign(const BlindKeyPair& kp, std::span<const std::uint8_t> blinded) {
    if (!kp.has_secret()) throw BlindSigError("blind_sign: no secret key");
    Bn n = Bn::from_bytes(kp.pub().n);
    Bn m = Bn::from_bytes(blinded);
    if (!(m < n)) throw BlindSigError("blind_sign: input out of range");
    Bn s = Bn::mod_exp(m, kp.secret_exponent(), n);
    return s.to_bytes_padded(kp.pub().modulus_bytes());
}

Bytes unblind_sign(const PublicKey& pk, std::span<const std::uint8_t> blinded_sig,
                   const BlindingFactor& r) {
    Bn n = Bn::from_bytes(pk.n);
    Bn rb = Bn::from_bytes(r.r);
    Bn rinv = Bn::mod_inverse(rb, n);
    if (rinv.is_zero()) throw BlindSigError("blinding factor not invertible");
    Bn s = Bn::mod_mul(Bn::from_bytes(blinded_sig), rinv, n);
    return s.to_bytes_padded(pk.modulus_bytes());
}

bool blind_verify(const PublicKey& pk, std::span<const std::uint8_t> msg,
                  std::span<const std::uint8_t> sig, bool insecure_test) {
    if (sig.empty() || pk.n.empty()) return false;
    Bn n = Bn::from_bytes(pk.n);
    Bn s = Bn::from_bytes(sig);
    if (!(s < n)) return false;
    Bn rep = message_representative(pk, msg, insecure_test);
    return Bn::mod_exp(s, Bn::from_bytes(pk.e), n) == rep;
}

// ---- token ------------------------------------------------------------------

namespace {

void put_chunk(Bytes& out, std::span<const std::uint8_t> data) {
    put_u32_be(out, static_cast<std::uint32_t>(data.size()));
    out.insert(out.end(), data.begin(), data.end());
}

}  // namespace

Bytes Token::encode() const {
    Bytes out;
    put_chunk(out, m1);
    put_chunk(out, sig1);
    put_chunk(out, m2);
    put_chunk(out, sig2);
    return out;
}

std::optional<Token> Token::decode(std::span<const std::uint8_t> in) {
    Token t;
    std::size_t off = 0;
    for (Bytes* field : {&t.m1, &t.sig1, &t.m2, &t.sig2}) {
        if (in.size() < off + 4) return std::nullopt;
        std::size_t len = read_u32_be(in.subspan(off));
        off += 4;
        if (in.size() < off + len) return std::nullopt;
        field->assign(in.begin() + static_cast<std::ptrdiff_t>(off),
                      in.begin() + static_cast<std::ptrdiff_t>(off + len));
        off += len;
    }
    if (off != in.size()) return std::nullopt;
    return t;
}

Digest32 Token::identity_hash() const { return sha256_concat(m1, m2); }

TokenRequest token_request_build(const PublicKey& pk_platform, const PublicKey& pk_service,
                                 RandomSource& rng) {
    TokenRequest req;
    req.secret.m1 = rng.bytes(32);
    do {
        req.secret.m2 = rng.bytes(32);
    } while (req.secret.m2 == req.secret.m1);
    req.secret.r1 = fresh_blinding(pk_platform, rng);
    req.secret.r2 = fresh_blinding(pk_service, rng);
    req.blinded_m1 = blind_msg(pk_platform, req.secret.m1, req.secret.r1);
    req.blinded_m2 = blind_msg(pk_service, req.secret.m2, req.secret.r2);
    return req;
}

Token token_finalize(const TokenSecret& secret, std::span<const std::uint8_t> blinded_sig1,
                     std::span<const std::uint8_t> blinded_sig2, const PublicKey& pk_platform,
                     const PublicKey& pk_service) {
    Token t;
    t.m1 = secret.m1;
    t.m2 = secret.m2;
    t.sig1 = unblind_sign(pk_platform, blinded_sig1, secret.r1);
    t.sig2 = unblind_sign(pk_service, blinded_sig2, secret.r2);
    if (!blind_verify(pk_platform, t.m1, t.sig1))
        throw TokenFinalizeError(TokenHalf::Platform, "platform half failed verification");
    if (!blind_verify(pk_service, t.m2, t.sig2))
        throw TokenFinalizeError(TokenHalf::Service, "service half failed verification");
    return t;
}

}  // namespace sa2fe::blindsig
