#include "sa2fe/wire/envelope.hpp"

namespace sa2fe::wire {

bool msg_type_known(std::uint8_t v) {
    return v >= static_cast<std::uint8_t>(MsgType::SpRegisterRequest) &&
           v <= static_cast<std::uint8_t>(MsgType::ClaimReply);
}

const char* decode_error_name(DecodeError e) {
    switch (e) {
        case DecodeError::None: return "none";
        case DecodeError::Truncated: return "truncated";
        case DecodeError::BadMagic: return "bad-magic";
        case DecodeError::BadVersion: return "bad-version";
        case DecodeError::UnknownType: return "unknown-type";
        case DecodeError::PayloadTooLarge: return "payload-too-large";
        case DecodeError::LengthMismatch: return "length-mismatch";
        case DecodeError::BadField: return "bad-field";
    }
    return "unknown";
}

Bytes encode_frame(const Envelope& env) {
    Bytes out;
    out.reserve(kHeaderBytes + env.payload.size());
    out.insert(out.end(), kMagic.begin(), kMagic.end());
    out.push_back(kVersion);
    out.push_back(static_cast<std::uint8_t>(env.type));
    out.insert(out.end(), env.session.begin(), env.session.end());
    put_u32_be(out, static_cast<std::uint32_t>(env.payload.size()));
    out.insert(out.end(), env.payload.begin(), env.payload.end());
    return out;
}

DecodeResult decode_frame(std::span<const std::uint8_t> in) {
    DecodeResult res;
    if (in.size() < kHeaderBytes) {
        res.error = DecodeError::Truncated;
        return res;
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (in[i] != kMagic[i]) {
            res.error = DecodeError::BadMagic;
            return res;
        }
    }
    if (in[4] != kVersion) {
        res.error = DecodeError::BadVersion;
        return res;
    }
    if (!msg_type_known(in[5])) {
        res.error = DecodeError::UnknownType;
        return res;
    }
    std::size_t len = read_u32_be(in.subspan(22));
    if (len > kMaxPayload) {
        res.error = DecodeError::PayloadTooLarge;
        return res;
    }
    if (in.size() != kHeaderBytes + len) {
        res.error = DecodeError::LengthMismatch;
        return res;
    }
    Envelope env;
    env.type = static_cast<MsgType>(in[5]);
    std::copy(in.begin() + 6, in.begin() + 22, env.session.begin());
    env.payload.assign(in.begin() + static_cast<std::ptrdiff_t>(kHeaderBytes), in.end());
    res.envelope = std::move(env);
    return res;
}

bool FieldReader::take(std::size_t n, std::span<const std::uint8_t>& out) {
    if (!ok_ || in_.size() - off_ < n) {
        ok_ = false;
        return false;
    }
    out = in_.subspan(off_, n);
    off_ += n;
    return true;
}

std::uint8_t FieldReader::u8() {
    std::span<const std::uint8_t> s;
    if (!take(1, s)) return 0;
    return s[0];
}

std::uint32_t FieldReader::u32() {
    std::span<const std::uint8_t> s;
    if (!take(4, s)) return 0;
    return read_u32_be(s);
}

std::uint64_t FieldReader::u64() {
    std::span<const std::uint8_t> s;
    if (!take(8, s)) return 0;
    return read_u64_be(s);
}

Bytes FieldReader::bytes() {
    std::uint32_t len = u32();
    std::span<const std::uint8_t> s;
    if (!take(len, s)) return {};
    return Bytes(s.begin(), s.end());
}

std::string FieldReader::str() {
    Bytes b = bytes();
    return std::string(b.begin(), b.end());
}

}  // namespace sa2fe::wire
