#ifndef SA2FE_WIRE_ENVELOPE_HPP
#define SA2FE_WIRE_ENVELOPE_HPP

#include <array>
#include <cstdint>
#include <optional>

#include "sa2fe/bytes.hpp"

namespace sa2fe::wire {

inline constexpr std::array<std::uint8_t, 4> kMagic{'S', 'A', '2', 'F'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kMaxPayload = 16 * 1024 * 1024;
inline constexpr std::size_t kHeaderBytes = 4 + 1 + 1 + 16 + 4;

using SessionId = std::array<std::uint8_t, 16>;

enum class MsgType : std::uint8_t {
    SpRegisterRequest = 1,
    SpRegisterReply = 2,
    EsRegisterSpRequest = 3,
    EsRegisterSpReply = 4,
    EsRegisterBsRequest = 5,
    EsRegisterBsReply = 6,
    TokenRequest = 7,
    TokenReply = 8,
    OffloadInit = 9,
    PuzzleList = 10,
    OffloadRequest = 11,
    UserAbort = 12,
    ForwardToEs = 13,
    EsResponse = 14,
    OffloadResponse = 15,
    BsClaimRequest = 16,
    EsClaimRequest = 17,
    ClaimReply = 18,
};

bool msg_type_known(std::uint8_t v);

struct Envelope {
    MsgType type = MsgType::SpRegisterRequest;
    SessionId session{};
    Bytes payload;
};

enum class DecodeError : std::uint8_t {
    None = 0,
    Truncated,
    BadMagic,
    BadVersion,
    UnknownType,
    PayloadTooLarge,
    LengthMismatch,
    BadField,
};

const char* decode_error_name(DecodeError e);

struct DecodeResult {
    std::optional<Envelope> envelope;
    DecodeError error = DecodeError::None;

    bool ok() const { return envelope.has_value(); }
};

Bytes encode_frame(const Envelope& env);
/// Total over arbitrary bytes; never reads past the claimed payload length.
DecodeResult decode_frame(std::span<const std::uint8_t> in);

// ---- bounds-checked payload field coding -----------------------------------

class FieldWriter {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v) { put_u32_be(out_, v); }
    void u64(std::uint64_t v) { put_u64_be(out_, v); }
    void bytes(std::span<const std::uint8_t> data) {
        u32(static_cast<std::uint32_t>(data.size()));
        out_.insert(out_.end(), data.begin(), data.end());
    }
    void str(std::string_view s) { bytes(str_bytes(s)); }
    Bytes take() { return std::move(out_); }

private:
    Bytes out_;
};

/// Reader that records failure instead of throwing; callers check ok() once
/// at the end. Reads never exceed the underlying span.
class FieldReader {
public:
    explicit FieldReader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    Bytes bytes();
    std::string str();

    bool ok() const { return ok_ && off_ == in_.size(); }
    bool mid_ok() const { return ok_; }

private:
    bool take(std::size_t n, std::span<const std::uint8_t>& out);
    std::span<const std::uint8_t> in_;
    std::size_t off_ = 0;
    bool ok_ = true;
};

}  // namespace sa2fe::wire

#endif  // SA2FE_WIRE_ENVELOPE_HPP
