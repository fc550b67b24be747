#ifndef SA2FE_WIRE_MESSAGES_HPP
#define SA2FE_WIRE_MESSAGES_HPP

#include <optional>
#include <string>
#include <vector>

#include "sa2fe/wire/envelope.hpp"

namespace sa2fe::wire {

/// Protocol-level outcome codes carried in reply payloads. These are domain
/// decisions, not transport errors.
enum class Reject : std::uint8_t {
    None = 0,
    InvalidToken = 1,
    DoubleSpend = 2,
    UnknownPuzzle = 3,
    PuzzleReplay = 4,
    StaleList = 5,
    WrongService = 6,
    BadCiphertext = 7,
    InvalidPayment = 8,
    UnknownServiceType = 9,
    NotEligible = 10,
    AlreadyClaimed = 11,
    WrongServiceType = 12,
    InvalidSignature = 13,
    NoProviders = 14,
    MalformedMessage = 15,
    DuplicateRegistration = 16,
};

const char* reject_name(Reject r);

struct SpRegisterRequest {
    std::string spid, sname, workload;
    Bytes k_s;
    Bytes pk_s;    // blindsig::PublicKey::encode()
    Bytes sk_s_d;  // secret exponent, custody moves to the FA
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<SpRegisterRequest> from(const Envelope& env);
};

struct SpRegisterReply {
    Reject status = Reject::None;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<SpRegisterReply> from(const Envelope& env);
};

struct EsRegisterSpRequest {
    std::string esid, sname;
    Bytes reg_info;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<EsRegisterSpRequest> from(const Envelope& env);
};

struct EsRegisterSpReply {
    Reject status = Reject::None;
    Bytes k_s;
    Bytes pk_s;
    std::string workload;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<EsRegisterSpReply> from(const Envelope& env);
};

struct EsRegisterBsRequest {
    std::string esid;
    std::vector<Bytes> puzzles;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<EsRegisterBsRequest> from(const Envelope& env);
};

struct EsRegisterBsReply {
    Reject status = Reject::None;
    std::uint32_t registered = 0;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<EsRegisterBsReply> from(const Envelope& env);
};

struct TokenRequest {
    std::string sname;
    Bytes blinded_m1, blinded_m2, payment;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<TokenRequest> from(const Envelope& env);
};

struct TokenReply {
    Reject status = Reject::None;
    Bytes sig1_blinded, sig2_blinded;
    Bytes k_s;
    Bytes pk_s;
    Bytes ur_x;  // universal re-encryption trapdoor share; empty otherwise
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<TokenReply> from(const Envelope& env);
};

struct OffloadInit {
    Bytes token;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<OffloadInit> from(const Envelope& env);
};

struct PuzzleList {
    Reject status = Reject::None;
    std::uint64_t version = 0;
    std::vector<Bytes> puzzles;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<PuzzleList> from(const Envelope& env);
};

struct OffloadRequest {
    Bytes z_u;
    Bytes ct;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<OffloadRequest> from(const Envelope& env);
};

struct UserAbort {
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<UserAbort> from(const Envelope& env);
};

struct ForwardToEs {
    Bytes token;
    Bytes ct;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<ForwardToEs> from(const Envelope& env);
};

struct EsResponse {
    Reject status = Reject::None;
    Bytes resp;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<EsResponse> from(const Envelope& env);
};

struct OffloadResponse {
    Reject status = Reject::None;
    Bytes resp;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<OffloadResponse> from(const Envelope& env);
};

struct BsClaimRequest {
    std::string bsid;
    Bytes token;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<BsClaimRequest> from(const Envelope& env);
};

struct EsClaimRequest {
    std::string esid, sname;
    Bytes token;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<EsClaimRequest> from(const Envelope& env);
};

struct ClaimReply {
    Reject status = Reject::None;
    std::uint64_t amount = 0;
    Envelope to_envelope(const SessionId& sid) const;
    static std::optional<ClaimReply> from(const Envelope& env);
};

}  // namespace sa2fe::wire

#endif  // SA2FE_WIRE_MESSAGES_HPP
