#include "sa2fe/wire/messages.hpp"

namespace sa2fe::wire {

namespace {

Envelope wrap(MsgType type, const SessionId& sid, FieldWriter&& w) {
    Envelope env;
    env.type = type;
    env.session = sid;
    env.payload = w.take();
    return env;
}

void write_vec(FieldWriter& w, const std::vector<Bytes>& items) {
    w.u32(static_cast<std::uint32_t>(items.size()));
    for (const Bytes& b : items) w.bytes(b);
}

bool read_vec(FieldReader& r, std::vector<Bytes>& out) {
    std::uint32_t n = r.u32();
    for (std::uint32_t i = 0; i < n && r.mid_ok(); ++i) out.push_back(r.bytes());
    return r.mid_ok();
}

bool valid_reject(std::uint8_t v) {
    return v <= static_cast<std::uint8_t>(Reject::DuplicateRegistration);
}

}  // namespace

const char* reject_name(Reject r) {
    switch (r) {
        case Reject::None: return "ok";
        case Reject::InvalidToken: return "InvalidToken";
        case Reject::DoubleSpend: return "DoubleSpend";
        case Reject::UnknownPuzzle: return "UnknownPuzzle";
        case Reject::PuzzleReplay: return "PuzzleReplay";
        case Reject::StaleList: return "StaleList";
        case Reject::WrongService: return "WrongService";
        case Reject::BadCiphertext: return "BadCiphertext";
        case Reject::InvalidPayment: return "InvalidPayment";
        case Reject::UnknownServiceType: return "UnknownServiceType";
        case Reject::NotEligible: return "NotEligible";
        case Reject::AlreadyClaimed: return "AlreadyClaimed";
        case Reject::WrongServiceType: return "WrongServiceType";
        case Reject::InvalidSignature: return "InvalidSignature";
        case Reject::NoProviders: return "NoProviders";
        case Reject::MalformedMessage: return "MalformedMessage";
        case Reject::DuplicateRegistration: return "DuplicateRegistration";
    }
    return "unknown";
}

Envelope SpRegisterRequest::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.str(spid);
    w.str(sname);
    w.str(workload);
    w.bytes(k_s);
    w.bytes(pk_s);
    w.bytes(sk_s_d);
    return wrap(MsgType::SpRegisterRequest, sid, std::move(w));
}

std::optional<SpRegisterRequest> SpRegisterRequest::from(const Envelope& env) {
    if (env.type != MsgType::SpRegisterRequest) return std::nullopt;
    FieldReader r(env.payload);
    SpRegisterRequest m;
    m.spid = r.str();
    m.sname = r.str();
    m.workload = r.str();
    m.k_s = r.bytes();
    m.pk_s = r.bytes();
    m.sk_s_d = r.bytes();
    if (!r.ok()) return std::nullopt;
    return m;
}

Envelope SpRegisterReply::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.u8(static_cast<std::uint8_t>(status));
    return wrap(MsgType::SpRegisterReply, sid, std::move(w));
}

std::optional<SpRegisterReply> SpRegisterReply::from(const Envelope& env) {
    if (env.type != MsgType::SpRegisterReply) return std::nullopt;
    FieldReader r(env.payload);
    SpRegisterReply m;
    std::uint8_t s = r.u8();
    if (!r.ok() || !valid_reject(s)) return std::nullopt;
    m.status = static_cast<Reject>(s);
    return m;
}

Envelope EsRegisterSpRequest::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.str(esid);
    w.str(sname);
    w.bytes(reg_info);
    return wrap(MsgType::EsRegisterSpRequest, sid, std::move(w));
}

std::optional<EsRegisterSpRequest> EsRegisterSpRequest::from(const Envelope& env) {
    if (env.type != MsgType::EsRegisterSpRequest) return std::nullopt;
    FieldReader r(env.payload);
    EsRegisterSpRequest m;
    m.esid = r.str();
    m.sname = r.str();
    m.reg_info = r.bytes();
    if (!r.ok()) return std::nullopt;
    return m;
}

Envelope EsRegisterSpReply::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.u8(static_cast<std::uint8_t>(status));
    w.bytes(k_s);
    w.bytes(pk_s);
    w.str(workload);
    return wrap(MsgType::EsRegisterSpReply, sid, std::move(w));
}

std::optional<EsRegisterSpReply> EsRegisterSpReply::from(const Envelope& env) {
    if (env.type != MsgType::EsRegisterSpReply) return std::nullopt;
    FieldReader r(env.payload);
    EsRegisterSpReply m;
    std::uint8_t s = r.u8();
    m.k_s = r.bytes();
    m.pk_s = r.bytes();
    m.workload = r.str();
    if (!r.ok() || !valid_reject(s)) return std::nullopt;
    m.status = static_cast<Reject>(s);
    return m;
}

Envelope EsRegisterBsRequest::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.str(esid);
    write_vec(w, puzzles);
    return wrap(MsgType::EsRegisterBsRequest, sid, std::move(w));
}

std::optional<EsRegisterBsRequest> EsRegisterBsRequest::from(const Envelope& env) {
    if (env.type != MsgType::EsRegisterBsRequest) return std::nullopt;
    FieldReader r(env.payload);
    EsRegisterBsRequest m;
    m.esid = r.str();
    if (!read_vec(r, m.puzzles) || !r.ok()) return std::nullopt;
    return m;
}

Envelope EsRegisterBsReply::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.u8(static_cast<std::uint8_t>(status));
    w.u32(registered);
    return wrap(MsgType::EsRegisterBsReply, sid, std::move(w));
}

std::optional<EsRegisterBsReply> EsRegisterBsReply::from(const Envelope& env) {
    if (env.type != MsgType::EsRegisterBsReply) return std::nullopt;
    FieldReader r(env.payload);
    EsRegisterBsReply m;
    std::uint8_t s = r.u8();
    m.registered = r.u32();
    if (!r.ok() || !valid_reject(s)) return std::nullopt;
    m.status = static_cast<Reject>(s);
    return m;
}

Envelope TokenRequest::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.str(sname);
    w.bytes(blinded_m1);
    w.bytes(blinded_m2);
    w.bytes(payment);
    return wrap(MsgType::TokenRequest, sid, std::move(w));
}

std::optional<TokenRequest> TokenRequest::from(const Envelope& env) {
    if (env.type != MsgType::TokenRequest) return std::nullopt;
    FieldReader r(env.payload);
    TokenRequest m;
    m.sname = r.str();
    m.blinded_m1 = r.bytes();
    m.blinded_m2 = r.bytes();
    m.payment = r.bytes();
    if (!r.ok()) return std::nullopt;
    return m;
}

Envelope TokenReply::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.u8(static_cast<std::uint8_t>(status));
    w.bytes(sig1_blinded);
    w.bytes(sig2_blinded);
    w.bytes(k_s);
    w.bytes(pk_s);
    w.bytes(ur_x);
    return wrap(MsgType::TokenReply, sid, std::move(w));
}

std::optional<TokenReply> TokenReply::from(const Envelope& env) {
    if (env.type != MsgType::TokenReply) return std::nullopt;
    FieldReader r(env.payload);
    TokenReply m;
    std::uint8_t s = r.u8();
    m.sig1_blinded = r.bytes();
    m.sig2_blinded = r.bytes();
    m.k_s = r.bytes();
    m.pk_s = r.bytes();
    m.ur_x = r.bytes();
    if (!r.ok() || !valid_reject(s)) return std::nullopt;
    m.status = static_cast<Reject>(s);
    return m;
}

Envelope OffloadInit::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.bytes(token);
    return wrap(MsgType::OffloadInit, sid, std::move(w));
}

std::optional<OffloadInit> OffloadInit::from(const Envelope& env) {
    if (env.type != MsgType::OffloadInit) return std::nullopt;
    FieldReader r(env.payload);
    OffloadInit m;
    m.token = r.bytes();
    if (!r.ok()) return std::nullopt;
    return m;
}

Envelope PuzzleList::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.u8(static_cast<std::uint8_t>(status));
    w.u64(version);
    write_vec(w, puzzles);
    return wrap(MsgType::PuzzleList, sid, std::move(w));
}

std::optional<PuzzleList> PuzzleList::from(const Envelope& env) {
    if (env.type != MsgType::PuzzleList) return std::nullopt;
    FieldReader r(env.payload);
    PuzzleList m;
    std::uint8_t s = r.u8();
    m.version = r.u64();
    if (!read_vec(r, m.puzzles) || !r.ok() || !valid_reject(s)) return std::nullopt;
    m.status = static_cast<Reject>(s);
    return m;
}

Envelope OffloadRequest::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.bytes(z_u);
    w.bytes(ct);
    return wrap(MsgType::OffloadRequest, sid, std::move(w));
}

std::optional<OffloadRequest> OffloadRequest::from(const Envelope& env) {
    if (env.type != MsgType::OffloadRequest) return std::nullopt;
    FieldReader r(env.payload);
    OffloadRequest m;
    m.z_u = r.bytes();
    m.ct = r.bytes();
    if (!r.ok()) return std::nullopt;
    return m;
}

Envelope UserAbort::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    return wrap(MsgType::UserAbort, sid, std::move(w));
}

std::optional<UserAbort> UserAbort::from(const Envelope& env) {
    if (env.type != MsgType::UserAbort || !env.payload.empty()) return std::nullopt;
    return UserAbort{};
}

Envelope ForwardToEs::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.bytes(token);
    w.bytes(ct);
    return wrap(MsgType::ForwardToEs, sid, std::move(w));
}

std::optional<ForwardToEs> ForwardToEs::from(const Envelope& env) {
    if (env.type != MsgType::ForwardToEs) return std::nullopt;
    FieldReader r(env.payload);
    ForwardToEs m;
    m.token = r.bytes();
    m.ct = r.bytes();
    if (!r.ok()) return std::nullopt;
    return m;
}

Envelope EsResponse::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.u8(static_cast<std::uint8_t>(status));
    w.bytes(resp);
    return wrap(MsgType::EsResponse, sid, std::move(w));
}

std::optional<EsResponse> EsResponse::from(const Envelope& env) {
    if (env.type != MsgType::EsResponse) return std::nullopt;
    FieldReader r(env.payload);
    EsResponse m;
    std::uint8_t s = r.u8();
    m.resp = r.bytes();
    if (!r.ok() || !valid_reject(s)) return std::nullopt;
    m.status = static_cast<Reject>(s);
    return m;
}

Envelope OffloadResponse::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.u8(static_cast<std::uint8_t>(status));
    w.bytes(resp);
    return wrap(MsgType::OffloadResponse, sid, std::move(w));
}

std::optional<OffloadResponse> OffloadResponse::from(const Envelope& env) {
    if (env.type != MsgType::OffloadResponse) return std::nullopt;
    FieldReader r(env.payload);
    OffloadResponse m;
    std::uint8_t s = r.u8();
    m.resp = r.bytes();
    if (!r.ok() || !valid_reject(s)) return std::nullopt;
    m.status = static_cast<Reject>(s);
    return m;
}

Envelope BsClaimRequest::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.str(bsid);
    w.bytes(token);
    return wrap(MsgType::BsClaimRequest, sid, std::move(w));
}

std::optional<BsClaimRequest> BsClaimRequest::from(const Envelope& env) {
    if (env.type != MsgType::BsClaimRequest) return std::nullopt;
    FieldReader r(env.payload);
    BsClaimRequest m;
    m.bsid = r.str();
    m.token = r.bytes();
    if (!r.ok()) return std::nullopt;
    return m;
}

Envelope EsClaimRequest::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.str(esid);
    w.str(sname);
    w.bytes(token);
    return wrap(MsgType::EsClaimRequest, sid, std::move(w));
}

std::optional<EsClaimRequest> EsClaimRequest::from(const Envelope& env) {
    if (env.type != MsgType::EsClaimRequest) return std::nullopt;
    FieldReader r(env.payload);
    EsClaimRequest m;
    m.esid = r.str();
    m.sname = r.str();
    m.token = r.bytes();
    if (!r.ok()) return std::nullopt;
    return m;
}

Envelope ClaimReply::to_envelope(const SessionId& sid) const {
    FieldWriter w;
    w.u8(static_cast<std::uint8_t>(status));
    w.u64(amount);
    return wrap(MsgType::ClaimReply, sid, std::move(w));
}

std::optional<ClaimReply> ClaimReply::from(const Envelope& env) {
    if (env.type != MsgType::ClaimReply) return std::nullopt;
    FieldReader r(env.payload);
    ClaimReply m;
    std::uint8_t s = r.u8();
    m.amount = r.u64();
    if (!r.ok() || !valid_reject(s)) return std::nullopt;
    m.status = static_cast<Reject>(s);
    return m;
}

}  // namespace sa2fe::wire
