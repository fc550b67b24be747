#include <chrono>
#include <thread>

#include "sa2fe/party/parties.hpp"

namespace sa2fe::party {

SessionId fresh_session_id(RandomSource& rng) {
    SessionId sid;
    rng.fill(sid);
    return sid;
}

bool workload_known(const std::string& workload) {
    if (workload == "echo" || workload == "sum-bytes") return true;
    return workload.rfind("sleep(", 0) == 0 && workload.back() == ')';
}

Bytes run_workload(const std::string& workload, std::span<const std::uint8_t> data) {
    if (workload == "echo") return Bytes(data.begin(), data.end());
    if (workload == "sum-bytes") {
        std::uint64_t sum = 0;
        for (std::uint8_t b : data) sum += b;
        Bytes out;
        put_u64_be(out, sum);
        return out;
    }
    if (workload.rfind("sleep(", 0) == 0 && workload.back() == ')') {
        int ms = std::stoi(workload.substr(6, workload.size() - 7));
        std::this_thread::sleep_for(std::chrono::milliseconds(ms));
        return Bytes(data.begin(), data.end());
    }
    throw std::invalid_argument("unknown workload: " + workload);
}

Fa::Fa(Config cfg, RandomSource& rng)
    : cfg_(std::move(cfg)),
      rng_(rng),
      platform_(blindsig::BlindKeyPair::generate(blindsig::Role::Platform, cfg_.security_level,
                                                 rng)) {
    auto [params, trapdoor] = puzzle::puzzle_setup(cfg_.scheme, cfg_.security_level, rng);
    params_ = std::move(params);
    trapdoor_ = std::move(trapdoor);
    ledger_ = std::make_unique<ledger::ClaimLedger>(
        platform_.pub(),
        [this](const std::string& sname) -> std::optional<blindsig::PublicKey> {
            auto it = services_.find(sname);
            if (it == services_.end()) return std::nullopt;
            return it->second.pk_s;
        },
        cfg_.amounts, cfg_.ledger_log_path);
}

std::optional<ServiceRecord> Fa::service(const std::string& sname) const {
    auto it = services_.find(sname);
    if (it == services_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t Fa::tokens_issued(const std::string& sname) const {
    auto it = issued_.find(sname);
    return it == issued_.end() ? 0 : it->second;
}

void Fa::on_sp_register(const wire::SpRegisterRequest& msg, const SessionId& sid,
                        const std::string& reply_to, wire::Sender& out) {
    wire::SpRegisterReply reply;
    blindsig::PublicKey pk;
    try {
        pk = blindsig::PublicKey::decode(msg.pk_s);
    } catch (const blindsig::BlindSigError&) {
        reply.status = Reject::MalformedMessage;
        out.send(reply_to, reply.to_envelope(sid));
        return;
    }
    auto it = services_.find(msg.sname);
    if (it != services_.end()) {
        const ServiceRecord& rec = it->second;
        bool same = rec.spid == msg.spid && rec.k_s == msg.k_s && rec.pk_s == pk &&
                    rec.sk_s_d == msg.sk_s_d && rec.workload == msg.workload;
        // Re-registration is idempotent; the same name under different keys
        // is refused.
        reply.status = same ? Reject::None : Reject::DuplicateRegistration;
        out.send(reply_to, reply.to_envelope(sid));
        return;
    }
    if (msg.k_s.size() != symenc::kKeyBytes || !workload_known(msg.workload)) {
        reply.status = Reject::MalformedMessage;
        out.send(reply_to, reply.to_envelope(sid));
        return;
    }
    ServiceRecord rec;
    rec.spid = msg.spid;
    rec.sname = msg.sname;
    rec.workload = msg.workload;
    rec.k_s = msg.k_s;
    rec.pk_s = pk;
    rec.sk_s_d = msg.sk_s_d;
    if (trapdoor_.has_secret) rec.ur_x = trapdoor_.x;
    services_.emplace(msg.sname, std::move(rec));
    out.send(reply_to, reply.to_envelope(sid));
}

void Fa::on_token_request(const wire::TokenRequest& msg, const SessionId& sid,
                          const std::string& reply_to, wire::Sender& out) {
    wire::TokenReply reply;
    auto it = services_.find(msg.sname);
    if (it == services_.end()) {
        reply.status = Reject::UnknownServiceType;
        out.send(reply_to, reply.to_envelope(sid));
        return;
    }
    if (cfg_.payment_vouchers.find(msg.payment) == cfg_.payment_vouchers.end()) {
        reply.status = Reject::InvalidPayment;
        out.send(reply_to, reply.to_envelope(sid));
        return;
    }
    const ServiceRecord& svc = it->second;
    blindsig::BlindKeyPair service_kp = blindsig::BlindKeyPair::from_parts(svc.pk_s, svc.sk_s_d);
    try {
        reply.sig1_blinded = blindsig::blind_sign(platform_, msg.blinded_m1);
        reply.sig2_blinded = blindsig::blind_sign(service_kp, msg.blinded_m2);
    } catch (const blindsig::BlindSigError&) {
        reply = wire::TokenReply{};
        reply.status = Reject::MalformedMessage;
        out.send(reply_to, reply.to_envelope(sid));
        return;
    }
    reply.k_s = svc.k_s;
    reply.pk_s = svc.pk_s.encode();
    reply.ur_x = svc.ur_x;
    issued_[msg.sname] += 1;  // issuance metadata; the blinded values are never stored
    out.send(reply_to, reply.to_envelope(sid));
}

void Fa::handle(const wire::Delivery& delivery, wire::Sender& out) {
    const wire::Envelope& env = delivery.env;
    switch (env.type) {
        case wire::MsgType::SpRegisterRequest: {
            if (auto msg = wire::SpRegisterRequest::from(env))
                on_sp_register(*msg, env.session, delivery.from, out);
            break;
        }
        case wire::MsgType::TokenRequest: {
            if (auto msg = wire::TokenRequest::from(env))
                on_token_request(*msg, env.session, delivery.from, out);
            break;
        }
        case wire::MsgType::BsClaimRequest: {
            auto msg = wire::BsClaimRequest::from(env);
            wire::ClaimReply reply;
            if (!msg) break;
            auto token = blindsig::Token::decode(msg->token);
            if (!token) {
                reply.status = Reject::InvalidToken;
            } else {
                ledger::ClaimOutcome res = ledger_->process_bs_claim(*token);
                if (res.paid) {
                    reply.amount = res.amount;
                } else if (res.fail == ledger::ClaimFail::AlreadyClaimed) {
                    reply.status = Reject::AlreadyClaimed;
                } else {
                    reply.status = Reject::InvalidSignature;
                }
            }
            out.send(delivery.from, reply.to_envelope(env.session));
            break;
        }
        case wire::MsgType::EsClaimRequest: {
            auto msg = wire::EsClaimRequest::from(env);
            wire::ClaimReply reply;
            if (!msg) break;
            auto token = blindsig::Token::decode(msg->token);
            if (!token) {
                reply.status = Reject::InvalidToken;
            } else {
                ledger::ClaimOutcome res = ledger_->process_es_claim(msg->sname, *token);
                if (res.paid) {
                    reply.amount = res.amount;
                } else if (res.fail == ledger::ClaimFail::AlreadyClaimed) {
                    reply.status = Reject::AlreadyClaimed;
                } else if (res.fail == ledger::ClaimFail::WrongServiceType) {
                    reply.status = Reject::WrongServiceType;
                } else {
                    reply.status = Reject::InvalidSignature;
                }
            }
            out.send(delivery.from, reply.to_envelope(env.session));
            break;
        }
        default:
            break;  // not addressed to the FA; drop
    }
}

}  // namespace sa2fe::party
