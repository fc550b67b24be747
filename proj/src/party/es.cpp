#include "sa2fe/party/parties.hpp"

namespace sa2fe::party {

Es::Es(Config cfg, puzzle::PuzzleParams params, RandomSource& rng)
    : cfg_(std::move(cfg)), params_(std::move(params)), rng_(rng) {}

void Es::register_with_sp(wire::Sender& out, const std::string& sp_id, const std::string& sname,
                          std::span<const std::uint8_t> reg_info) {
    wire::EsRegisterSpRequest req;
    req.esid = cfg_.id;
    req.sname = sname;
    req.reg_info.assign(reg_info.begin(), reg_info.end());
    out.send(sp_id, req.to_envelope(fresh_session_id(rng_)));
}

void Es::register_with_bs(wire::Sender& out) {
    wire::EsRegisterBsRequest req;
    req.esid = cfg_.id;
    for (const ServiceRecord& cred : credentials_) {
        puzzle::PuzzleSolution solution = puzzle::encode_solution(sha256(cred.k_s), params_);
        for (std::size_t w = 0; w < cfg_.capability_weight; ++w) {
            puzzle::Puzzle p = puzzle::puzzle_gen(params_, solution, rng_);
            req.puzzles.push_back(puzzle::serialize_puzzle(p));
        }
    }
    out.send(cfg_.bs_id, req.to_envelope(fresh_session_id(rng_)));
}

std::optional<ServiceRecord> Es::credential(const std::string& sname) const {
    for (const ServiceRecord& c : credentials_)
        if (c.sname == sname) return c;
    return std::nullopt;
}

void Es::handle(const wire::Delivery& delivery, wire::Sender& out) {
    const wire::Envelope& env = delivery.env;
    switch (env.type) {
        case wire::MsgType::EsRegisterSpReply: {
            auto msg = wire::EsRegisterSpReply::from(env);
            if (!msg || msg->status != Reject::None) break;
            ServiceRecord cred;
            try {
                cred.pk_s = blindsig::PublicKey::decode(msg->pk_s);
            } catch (const blindsig::BlindSigError&) {
                break;
            }
            cred.sname = cred.pk_s.service_id;
            cred.k_s = msg->k_s;
            cred.workload = msg->workload;
            // Registering another service yields an independent credential set.
            std::erase_if(credentials_,
                          [&](const ServiceRecord& c) { return c.sname == cred.sname; });
            credentials_.push_back(std::move(cred));
            break;
        }
        case wire::MsgType::ForwardToEs: {
            auto msg = wire::ForwardToEs::from(env);
            if (!msg) break;
            wire::EsResponse reply;
            auto token = blindsig::Token::decode(msg->token);
            if (!token) {
                reply.status = Reject::WrongService;
                out.send(delivery.from, reply.to_envelope(env.session));
                break;
            }
            // Find the service whose key verifies the service-specific half.
            const ServiceRecord* matched = nullptr;
            for (const ServiceRecord& cred : credentials_) {
                if (blindsig::blind_verify(cred.pk_s, token->m2, token->sig2)) {
                    matched = &cred;
                    break;
                }
            }
            if (!matched) {
                reply.status = Reject::WrongService;
                out.send(delivery.from, reply.to_envelope(env.session));
                break;
            }
            auto sealed = symenc::Sealed::decode(msg->ct);
            std::optional<Bytes> plain;
            if (sealed) plain = symenc::open(matched->k_s, *sealed);
            if (!plain) {
                reply.status = Reject::BadCiphertext;
                out.send(delivery.from, reply.to_envelope(env.session));
                break;
            }
            // Plaintext is s_type || data; the embedded type must agree with
            // the key that authenticated it.
            wire::FieldReader r(*plain);
            std::string s_type = r.str();
            Bytes data = r.bytes();
            if (!r.ok() || s_type != matched->sname) {
                reply.status = Reject::BadCiphertext;
                out.send(delivery.from, reply.to_envelope(env.session));
                break;
            }
            Bytes result = run_workload(matched->workload, data);
            reply.resp = symenc::seal(matched->k_s, result, rng_).encode();
            ++served_;
            held_tokens_.emplace_back(matched->sname, *token);
            out.send(delivery.from, reply.to_envelope(env.session));
            if (cfg_.auto_claim) {
                wire::EsClaimRequest claim;
                claim.esid = cfg_.id;
                claim.sname = matched->sname;
                claim.token = msg->token;
                out.send(cfg_.fa_id, claim.to_envelope(env.session));
            }
            break;
        }
        case wire::MsgType::ClaimReply: {
            if (auto msg = wire::ClaimReply::from(env))
                if (msg->status == Reject::None) claim_paid_ += msg->amount;
            break;
        }
        default:
            break;
    }
}

}  // namespace sa2fe::party
