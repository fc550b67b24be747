#include "sa2fe/party/parties.hpp"

namespace sa2fe::party {

Sp::Sp(Config cfg, RandomSource& rng) : cfg_(std::move(cfg)), rng_(rng) {
    for (const OwnedService& svc : cfg_.services) {
        Owned owned{svc, symenc::keygen(rng_),
                    blindsig::BlindKeyPair::generate(blindsig::Role::Service,
                                                     cfg_.security_level, rng_, svc.sname)};
        owned_.emplace(svc.sname, std::move(owned));
    }
}

void Sp::register_with_fa(wire::Sender& out) {
    for (const auto& [sname, owned] : owned_) {
        wire::SpRegisterRequest req;
        req.spid = cfg_.id;
        req.sname = sname;
        req.workload = owned.meta.workload;
        req.k_s = owned.k_s;
        req.pk_s = owned.keypair.pub().encode();
        req.sk_s_d = owned.keypair.secret_encode();
        out.send(cfg_.fa_id, req.to_envelope(fresh_session_id(rng_)));
    }
}

void Sp::handle(const wire::Delivery& delivery, wire::Sender& out) {
    const wire::Envelope& env = delivery.env;
    switch (env.type) {
        case wire::MsgType::SpRegisterReply: {
            if (auto msg = wire::SpRegisterReply::from(env))
                if (msg->status == Reject::None) registered_ = true;
            break;
        }
        case wire::MsgType::EsRegisterSpRequest: {
            auto msg = wire::EsRegisterSpRequest::from(env);
            if (!msg) break;
            wire::EsRegisterSpReply reply;
            auto it = owned_.find(msg->sname);
            if (it == owned_.end()) {
                reply.status = Reject::UnknownServiceType;
            } else if (it->second.meta.allowed_es.count(msg->esid) == 0) {
                // Eligibility is the configured allow-list; profiling happens
                // out of band.
                reply.status = Reject::NotEligible;
            } else {
                reply.k_s = it->second.k_s;
                reply.pk_s = it->second.keypair.pub().encode();
                reply.workload = it->second.meta.workload;
            }
            out.send(delivery.from, reply.to_envelope(env.session));
            break;
        }
        default:
            break;
    }
}

}  // namespace sa2fe::party
