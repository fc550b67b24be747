#include "sa2fe/party/parties.hpp"

namespace sa2fe::party {

User::User(Config cfg, puzzle::PuzzleParams params, blindsig::PublicKey platform_key,
           RandomSource& rng)
    : cfg_(std::move(cfg)),
      params_(std::move(params)),
      platform_key_(std::move(platform_key)),
      rng_(rng) {}

void User::learn_service_key(const std::string& sname, blindsig::PublicKey pk_s) {
    known_service_keys_[sname] = std::move(pk_s);
}

SessionId User::start_session(wire::Sender& out, const std::string& sname,
                              std::span<const std::uint8_t> data,
                              std::span<const std::uint8_t> payment) {
    auto kit = known_service_keys_.find(sname);
    if (kit == known_service_keys_.end())
        throw std::invalid_argument("start_session: service key for " + sname +
                                    " not known (out-of-band step missing)");
    SessionId sid = fresh_session_id(rng_);
    Live& live = sessions_[sid];
    live.rep.sid = sid;
    live.rep.sname = sname;
    live.data.assign(data.begin(), data.end());
    live.creds.pk_s = kit->second;
    live.creds.sname = sname;

    // Two random messages, blinded under independent factors per half.
    live.secret.m1 = rng_.bytes(32);
    do {
        live.secret.m2 = rng_.bytes(32);
    } while (live.secret.m2 == live.secret.m1);
    live.secret.r1 = blindsig::fresh_blinding(platform_key_, rng_);
    live.secret.r2 = blindsig::fresh_blinding(kit->second, rng_);

    wire::TokenRequest req;
    req.sname = sname;
    req.payment.assign(payment.begin(), payment.end());
    req.blinded_m1 = blindsig::blind_msg(platform_key_, live.secret.m1, live.secret.r1);
    req.blinded_m2 = blindsig::blind_msg(kit->second, live.secret.m2, live.secret.r2);
    out.send(cfg_.fa_id, req.to_envelope(sid));
    return sid;
}

void User::on_token_reply(const wire::TokenReply& msg, Live& live, wire::Sender& out) {
    if (msg.status != Reject::None) {
        live.rep.outcome = SessionOutcome::TokenDenied;
        live.rep.reject = msg.status;
        return;
    }
    try {
        live.creds.k_s = msg.k_s;
        live.creds.ur_x = msg.ur_x;
        blindsig::Token token = blindsig::token_finalize(live.secret, msg.sig1_blinded,
                                                         msg.sig2_blinded, platform_key_,
                                                         live.creds.pk_s);
        live.rep.token = token;
    } catch (const blindsig::BlindSigError&) {
        live.rep.outcome = SessionOutcome::TokenDenied;
        live.rep.reject = Reject::InvalidToken;
        return;
    }
    if (cfg_.stop_after_token) {
        live.rep.outcome = SessionOutcome::Success;
        return;
    }
    wire::OffloadInit init;
    init.token = live.rep.token->encode();
    out.send(cfg_.bs_id, init.to_envelope(live.rep.sid));
}

void User::on_puzzle_list(const wire::PuzzleList& msg, Live& live, wire::Sender& out) {
    if (msg.status != Reject::None) {
        live.rep.outcome = SessionOutcome::Rejected;
        live.rep.reject = msg.status;
        return;
    }
    live.rep.list_size = msg.puzzles.size();

    // Match every puzzle against the service key digest; candidates form Z_c.
    puzzle::PuzzleSolution solution = puzzle::encode_solution(sha256(live.creds.k_s), params_);
    puzzle::PuzzleTrapdoor trapdoor;
    trapdoor.scheme = params_.scheme;
    if (params_.scheme == puzzle::Scheme::UniversalReenc) {
        trapdoor.has_secret = true;
        trapdoor.x = live.creds.ur_x;
    }
    std::vector<puzzle::Puzzle> parsed;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < msg.puzzles.size(); ++i) {
        try {
            parsed.push_back(puzzle::deserialize_puzzle(msg.puzzles[i], params_));
            origin.push_back(i);
        } catch (const puzzle::PuzzleError&) {
            // Malformed entries from the broker are ignored, not fatal.
        }
    }
    std::vector<std::uint8_t> hits = puzzle::match_batch(params_, trapdoor, solution, parsed,
                                                         puzzle::ExecPolicy::Serial);
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < hits.size(); ++i)
        if (hits[i]) candidates.push_back(origin[i]);
    live.rep.candidates = candidates.size();

    if (candidates.empty()) {
        live.rep.outcome = SessionOutcome::Aborted;
        out.send(cfg_.bs_id, wire::UserAbort{}.to_envelope(live.rep.sid));
        return;
    }
    std::size_t pick = candidates[rng_.below(candidates.size())];
    live.rep.chosen_puzzle = msg.puzzles[pick];

    wire::FieldWriter plain;
    plain.str(live.rep.sname);
    plain.bytes(live.data);
    wire::OffloadRequest req;
    req.z_u = live.rep.chosen_puzzle;
    req.ct = symenc::seal(live.creds.k_s, plain.take(), rng_).encode();
    out.send(cfg_.bs_id, req.to_envelope(live.rep.sid));
}

void User::on_offload_response(const wire::OffloadResponse& msg, Live& live) {
    if (msg.status != Reject::None) {
        live.rep.outcome = SessionOutcome::Rejected;
        live.rep.reject = msg.status;
        return;
    }
    auto sealed = symenc::Sealed::decode(msg.resp);
    std::optional<Bytes> plain;
    if (sealed) plain = symenc::open(live.creds.k_s, *sealed);
    if (!plain) {
        live.rep.outcome = SessionOutcome::Rejected;
        live.rep.reject = Reject::BadCiphertext;
        return;
    }
    live.rep.resp_data = *plain;
    live.rep.outcome = SessionOutcome::Success;
}

void User::handle(const wire::Delivery& delivery, wire::Sender& out) {
    const wire::Envelope& env = delivery.env;
    auto it = sessions_.find(env.session);
    if (it == sessions_.end()) return;
    Live& live = it->second;
    switch (env.type) {
        case wire::MsgType::TokenReply:
            if (auto msg = wire::TokenReply::from(env)) on_token_reply(*msg, live, out);
            break;
        case wire::MsgType::PuzzleList:
            if (auto msg = wire::PuzzleList::from(env)) on_puzzle_list(*msg, live, out);
            break;
        case wire::MsgType::OffloadResponse:
            if (auto msg = wire::OffloadResponse::from(env)) on_offload_response(*msg, live);
            break;
        default:
            break;
    }
}

const User::SessionReport* User::report(const SessionId& sid) const {
    auto it = sessions_.find(sid);
    return it == sessions_.end() ? nullptr : &it->second.rep;
}

std::vector<const User::SessionReport*> User::reports() const {
    std::vector<const SessionReport*> out;
    for (const auto& [_, live] : sessions_) out.push_back(&live.rep);
    return out;
}

}  // namespace sa2fe::party
