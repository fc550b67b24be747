#include <algorithm>

#include "sa2fe/party/parties.hpp"

namespace sa2fe::party {

Bs::Bs(Config cfg, puzzle::PuzzleParams params, blindsig::PublicKey platform_key,
       RandomSource& rng)
    : cfg_(std::move(cfg)),
      params_(std::move(params)),
      platform_key_(std::move(platform_key)),
      rng_(rng) {}

void Bs::record(wire::MsgType ev, Reject outcome, std::size_t list_size, std::uint64_t version) {
    decisions_.push_back(Decision{ev, outcome, list_size, version});
}

std::uint64_t Bs::build_batch(const SessionId* owner) {
    std::vector<puzzle::Puzzle> current;
    current.reserve(slots_.size());
    for (const Slot& s : slots_) current.push_back(s.current);
    Bytes seed = rng_.bytes(32);
    std::vector<puzzle::Puzzle> fresh = puzzle::rerandomize_batch(
        params_, current, seed,
        cfg_.parallel_kernels ? puzzle::ExecPolicy::Parallel : puzzle::ExecPolicy::Serial);

    std::uint64_t v = ++version_;
    Batch batch;
    if (owner) {
        batch.owner = *owner;
        batch.has_owner = true;
    }
    batches_[v] = batch;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
        slots_[i].current = fresh[i];
        MapEntry entry;
        entry.es_id = slots_[i].es_id;
        entry.slot_index = slots_[i].slot_index;
        entry.version = v;
        if (owner) {
            entry.owner = *owner;
            entry.has_owner = true;
        }
        p_map_[sha256(puzzle::serialize_puzzle(fresh[i]))] = entry;
    }
    return v;
}

void Bs::on_es_register(const wire::EsRegisterBsRequest& msg, const SessionId& sid,
                        const std::string& from, wire::Sender& out) {
    wire::EsRegisterBsReply reply;
    std::vector<puzzle::Puzzle> parsed;
    for (const Bytes& raw : msg.puzzles) {
        try {
            parsed.push_back(puzzle::deserialize_puzzle(raw, params_));
        } catch (const puzzle::PuzzleError&) {
            reply.status = Reject::MalformedMessage;
            out.send(from, reply.to_envelope(sid));
            return;
        }
    }
    // Re-registration replaces this ES's previous slots.
    std::vector<Slot> kept;
    for (Slot& s : slots_)
        if (s.es_id != msg.esid) kept.push_back(std::move(s));
    slots_ = std::move(kept);
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        Slot s;
        s.es_id = msg.esid;
        s.slot_index = i;
        s.current = std::move(parsed[i]);
        MapEntry entry;
        entry.es_id = s.es_id;
        entry.slot_index = i;
        entry.version = 0;  // registration-time puzzles, never issued to a user
        p_map_[sha256(puzzle::serialize_puzzle(s.current))] = entry;
        slots_.push_back(std::move(s));
    }
    reply.registered = static_cast<std::uint32_t>(parsed.size());
    out.send(from, reply.to_envelope(sid));
    record(wire::MsgType::EsRegisterBsRequest, Reject::None, parsed.size(), version_);
}

void Bs::on_init(const wire::OffloadInit& msg, const SessionId& sid, const std::string& from,
                 wire::Sender& out) {
    wire::PuzzleList reply;
    auto token = blindsig::Token::decode(msg.token);
    if (!token || !blindsig::blind_verify(platform_key_, token->m1, token->sig1)) {
        reply.status = Reject::InvalidToken;
        record(wire::MsgType::OffloadInit, reply.status, 0, 0);
        out.send(from, reply.to_envelope(sid));
        return;
    }
    if (seen_tokens_.seen(token->identity_hash())) {
        reply.status = Reject::DoubleSpend;
        record(wire::MsgType::OffloadInit, reply.status, 0, 0);
        out.send(from, reply.to_envelope(sid));
        return;
    }
    if (slots_.empty()) {
        reply.status = Reject::NoProviders;
        record(wire::MsgType::OffloadInit, reply.status, 0, 0);
        out.send(from, reply.to_envelope(sid));
        return;
    }

    Session& session = sessions_[sid];
    if (session.version != 0) batches_[session.version].superseded = true;  // re-init
    std::uint64_t v = build_batch(&sid);
    session.token = msg.token;
    session.token_hash = token->identity_hash();
    session.version = v;
    session.user_addr = from;

    reply.version = v;
    for (const Slot& s : slots_) reply.puzzles.push_back(puzzle::serialize_puzzle(s.current));
    // Uniform permutation of the list sent to the user.
    for (std::size_t i = reply.puzzles.size(); i > 1; --i)
        std::swap(reply.puzzles[i - 1], reply.puzzles[rng_.below(i)]);
    record(wire::MsgType::OffloadInit, Reject::None, reply.puzzles.size(), v);
    out.send(from, reply.to_envelope(sid));
}

void Bs::on_request(const wire::OffloadRequest& msg, const SessionId& sid,
                    const std::string& from, wire::Sender& out) {
    auto reject = [&](Reject why) {
        auto sit = sessions_.find(sid);
        if (sit != sessions_.end() && sit->second.version != 0) {
            batches_[sit->second.version].superseded = true;
            sit->second.version = 0;
            build_batch(nullptr);  // only the offender's batch is invalidated
        }
        record(wire::MsgType::OffloadRequest, why, 0, 0);
        wire::OffloadResponse resp;
        resp.status = why;
        out.send(from, resp.to_envelope(sid));
    };

    auto sit = sessions_.find(sid);
    if (sit == sessions_.end() || sit->second.token.empty()) {
        reject(Reject::InvalidToken);
        return;
    }
    Session& session = sit->second;
    auto token = blindsig::Token::decode(session.token);
    if (!token || !blindsig::blind_verify(platform_key_, token->m1, token->sig1)) {
        reject(Reject::InvalidToken);
        return;
    }
    if (seen_tokens_.seen(session.token_hash)) {
        reject(Reject::DoubleSpend);
        return;
    }
    auto pit = p_map_.find(sha256(msg.z_u));
    if (pit == p_map_.end() || !pit->second.has_owner || !(pit->second.owner == sid)) {
        reject(Reject::UnknownPuzzle);  // never issued to this session
        return;
    }
    const MapEntry& entry = pit->second;
    if (batches_[entry.version].used) {
        reject(Reject::PuzzleReplay);
        return;
    }
    if (entry.version != session.version || batches_[entry.version].superseded) {
        reject(Reject::StaleList);
        return;
    }

    if (seen_tokens_.mark(session.token_hash) != ledger::SpendSet::Mark::Ok) {
        reject(Reject::DoubleSpend);
        return;
    }
    batches_[entry.version].used = true;  // whole batch: one request per list
    session.awaiting_response = true;
    session.user_addr = from;
    session.pending_token = session.token;
    ++forwarded_;
    record(wire::MsgType::OffloadRequest, Reject::None, 0, entry.version);

    wire::ForwardToEs fwd;
    fwd.token = session.token;
    fwd.ct = msg.ct;
    out.send(entry.es_id, fwd.to_envelope(sid));

    build_batch(nullptr);  // post-request refresh: latest version moves on
}

void Bs::on_es_response(const wire::EsResponse& msg, const SessionId& sid, wire::Sender& out) {
    auto sit = sessions_.find(sid);
    if (sit == sessions_.end() || !sit->second.awaiting_response) return;
    Session& session = sit->second;
    session.awaiting_response = false;

    wire::OffloadResponse resp;
    resp.status = msg.status;
    resp.resp = msg.resp;
    record(wire::MsgType::EsResponse, msg.status, 0, session.version);
    out.send(session.user_addr, resp.to_envelope(sid));

    if (cfg_.auto_claim && !session.pending_token.empty()) {
        wire::BsClaimRequest claim;
        claim.bsid = cfg_.id;
        claim.token = session.pending_token;
        out.send(cfg_.fa_id, claim.to_envelope(sid));
        session.pending_token.clear();
    }
}

void Bs::on_abort(const SessionId& sid) {
    auto sit = sessions_.find(sid);
    if (sit == sessions_.end()) return;
    if (sit->second.version != 0) {
        batches_[sit->second.version].superseded = true;
        sit->second.version = 0;
        build_batch(nullptr);
    }
    record(wire::MsgType::UserAbort, Reject::None, 0, 0);
}

void Bs::handle(const wire::Delivery& delivery, wire::Sender& out) {
    const wire::Envelope& env = delivery.env;
    switch (env.type) {
        case wire::MsgType::EsRegisterBsRequest:
            if (auto msg = wire::EsRegisterBsRequest::from(env))
                on_es_register(*msg, env.session, delivery.from, out);
            break;
        case wire::MsgType::OffloadInit:
            if (auto msg = wire::OffloadInit::from(env))
                on_init(*msg, env.session, delivery.from, out);
            break;
        case wire::MsgType::OffloadRequest:
            if (auto msg = wire::OffloadRequest::from(env))
                on_request(*msg, env.session, delivery.from, out);
            break;
        case wire::MsgType::UserAbort:
            if (wire::UserAbort::from(env)) on_abort(env.session);
            break;
        case wire::MsgType::EsResponse:
            if (auto msg = wire::EsResponse::from(env)) on_es_response(*msg, env.session, out);
            break;
        case wire::MsgType::ClaimReply:
            break;  // claim settled; nothing to update on the BS side
        default:
            break;
    }
}

Digest32 Bs::state_shape_digest() const {
    // Shape only: counts, versions and flags. No puzzle, token or session
    // bytes enter the digest.
    Bytes acc;
    put_u64_be(acc, slots_.size());
    put_u64_be(acc, version_);
    put_u64_be(acc, p_map_.size());
    put_u64_be(acc, seen_tokens_.size());
    put_u64_be(acc, forwarded_);
    for (const auto& [v, b] : batches_) {
        put_u64_be(acc, v);
        acc.push_back(b.used ? 1 : 0);
        acc.push_back(b.superseded ? 1 : 0);
        acc.push_back(b.has_owner ? 1 : 0);
    }
    return sha256(acc);
}

std::optional<Bs::SlotRef> Bs::lookup_puzzle(std::span<const std::uint8_t> puzzle_bytes) const {
    auto it = p_map_.find(sha256(puzzle_bytes));
    if (it == p_map_.end()) return std::nullopt;
    return SlotRef{it->second.es_id, it->second.slot_index, it->second.version};
}

}  // namespace sa2fe::party
