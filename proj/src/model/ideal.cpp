#include "sa2fe/model/ideal.hpp"

#include <algorithm>

namespace sa2fe::model {

const char* reply_name(Reply r) {
    switch (r) {
        case Reply::Success: return "success";
        case Reply::Fail: return "fail";
        case Reply::InvalidToken: return "invalidToken";
        case Reply::InvalidPuzzle: return "invalidPuzzle";
        case Reply::UserAbortAck: return "userAbortAck";
        case Reply::SuccessClaimed: return "successClaimed";
    }
    return "unknown";
}

IdealModel::IdealModel(std::uint64_t seed) : rng_(seed) {}

TsEntry* IdealModel::find_service(const std::string& spid, const std::string& sname) {
    for (TsEntry& e : t_s_)
        if (e.spid == spid && e.sname == sname) return &e;
    return nullptr;
}

Reply IdealModel::register_sp(const std::string& spid, const std::string& sname,
                              const std::string& sdata) {
    if (TsEntry* existing = find_service(spid, sname)) {
        // Same tuple: the functionality returns the stored t_s. A different
        // sdata under the same name is a conflicting registration.
        return existing->sdata == sdata ? Reply::Success : Reply::Fail;
    }
    t_s_.push_back(TsEntry{spid, sname, sdata, {}, ""});
    return Reply::Success;
}

Reply IdealModel::register_es_with_sp(const std::string& spid, const std::string& sname,
                                      const std::string& esid, bool sp_allows) {
    TsEntry* svc = find_service(spid, sname);
    if (!svc) return Reply::Fail;
    if (std::find(svc->esids.begin(), svc->esids.end(), esid) != svc->esids.end())
        return Reply::Success;  // entry exists; t_s returned to the ES
    if (!sp_allows) return Reply::Fail;
    svc->esids.push_back(esid);
    return Reply::Success;
}

Reply IdealModel::register_es_with_bs(const std::string& spid, const std::string& sname,
                                      const std::string& esid, const std::string& bsid,
                                      std::size_t count, std::vector<std::uint64_t>* out_ids) {
    TsEntry* svc = find_service(spid, sname);
    if (!svc) return Reply::Fail;
    svc->bsid = bsid;
    // Replacement on re-registration mirrors the real broker.
    for (auto it = t_p_.begin(); it != t_p_.end();) {
        if (it->second.esid == esid && it->second.sname == sname && it->second.ver == 0)
            it = t_p_.erase(it);
        else
            ++it;
    }
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t id = next_id_++;
        t_p_[id] = TpEntry{id, spid, sname, 0, false, esid, bsid};
        if (out_ids) out_ids->push_back(id);
    }
    return Reply::Success;
}

Reply IdealModel::register_user(const std::string& spid, const std::string& sname, bool fa_allows,
                                std::uint64_t* out_token_id) {
    if (!fa_allows || !find_service(spid, sname)) return Reply::Fail;
    std::uint64_t id = next_id_++;
    t_t_[id] = TtEntry{id, spid, sname, "", TokenFlag::Fresh, "", TokenFlag::Fresh};
    if (out_token_id) *out_token_id = id;
    return Reply::Success;
}

IdealModel::OffloadList IdealModel::offload_init(const std::string& uid,
                                                 const std::string& bsid) {
    // Steps 1-2: collect the newest-version puzzles for this BS and
    // rerandomize each into a fresh entry at ver_newest + 1.
    std::vector<const TpEntry*> latest;
    for (const auto& [_, e] : t_p_)
        if (e.ver == newest_ver_ && e.bsid == bsid) latest.push_back(&e);
    std::uint64_t new_ver = newest_ver_ + 1;
    OffloadList out;
    out.ver = new_ver;
    for (const TpEntry* src : latest) {
        std::uint64_t id = next_id_++;
        t_p_[id] = TpEntry{id, src->spid, src->sname, new_ver, false, src->esid, src->bsid};
        out.puzzle_ids.push_back(id);
    }
    newest_ver_ = new_ver;
    // Step 3: random order, and the uid -> ver* binding is stored.
    for (std::size_t i = out.puzzle_ids.size(); i > 1; --i)
        std::swap(out.puzzle_ids[i - 1], out.puzzle_ids[rng_.below(i)]);
    user_ver_[uid] = new_ver;
    return out;
}

Reply IdealModel::offload_request(const std::string& uid, std::uint64_t token_id,
                                  std::uint64_t puzzle_id, std::string* out_esid) {
    // Step 5: a fresh token entry must exist.
    auto tt = t_t_.find(token_id);
    if (tt == t_t_.end() || tt->second.f_bs != TokenFlag::Fresh ||
        tt->second.f_es != TokenFlag::Fresh)
        return Reply::InvalidToken;
    // Step 6: the puzzle must be in this user's p_list'.
    auto uv = user_ver_.find(uid);
    auto tp = t_p_.find(puzzle_id);
    if (uv == user_ver_.end() || tp == t_p_.end() || tp->second.ver != uv->second)
        return Reply::InvalidPuzzle;
    // Step 7: and unused.
    if (tp->second.used) return Reply::InvalidPuzzle;
    const std::string esid = tp->second.esid;
    const std::string bsid = tp->second.bsid;
    for (auto& [_, e] : t_p_)
        if (e.ver == uv->second) e.used = true;
    // Step 8: forward, both flags move to unclaimed.
    tt->second.esid = esid;
    tt->second.bsid = bsid;
    tt->second.f_es = TokenFlag::Unclaimed;
    tt->second.f_bs = TokenFlag::Unclaimed;
    ++forwarded_;
    if (out_esid) *out_esid = esid;
    return Reply::Success;
}

Reply IdealModel::offload_abort(const std::string& uid) {
    (void)uid;
    return Reply::UserAbortAck;
}

Reply IdealModel::claim_bs(const std::string& bsid, std::uint64_t token_id) {
    auto tt = t_t_.find(token_id);
    if (tt == t_t_.end() || tt->second.bsid != bsid || tt->second.f_bs != TokenFlag::Unclaimed)
        return Reply::InvalidToken;
    tt->second.f_bs = TokenFlag::Claimed;
    return Reply::SuccessClaimed;
}

Reply IdealModel::claim_es(const std::string& esid, const std::string& spid,
                           const std::string& sname, std::uint64_t token_id) {
    auto tt = t_t_.find(token_id);
    if (tt == t_t_.end() || tt->second.spid != spid || tt->second.sname != sname ||
        tt->second.esid != esid || tt->second.f_es != TokenFlag::Unclaimed)
        return Reply::InvalidToken;
    tt->second.f_es = TokenFlag::Claimed;
    return Reply::SuccessClaimed;
}

std::size_t IdealModel::used_puzzle_count() const {
    std::size_t n = 0;
    for (const auto& [_, e] : t_p_)
        if (e.used) ++n;
    return n;
}

std::optional<TtEntry> IdealModel::token(std::uint64_t id) const {
    auto it = t_t_.find(id);
    if (it == t_t_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t IdealModel::nonexistent_id() { return next_id_++; }

}  // namespace sa2fe::model
