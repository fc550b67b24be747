#include "sa2fe/ledger/ledger.hpp"

#include <fstream>

namespace sa2fe::ledger {

SpendSet::Mark SpendSet::mark(const Digest32& token_hash) {
    std::lock_guard<std::mutex> lk(mu_);
    return seen_.insert(token_hash).second ? Mark::Ok : Mark::DoubleSpend;
}

bool SpendSet::seen(const Digest32& token_hash) const {
    std::lock_guard<std::mutex> lk(mu_);
    return seen_.count(token_hash) != 0;
}

std::size_t SpendSet::size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return seen_.size();
}

ClaimLedger::ClaimLedger(blindsig::PublicKey platform_key, ServiceKeyLookup service_keys,
                         PaymentAmounts amounts, std::string log_path)
    : platform_key_(std::move(platform_key)),
      service_keys_(std::move(service_keys)),
      amounts_(amounts),
      log_path_(std::move(log_path)) {}

Bytes ClaimLedger::encode_event(const Event& ev) {
    Bytes out;
    out.push_back(ev.type);
    out.insert(out.end(), ev.token_hash.begin(), ev.token_hash.end());
    out.push_back(static_cast<std::uint8_t>(ev.role));
    put_u64_be(out, ev.amount);
    put_u64_be(out, ev.seq);
    put_u32_be(out, static_cast<std::uint32_t>(ev.s_type.size()));
    Bytes st = str_bytes(ev.s_type);
    out.insert(out.end(), st.begin(), st.end());
    return out;
}

std::optional<ClaimLedger::Event> ClaimLedger::decode_event(std::span<const std::uint8_t> line) {
    if (line.size() < 1 + 32 + 1 + 8 + 8 + 4) return std::nullopt;
    Event ev;
    ev.type = line[0];
    std::copy(line.begin() + 1, line.begin() + 33, ev.token_hash.begin());
    ev.role = static_cast<Role>(line[33]);
    ev.amount = read_u64_be(line.subspan(34));
    ev.seq = read_u64_be(line.subspan(42));
    std::size_t slen = read_u32_be(line.subspan(50));
    if (line.size() != 54 + slen) return std::nullopt;
    ev.s_type.assign(line.begin() + 54, line.end());
    return ev;
}

void ClaimLedger::append_event(const Event& ev) {
    if (log_path_.empty()) return;
    std::ofstream f(log_path_, std::ios::app);
    f << to_hex(encode_event(ev)) << "\n";
}

void ClaimLedger::apply_event(const Event& ev) {
    Record& rec = records_.try_emplace(ev.token_hash, Record{}).first->second;
    rec.token_hash = ev.token_hash;
    if (rec.f_bs == ClaimStatus::Fresh) rec.f_bs = ClaimStatus::Unclaimed;
    if (rec.f_es == ClaimStatus::Fresh) rec.f_es = ClaimStatus::Unclaimed;
    switch (ev.type) {
        case 1:
            rec.f_bs = ClaimStatus::Claimed;
            rec.paid_bs += ev.amount;
            break;
        case 2:
            rec.f_es = ClaimStatus::Claimed;
            rec.paid_es += ev.amount;
            rec.s_type = ev.s_type;
            break;
        case 3:
            rec.paid_sp += ev.amount;
            break;
        default:
            break;
    }
    seq_ = std::max(seq_, ev.seq);
}

ClaimOutcome ClaimLedger::process_bs_claim(const blindsig::Token& token) {
    ClaimOutcome out;
    if (!blindsig::blind_verify(platform_key_, token.m1, token.sig1)) {
        out.fail = ClaimFail::InvalidSignature;
        return out;
    }
    std::lock_guard<std::mutex> lk(mu_);
    Digest32 h = token.identity_hash();
    auto it = records_.find(h);
    if (it != records_.end() && it->second.f_bs == ClaimStatus::Claimed) {
        out.fail = ClaimFail::AlreadyClaimed;
        return out;
    }
    Event ev{1, h, Role::Bs, amounts_.bs, ++seq_, ""};
    apply_event(ev);
    append_event(ev);
    out.paid = true;
    out.amount = amounts_.bs;
    return out;
}

ClaimOutcome ClaimLedger::process_es_claim(const std::string& s_type,
                                           const blindsig::Token& token) {
    ClaimOutcome out;
    auto pk_s = service_keys_(s_type);
    if (!pk_s) {
        out.fail = ClaimFail::WrongServiceType;
        return out;
    }
    if (!blindsig::blind_verify(*pk_s, token.m2, token.sig2)) {
        // "token valid for s_type" fails: covers both a misdirected claim and
        // a forged service half.
        out.fail = ClaimFail::WrongServiceType;
        return out;
    }
    std::lock_guard<std::mutex> lk(mu_);
    Digest32 h = token.identity_hash();
    auto it = records_.find(h);
    if (it != records_.end() && it->second.f_es == ClaimStatus::Claimed) {
        out.fail = ClaimFail::AlreadyClaimed;
        return out;
    }
    Event es_ev{2, h, Role::Es, amounts_.es, ++seq_, s_type};
    apply_event(es_ev);
    append_event(es_ev);
    Event sp_ev{3, h, Role::Sp, amounts_.sp, ++seq_, s_type};
    apply_event(sp_ev);
    append_event(sp_ev);
    out.paid = true;
    out.amount = amounts_.es + amounts_.sp;
    return out;
}

std::optional<ClaimLedger::Record> ClaimLedger::lookup(const Digest32& token_hash) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = records_.find(token_hash);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t ClaimLedger::total_paid() const {
    std::lock_guard<std::mutex> lk(mu_);
    std::uint64_t total = 0;
    for (const auto& [_, rec] : records_) total += rec.paid_bs + rec.paid_es + rec.paid_sp;
    return total;
}

std::size_t ClaimLedger::record_count() const {
    std::lock_guard<std::mutex> lk(mu_);
    return records_.size();
}

Bytes ClaimLedger::snapshot() const {
    std::lock_guard<std::mutex> lk(mu_);
    Bytes out;
    for (const auto& [hash, rec] : records_) {  // std::map: already sorted by hash
        out.insert(out.end(), hash.begin(), hash.end());
        out.push_back(static_cast<std::uint8_t>(rec.f_bs));
        out.push_back(static_cast<std::uint8_t>(rec.f_es));
        put_u64_be(out, rec.paid_bs);
        put_u64_be(out, rec.paid_es);
        put_u64_be(out, rec.paid_sp);
        put_u32_be(out, static_cast<std::uint32_t>(rec.s_type.size()));
        Bytes st = str_bytes(rec.s_type);
        out.insert(out.end(), st.begin(), st.end());
    }
    return out;
}

void ClaimLedger::write_snapshot(const std::string& path) const {
    std::ofstream f(path, std::ios::trunc);
    f << to_hex(snapshot()) << "\n";
}

void ClaimLedger::replay_log(const std::string& path) {
    std::ifstream f(path);
    std::string line;
    std::lock_guard<std::mutex> lk(mu_);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        Bytes raw = from_hex(line);
        auto ev = decode_event(raw);
        if (ev) apply_event(*ev);
    }
}

}  // namespace sa2fe::ledger
