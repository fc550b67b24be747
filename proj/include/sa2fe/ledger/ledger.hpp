#ifndef SA2FE_LEDGER_LEDGER_HPP
#define SA2FE_LEDGER_LEDGER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>

#include "sa2fe/blindsig/blind.hpp"
#include "sa2fe/bytes.hpp"

namespace sa2fe::ledger {

enum class Role : std::uint8_t { Bs = 1, Es = 2, Sp = 3 };

enum class ClaimStatus : std::uint8_t { Fresh = 0, Unclaimed = 1, Claimed = 2 };

enum class ClaimFail : std::uint8_t {
    None = 0,
    InvalidSignature,
    AlreadyClaimed,
    WrongServiceType,
};

struct ClaimOutcome {
    bool paid = false;
    std::uint64_t amount = 0;  // total appended this call (ES claims pay ES + SP)
    ClaimFail fail = ClaimFail::None;
};

struct PaymentAmounts {
    std::uint64_t bs = 1, es = 3, sp = 1;
};

/// Atomic token-seen set: the check-and-mark the BS runs before forwarding.
/// Exactly one concurrent mark of the same token wins.
class SpendSet {
public:
    enum class Mark { Ok, DoubleSpend };
    Mark mark(const Digest32& token_hash);
    bool seen(const Digest32& token_hash) const;
    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::set<Digest32> seen_;
};

/// FA-side authoritative claim records, keyed by token identity hash. The
/// record appears lazily at first claim (the FA only ever saw blinded values
/// at issuance). All mutations funnel through one mutex; an event log line is
/// appended per state change and a snapshot/replay pair makes the ledger
/// durable across restarts.
class ClaimLedger {
public:
    struct Record {
        Digest32 token_hash{};
        ClaimStatus f_bs = ClaimStatus::Fresh;
        ClaimStatus f_es = ClaimStatus::Fresh;
        std::string s_type;  // learned at the ES claim
        std::uint64_t paid_bs = 0, paid_es = 0, paid_sp = 0;
    };

    using ServiceKeyLookup =
        std::function<std::optional<blindsig::PublicKey>(const std::string& sname)>;

    ClaimLedger(blindsig::PublicKey platform_key, ServiceKeyLookup service_keys,
                PaymentAmounts amounts, std::string log_path = "");

    /// Algorithm-4 BS branch: verify the agnostic half, pay once.
    ClaimOutcome process_bs_claim(const blindsig::Token& token);
    /// Algorithm-4 ES branch: verify the service half for the claimed type,
    /// pay the ES and the SP once.
    ClaimOutcome process_es_claim(const std::string& s_type, const blindsig::Token& token);

    std::optional<Record> lookup(const Digest32& token_hash) const;
    std::uint64_t total_paid() const;
    std::size_t record_count() const;

    /// Serialized snapshot (sorted records). Writing and replaying restore
    /// byte-identical state.
    Bytes snapshot() const;
    void write_snapshot(const std::string& path) const;

    /// Replay an event log produced by a previous instance.
    void replay_log(const std::string& path);

private:
    struct Event {
        std::uint8_t type;  // 1 = bs paid, 2 = es paid, 3 = sp paid
        Digest32 token_hash;
        Role role;
        std::uint64_t amount;
        std::uint64_t seq;
        std::string s_type;
    };
    void append_event(const Event& ev);
    void apply_event(const Event& ev);
    static Bytes encode_event(const Event& ev);
    static std::optional<Event> decode_event(std::span<const std::uint8_t> line);

    mutable std::mutex mu_;
    blindsig::PublicKey platform_key_;
    ServiceKeyLookup service_keys_;
    PaymentAmounts amounts_;
    std::map<Digest32, Record> records_;
    std::uint64_t seq_ = 0;
    std::string log_path_;
};

}  // namespace sa2fe::ledger

#endif  // SA2FE_LEDGER_LEDGER_HPP
