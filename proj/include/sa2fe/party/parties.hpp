#ifndef SA2FE_PARTY_PARTIES_HPP
#define SA2FE_PARTY_PARTIES_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sa2fe/blindsig/blind.hpp"
#include "sa2fe/ledger/ledger.hpp"
#include "sa2fe/puzzle/batch.hpp"
#include "sa2fe/puzzle/puzzle.hpp"
#include "sa2fe/rng.hpp"
#include "sa2fe/symenc/aead.hpp"
#include "sa2fe/wire/messages.hpp"
#include "sa2fe/wire/transport.hpp"

namespace sa2fe::party {

using wire::Reject;
using wire::SessionId;

/// Per-service credentials; which fields are populated depends on the holder
/// (the FA additionally custodies sk_s, users additionally receive the UR
/// trapdoor share).
struct ServiceRecord {
    std::string spid;
    std::string sname;
    std::string workload;
    Bytes k_s;
    blindsig::PublicKey pk_s;
    Bytes sk_s_d;
    Bytes ur_x;
};

SessionId fresh_session_id(RandomSource& rng);

/// Built-in service programs: "echo", "sum-bytes", "sleep(ms)".
Bytes run_workload(const std::string& workload, std::span<const std::uint8_t> data);
bool workload_known(const std::string& workload);

// ---- financial authority -----------------------------------------------------

class Fa final : public wire::Party {
public:
    struct Config {
        std::string id = "fa";
        int security_level = 128;
        puzzle::Scheme scheme = puzzle::Scheme::UniversalReenc;
        ledger::PaymentAmounts amounts;
        std::set<Bytes> payment_vouchers;  // allow-list; empty accepts nothing
        std::string ledger_log_path;       // empty: in-memory only
    };

    Fa(Config cfg, RandomSource& rng);

    const std::string& id() const override { return cfg_.id; }
    void handle(const wire::Delivery& delivery, wire::Sender& out) override;

    const blindsig::PublicKey& platform_key() const { return platform_.pub(); }
    const puzzle::PuzzleParams& puzzle_params() const { return params_; }
    const puzzle::PuzzleTrapdoor& puzzle_trapdoor() const { return trapdoor_; }
    ledger::ClaimLedger& claim_ledger() { return *ledger_; }

    std::optional<ServiceRecord> service(const std::string& sname) const;
    std::uint64_t tokens_issued(const std::string& sname) const;

private:
    void on_sp_register(const wire::SpRegisterRequest& msg, const SessionId& sid,
                        const std::string& reply_to, wire::Sender& out);
    void on_token_request(const wire::TokenRequest& msg, const SessionId& sid,
                          const std::string& reply_to, wire::Sender& out);

    Config cfg_;
    RandomSource& rng_;
    blindsig::BlindKeyPair platform_;
    puzzle::PuzzleParams params_;
    puzzle::PuzzleTrapdoor trapdoor_;
    std::map<std::string, ServiceRecord> services_;  // includes sk_s custody
    std::map<std::string, std::uint64_t> issued_;    // metadata only; no m1/m2
    std::unique_ptr<ledger::ClaimLedger> ledger_;
};

// ---- service provider ----------------------------------------------------------

class Sp final : public wire::Party {
public:
    struct OwnedService {
        std::string sname;
        std::string workload;
        std::set<std::string> allowed_es;  // eligibility allow-list
    };

    struct Config {
        std::string id;
        std::string fa_id = "fa";
        int security_level = 128;
        std::vector<OwnedService> services;
    };

    Sp(Config cfg, RandomSource& rng);

    const std::string& id() const override { return cfg_.id; }
    void handle(const wire::Delivery& delivery, wire::Sender& out) override;

    /// Algorithm-2 step 1: push k_s and the service keypair to the FA.
    void register_with_fa(wire::Sender& out);
    bool registered() const { return registered_; }

private:
    Config cfg_;
    RandomSource& rng_;
    struct Owned {
        OwnedService meta;
        Bytes k_s;
        blindsig::BlindKeyPair keypair;
    };
    std::map<std::string, Owned> owned_;
    bool registered_ = false;
};

// ---- base station ---------------------------------------------------------------

/// Broker state machine. Knows puzzles and opaque tokens, never service
/// types. Decision outcomes and state shape are exposed for the harnesses.
class Bs final : public wire::Party {
public:
    struct Config {
        std::string id = "bs";
        std::string fa_id = "fa";
        bool auto_claim = true;
        bool parallel_kernels = false;  // OpenMP batch kernels
    };

    struct Decision {
        wire::MsgType event;
        Reject outcome;
        std::size_t list_size;
        std::uint64_t version;
    };

    Bs(Config cfg, puzzle::PuzzleParams params, blindsig::PublicKey platform_key,
       RandomSource& rng);

    const std::string& id() const override { return cfg_.id; }
    void handle(const wire::Delivery& delivery, wire::Sender& out) override;

    std::uint64_t latest_version() const { return version_; }
    const std::vector<Decision>& decisions() const { return decisions_; }
    Digest32 state_shape_digest() const;
    std::size_t forwarded_count() const { return forwarded_; }

    /// Harness introspection: owning ES and registration slot of a puzzle
    /// previously issued in a list, identified by its serialized bytes.
    struct SlotRef {
        std::string es_id;
        std::size_t slot;
        std::uint64_t version;
    };
    std::optional<SlotRef> lookup_puzzle(std::span<const std::uint8_t> puzzle_bytes) const;

private:
    struct Slot {
        std::string es_id;
        std::size_t slot_index;  // per-ES registration slot (capability weight)
        puzzle::Puzzle current;
    };
    struct MapEntry {
        std::string es_id;
        std::size_t slot_index;  // per-ES registration slot
        std::uint64_t version;
        SessionId owner{};       // session the batch was issued to; zeroes if none
        bool has_owner = false;
    };
    struct Batch {
        SessionId owner{};
        bool has_owner = false;
        bool used = false;
        bool superseded = false;
    };
    struct Session {
        Bytes token;            // bound at init
        Digest32 token_hash{};
        std::uint64_t version = 0;  // current batch; 0 = none
        std::string user_addr;      // reply address for the pending request
        bool awaiting_response = false;
        Bytes pending_token;        // token forwarded to the ES
    };

    void on_init(const wire::OffloadInit& msg, const SessionId& sid, const std::string& from,
                 wire::Sender& out);
    void on_request(const wire::OffloadRequest& msg, const SessionId& sid,
                    const std::string& from, wire::Sender& out);
    void on_es_register(const wire::EsRegisterBsRequest& msg, const SessionId& sid,
                        const std::string& from, wire::Sender& out);
    void on_es_response(const wire::EsResponse& msg, const SessionId& sid, wire::Sender& out);
    void on_abort(const SessionId& sid);

    /// Rerandomize every latest puzzle into a new version; returns the new
    /// version number. Owner is the session the batch is issued to, if any.
    std::uint64_t build_batch(const SessionId* owner);

    void record(wire::MsgType ev, Reject outcome, std::size_t list_size, std::uint64_t version);

    Config cfg_;
    puzzle::PuzzleParams params_;
    blindsig::PublicKey platform_key_;
    RandomSource& rng_;
    std::vector<Slot> slots_;
    std::map<Digest32, MapEntry> p_map_;  // keyed by hash of serialized puzzle
    std::map<std::uint64_t, Batch> batches_;
    std::map<SessionId, Session> sessions_;
    ledger::SpendSet seen_tokens_;
    std::uint64_t version_ = 0;
    std::vector<Decision> decisions_;
    std::size_t forwarded_ = 0;
};

// ---- edge server -----------------------------------------------------------------

class Es final : public wire::Party {
public:
    struct Config {
        std::string id;
        std::string fa_id = "fa";
        std::string bs_id = "bs";
        std::size_t capability_weight = 1;  // puzzles registered per service
        bool auto_claim = true;
    };

    Es(Config cfg, puzzle::PuzzleParams params, RandomSource& rng);

    const std::string& id() const override { return cfg_.id; }
    void handle(const wire::Delivery& delivery, wire::Sender& out) override;

    void register_with_sp(wire::Sender& out, const std::string& sp_id, const std::string& sname,
                          std::span<const std::uint8_t> reg_info = {});
    /// Algorithm-2 ES-to-BS step: one fresh puzzle over h(k_s) per credential
    /// slot (capability weight many per service).
    void register_with_bs(wire::Sender& out);

    std::size_t credential_count() const { return credentials_.size(); }
    std::optional<ServiceRecord> credential(const std::string& sname) const;
    std::uint64_t served_count() const { return served_; }
    std::uint64_t claim_paid_total() const { return claim_paid_; }
    const std::vector<std::pair<std::string, blindsig::Token>>& held_tokens() const {
        return held_tokens_;
    }

private:
    Config cfg_;
    puzzle::PuzzleParams params_;
    RandomSource& rng_;
    std::vector<ServiceRecord> credentials_;
    std::vector<std::pair<std::string, blindsig::Token>> held_tokens_;
    std::uint64_t served_ = 0;
    std::uint64_t claim_paid_ = 0;
};

// ---- user --------------------------------------------------------------------------

enum class SessionOutcome : std::uint8_t {
    Pending = 0,
    Success,
    Aborted,       // no eligible provider in the list
    TokenDenied,   // FA refused issuance
    Rejected,      // BS or ES rejected the offload
};

class User final : public wire::Party {
public:
    struct Config {
        std::string id;
        std::string fa_id = "fa";
        std::string bs_id = "bs";
        bool stop_after_token = false;  // acquire a token, skip offloading
    };

    struct SessionReport {
        SessionId sid{};
        std::string sname;
        SessionOutcome outcome = SessionOutcome::Pending;
        Reject reject = Reject::None;
        std::size_t list_size = 0;
        std::size_t candidates = 0;
        Bytes resp_data;
        std::optional<blindsig::Token> token;
        Bytes chosen_puzzle;  // serialized z_u
    };

    User(Config cfg, puzzle::PuzzleParams params, blindsig::PublicKey platform_key,
         RandomSource& rng);

    const std::string& id() const override { return cfg_.id; }
    void handle(const wire::Delivery& delivery, wire::Sender& out) override;

    /// Algorithm-1 out-of-band step: service public keys are known to the
    /// user before any token request.
    void learn_service_key(const std::string& sname, blindsig::PublicKey pk_s);

    SessionId start_session(wire::Sender& out, const std::string& sname,
                            std::span<const std::uint8_t> data,
                            std::span<const std::uint8_t> payment);

    const SessionReport* report(const SessionId& sid) const;
    std::vector<const SessionReport*> reports() const;

private:
    struct Live {
        SessionReport rep;
        blindsig::TokenSecret secret;
        Bytes data;
        ServiceRecord creds;
    };

    void on_token_reply(const wire::TokenReply& msg, Live& live, wire::Sender& out);
    void on_puzzle_list(const wire::PuzzleList& msg, Live& live, wire::Sender& out);
    void on_offload_response(const wire::OffloadResponse& msg, Live& live);

    Config cfg_;
    puzzle::PuzzleParams params_;
    blindsig::PublicKey platform_key_;
    RandomSource& rng_;
    std::map<std::string, blindsig::PublicKey> known_service_keys_;
    std::map<SessionId, Live> sessions_;
};

}  // namespace sa2fe::party

#endif  // SA2FE_PARTY_PARTIES_HPP
