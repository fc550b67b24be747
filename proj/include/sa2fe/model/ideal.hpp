#ifndef SA2FE_MODEL_IDEAL_HPP
#define SA2FE_MODEL_IDEAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sa2fe/rng.hpp"

namespace sa2fe::model {

/// Executable reference of the three ideal functionalities and their tables.
/// Tokens and puzzles are opaque integer identifiers here; the conformance
/// harness maintains the real-to-ideal translation map.

enum class Reply : std::uint8_t {
    Success = 0,
    Fail,
    InvalidToken,
    InvalidPuzzle,
    UserAbortAck,
    SuccessClaimed,
};

const char* reply_name(Reply r);

enum class TokenFlag : std::uint8_t { Fresh = 0, Unclaimed = 1, Claimed = 2 };

struct TsEntry {
    std::string spid, sname, sdata;
    std::vector<std::string> esids;
    std::string bsid;
};

struct TpEntry {
    std::uint64_t puzzle_id;
    std::string spid, sname;
    std::uint64_t ver;
    bool used;
    std::string esid, bsid;
};

struct TtEntry {
    std::uint64_t token_id;
    std::string spid, sname;
    std::string esid;
    TokenFlag f_es = TokenFlag::Fresh;
    std::string bsid;
    TokenFlag f_bs = TokenFlag::Fresh;
};

class IdealModel {
public:
    explicit IdealModel(std::uint64_t seed);

    // --- registration functionality ---
    Reply register_sp(const std::string& spid, const std::string& sname,
                      const std::string& sdata);
    Reply register_es_with_sp(const std::string& spid, const std::string& sname,
                              const std::string& esid, bool sp_allows);
    /// Creates `count` version-0 puzzle entries for the (es, service) pair.
    /// Returns the entry ids through `out_ids` on success.
    Reply register_es_with_bs(const std::string& spid, const std::string& sname,
                              const std::string& esid, const std::string& bsid, std::size_t count,
                              std::vector<std::uint64_t>* out_ids);
    Reply register_user(const std::string& spid, const std::string& sname, bool fa_allows,
                        std::uint64_t* out_token_id);

    // --- offload functionality ---
    struct OffloadList {
        std::uint64_t ver = 0;
        std::vector<std::uint64_t> puzzle_ids;  // permuted p_list'
    };
    /// Steps 1-3: rerandomize into ver+1 entries and emit the permuted list.
    /// The list always builds (token validity is checked at the request), and
    /// the uid -> ver* binding is stored.
    OffloadList offload_init(const std::string& uid, const std::string& bsid);
    /// Steps 4-8: token freshness, puzzle validity, state transitions.
    Reply offload_request(const std::string& uid, std::uint64_t token_id,
                          std::uint64_t puzzle_id, std::string* out_esid = nullptr);
    Reply offload_abort(const std::string& uid);

    // --- claim functionality ---
    Reply claim_bs(const std::string& bsid, std::uint64_t token_id);
    Reply claim_es(const std::string& esid, const std::string& spid, const std::string& sname,
                   std::uint64_t token_id);

    // --- inspection ---
    std::size_t used_puzzle_count() const;
    std::size_t forwarded_count() const { return forwarded_; }
    const std::map<std::uint64_t, TpEntry>& t_p() const { return t_p_; }
    const std::map<std::uint64_t, TtEntry>& t_t() const { return t_t_; }
    std::optional<TtEntry> token(std::uint64_t id) const;
    /// An identifier guaranteed absent from every table; the harness maps
    /// unknown real-world artifacts to these.
    std::uint64_t nonexistent_id();

private:
    std::uint64_t next_id_ = 1;
    std::uint64_t newest_ver_ = 0;
    DeterministicRandom rng_;
    std::vector<TsEntry> t_s_;
    std::map<std::uint64_t, TpEntry> t_p_;
    std::map<std::uint64_t, TtEntry> t_t_;
    std::map<std::string, std::uint64_t> user_ver_;  // uid -> ver*
    std::size_t forwarded_ = 0;

    TsEntry* find_service(const std::string& spid, const std::string& sname);
};

}  // namespace sa2fe::model

#endif  // SA2FE_MODEL_IDEAL_HPP
