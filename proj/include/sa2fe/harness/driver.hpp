#ifndef SA2FE_HARNESS_DRIVER_HPP
#define SA2FE_HARNESS_DRIVER_HPP

#include "sa2fe/harness/scenario.hpp"

namespace sa2fe::harness {

/// Message sink attached to the router; adversarial scripts read replies
/// from here instead of running a real user state machine.
class CaptureParty final : public wire::Party {
public:
    explicit CaptureParty(std::string id) : id_(std::move(id)) {}
    const std::string& id() const override { return id_; }
    void handle(const wire::Delivery& delivery, wire::Sender&) override {
        inbox.push_back(delivery.env);
    }
    template <typename M>
    std::optional<M> last() const {
        for (auto it = inbox.rbegin(); it != inbox.rend(); ++it)
            if (auto m = M::from(*it)) return m;
        return std::nullopt;
    }
    void clear() { inbox.clear(); }
    std::vector<wire::Envelope> inbox;

private:
    std::string id_;
};

/// Hand-rolled protocol steps for scripted (mostly adversarial) flows. The
/// driver is omniscient: it borrows service keys and the puzzle trapdoor from
/// the scenario's FA, which a test harness may and a real user may not.
class OffloadDriver {
public:
    OffloadDriver(Scenario& sc, CaptureParty& probe) : sc_(sc), probe_(probe) {
        sc_.router().attach(probe_);
    }

    std::optional<wire::PuzzleList> init(const wire::SessionId& sid,
                                         std::span<const std::uint8_t> token_bytes) {
        probe_.clear();
        wire::OffloadInit msg;
        msg.token.assign(token_bytes.begin(), token_bytes.end());
        sc_.router().post(probe_.id(), sc_.bs().id(), msg.to_envelope(sid));
        sc_.router().run();
        return probe_.last<wire::PuzzleList>();
    }

    std::optional<wire::OffloadResponse> request(const wire::SessionId& sid, const Bytes& z_u,
                                                 const Bytes& ct) {
        probe_.clear();
        wire::OffloadRequest msg;
        msg.z_u = z_u;
        msg.ct = ct;
        sc_.router().post(probe_.id(), sc_.bs().id(), msg.to_envelope(sid));
        sc_.router().run();
        return probe_.last<wire::OffloadResponse>();
    }

    std::optional<wire::ClaimReply> claim_bs(std::span<const std::uint8_t> token_bytes) {
        probe_.clear();
        wire::BsClaimRequest msg;
        msg.bsid = sc_.bs().id();
        msg.token.assign(token_bytes.begin(), token_bytes.end());
        sc_.router().post(probe_.id(), sc_.fa().id(), msg.to_envelope(fresh_sid()));
        sc_.router().run();
        return probe_.last<wire::ClaimReply>();
    }

    std::optional<wire::ClaimReply> claim_es(const std::string& esid, const std::string& sname,
                                             std::span<const std::uint8_t> token_bytes) {
        probe_.clear();
        wire::EsClaimRequest msg;
        msg.esid = esid;
        msg.sname = sname;
        msg.token.assign(token_bytes.begin(), token_bytes.end());
        sc_.router().post(probe_.id(), sc_.fa().id(), msg.to_envelope(fresh_sid()));
        sc_.router().run();
        return probe_.last<wire::ClaimReply>();
    }

    Bytes make_ct(const std::string& sname, std::span<const std::uint8_t> data) {
        auto rec = sc_.fa().service(sname);
        if (!rec) throw std::runtime_error("driver: unknown service " + sname);
        wire::FieldWriter plain;
        plain.str(sname);
        plain.bytes(data);
        return symenc::seal(rec->k_s, plain.take(), sc_.harness_rng()).encode();
    }

    /// Indices of puzzles in the list that match `sname`'s key digest.
    std::vector<std::size_t> matching(const std::string& sname,
                                      const std::vector<Bytes>& puzzles) {
        auto rec = sc_.fa().service(sname);
        if (!rec) throw std::runtime_error("driver: unknown service " + sname);
        const puzzle::PuzzleParams& params = sc_.fa().puzzle_params();
        puzzle::PuzzleSolution sol = puzzle::encode_solution(sha256(rec->k_s), params);
        const puzzle::PuzzleTrapdoor& trapdoor = sc_.fa().puzzle_trapdoor();
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < puzzles.size(); ++i) {
            try {
                puzzle::Puzzle p = puzzle::deserialize_puzzle(puzzles[i], params);
                if (puzzle::puzzle_match(params, trapdoor, sol, p)) out.push_back(i);
            } catch (const puzzle::PuzzleError&) {
            }
        }
        return out;
    }

    wire::SessionId fresh_sid() { return party::fresh_session_id(sc_.harness_rng()); }

private:
    Scenario& sc_;
    CaptureParty& probe_;
};

}  // namespace sa2fe::harness

#endif  // SA2FE_HARNESS_DRIVER_HPP
