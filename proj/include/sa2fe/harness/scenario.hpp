#ifndef SA2FE_HARNESS_SCENARIO_HPP
#define SA2FE_HARNESS_SCENARIO_HPP

#include <memory>

#include "sa2fe/harness/config.hpp"
#include "sa2fe/party/parties.hpp"
#include "sa2fe/wire/transport.hpp"

namespace sa2fe::harness {

struct RunReport {
    std::size_t sessions = 0;
    std::size_t succeeded = 0;
    std::size_t aborted = 0;
    std::size_t rejected = 0;
    std::size_t token_denied = 0;
    std::map<std::string, std::size_t> reject_reasons;
    std::map<std::string, std::uint64_t> served_by_es;  // per-ES selection counts
    std::uint64_t ledger_total_paid = 0;
    std::size_t ledger_records = 0;
    bool deterministic = false;
    std::string trace_digest_hex;
    // Wall-clock micros per session; left empty in deterministic mode so two
    // seeded runs emit identical reports.
    std::vector<double> session_micros;
    std::vector<double> histogram_bounds_us;   // derived buckets
    std::vector<std::size_t> histogram_counts;

    void finalize_histogram();
};

/// Builds the five parties over the deterministic loopback and runs the
/// registration phase; sessions are then driven one at a time.
class Scenario {
public:
    explicit Scenario(ScenarioConfig cfg);
    ~Scenario();

    /// Registration phase: SPs to the FA, ESs to SPs and the BS, service
    /// keys to the user out of band.
    void setup();

    /// One offload session; runs the router to quiescence and returns the
    /// user-side report.
    party::User::SessionReport run_session(const std::string& sname,
                                           std::span<const std::uint8_t> data);

    /// `sessions` sessions of the configured request service.
    RunReport run_all();

    const ScenarioConfig& config() const { return cfg_; }
    wire::LoopbackRouter& router() { return router_; }
    party::Fa& fa() { return *fa_; }
    party::Bs& bs() { return *bs_; }
    party::User& user() { return *user_; }
    party::Es* es(const std::string& id);
    party::Sp* sp(const std::string& id);
    const Bytes& voucher() const { return voucher_; }
    DeterministicRandom& harness_rng() { return *harness_rng_; }

    /// Token acquisition without an offload (for attack scripts).
    blindsig::Token acquire_token(const std::string& sname);

private:
    ScenarioConfig cfg_;
    std::unique_ptr<DeterministicRandom> master_rng_;
    std::unique_ptr<SystemRandom> system_rng_;
    std::vector<std::unique_ptr<DeterministicRandom>> party_rngs_;
    std::unique_ptr<DeterministicRandom> harness_rng_;
    RandomSource& rng_for(const std::string& label);

    wire::LoopbackRouter router_;
    std::unique_ptr<party::Fa> fa_;
    std::unique_ptr<party::Bs> bs_;
    std::unique_ptr<party::User> user_;
    std::unique_ptr<party::User> token_user_;  // stop_after_token helper
    std::map<std::string, std::unique_ptr<party::Sp>> sps_;
    std::map<std::string, std::unique_ptr<party::Es>> ess_;
    Bytes voucher_;
};

}  // namespace sa2fe::harness

#endif  // SA2FE_HARNESS_SCENARIO_HPP
