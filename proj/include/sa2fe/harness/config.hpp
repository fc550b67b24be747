#ifndef SA2FE_HARNESS_CONFIG_HPP
#define SA2FE_HARNESS_CONFIG_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sa2fe/ledger/ledger.hpp"
#include "sa2fe/puzzle/puzzle.hpp"

namespace sa2fe::harness {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ServiceSpec {
    std::string name;
    std::string sp;
    std::string workload = "echo";
    std::set<std::string> allowed_es;  // eligibility allow-list
};

struct EdgeSpec {
    std::string id;
    std::vector<std::string> services;
    std::size_t weight = 1;  // capability weight: puzzles per service
};

struct ScenarioConfig {
    puzzle::Scheme scheme = puzzle::Scheme::UniversalReenc;
    int security_level = 128;
    std::optional<std::uint64_t> seed;  // deterministic loopback runs when set
    ledger::PaymentAmounts amounts;
    std::vector<ServiceSpec> services;
    std::vector<EdgeSpec> edge_servers;
    std::size_t sessions = 1;
    std::string request_service;  // defaults to the first service
    Bytes request_data{0xde, 0xad, 0xbe, 0xef};
    bool parallel_kernels = false;
    bool auto_claim = true;  // BS/ES claim rewards as sessions complete
    std::string ledger_log_path;
    std::map<std::string, std::string> endpoints;  // party id -> host:port (TCP mode)

    std::vector<std::string> sp_ids() const;
    void validate() const;  // throws ConfigError

    static ScenarioConfig from_json_text(const std::string& text);
    static ScenarioConfig from_file(const std::string& path);
    std::string to_json_text() const;

    /// The running example topology: two services from two SPs; e1 offers
    /// both, e2 only the second, e3 only the first.
    static ScenarioConfig fig2(puzzle::Scheme scheme, std::optional<std::uint64_t> seed);
};

}  // namespace sa2fe::harness

#endif  // SA2FE_HARNESS_CONFIG_HPP
