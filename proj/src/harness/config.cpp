#include "sa2fe/harness/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sa2fe::harness {

using nlohmann::json;

std::vector<std::string> ScenarioConfig::sp_ids() const {
    std::vector<std::string> out;
    for (const ServiceSpec& s : services)
        if (std::find(out.begin(), out.end(), s.sp) == out.end()) out.push_back(s.sp);
    return out;
}

void ScenarioConfig::validate() const {
    if (services.empty()) throw ConfigError("no services configured");
    if (security_level != 128 && security_level != 192)
        throw ConfigError("security_level must be 128 or 192");
    if (scheme == puzzle::Scheme::BilinearMap && security_level != 192 && security_level != 128)
        throw ConfigError("security_level must be 128 or 192");
    std::set<std::string> names;
    for (const ServiceSpec& s : services) {
        if (!names.insert(s.name).second) throw ConfigError("duplicate service " + s.name);
        if (s.sp.empty()) throw ConfigError("service " + s.name + " has no provider");
    }
    for (const EdgeSpec& e : edge_servers) {
        if (e.weight == 0) throw ConfigError("edge server " + e.id + " has zero weight");
        for (const std::string& s : e.services)
            if (!names.count(s))
                throw ConfigError("edge server " + e.id + " references unknown service " + s);
    }
    if (!request_service.empty() && !names.count(request_service))
        throw ConfigError("request_service references unknown service " + request_service);
}

namespace {

puzzle::Scheme scheme_from_string(const std::string& s) {
    if (s == "bilinear") return puzzle::Scheme::BilinearMap;
    if (s == "universal-reenc" || s == "ur") return puzzle::Scheme::UniversalReenc;
    throw ConfigError("unknown scheme: " + s);
}

std::string scheme_to_string(puzzle::Scheme s) {
    return s == puzzle::Scheme::BilinearMap ? "bilinear" : "universal-reenc";
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ScenarioConfig cfg;
    try {
        if (j.contains("scheme")) cfg.scheme = scheme_from_string(j["scheme"].get<std::string>());
        if (j.contains("security_level")) cfg.security_level = j["security_level"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("sessions")) cfg.sessions = j["sessions"].get<std::size_t>();
        if (j.contains("request_service"))
            cfg.request_service = j["request_service"].get<std::string>();
        if (j.contains("request_data_hex"))
            cfg.request_data = from_hex(j["request_data_hex"].get<std::string>());
        if (j.contains("parallel_kernels"))
            cfg.parallel_kernels = j["parallel_kernels"].get<bool>();
        if (j.contains("ledger_log")) cfg.ledger_log_path = j["ledger_log"].get<std::string>();
        if (j.contains("payments")) {
            const json& p = j["payments"];
            if (p.contains("bs")) cfg.amounts.bs = p["bs"].get<std::uint64_t>();
            if (p.contains("es")) cfg.amounts.es = p["es"].get<std::uint64_t>();
            if (p.contains("sp")) cfg.amounts.sp = p["sp"].get<std::uint64_t>();
        }
        for (const json& s : j.value("services", json::array())) {
            ServiceSpec spec;
            spec.name = s.at("name").get<std::string>();
            spec.sp = s.at("sp").get<std::string>();
            spec.workload = s.value("workload", "echo");
            for (const json& e : s.value("allow", json::array()))
                spec.allowed_es.insert(e.get<std::string>());
            cfg.services.push_back(std::move(spec));
        }
        for (const json& e : j.value("edge_servers", json::array())) {
            EdgeSpec spec;
            spec.id = e.at("id").get<std::string>();
            for (const json& s : e.at("services")) spec.services.push_back(s.get<std::string>());
            spec.weight = e.value("weight", std::size_t{1});
            cfg.edge_servers.push_back(std::move(spec));
        }
        for (auto& [party, addr] : j.value("endpoints", json::object()).items())
            cfg.endpoints[party] = addr.get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_json_text(buf.str());
}

std::string ScenarioConfig::to_json_text() const {
    json j;
    j["scheme"] = scheme_to_string(scheme);
    j["security_level"] = security_level;
    if (seed) j["seed"] = *seed;
    j["sessions"] = sessions;
    if (!request_service.empty()) j["request_service"] = request_service;
    j["request_data_hex"] = to_hex(request_data);
    j["parallel_kernels"] = parallel_kernels;
    j["payments"] = {{"bs", amounts.bs}, {"es", amounts.es}, {"sp", amounts.sp}};
    j["services"] = json::array();
    for (const ServiceSpec& s : services) {
        json js{{"name", s.name}, {"sp", s.sp}, {"workload", s.workload}};
        js["allow"] = json::array();
        for (const std::string& e : s.allowed_es) js["allow"].push_back(e);
        j["services"].push_back(js);
    }
    j["edge_servers"] = json::array();
    for (const EdgeSpec& e : edge_servers) {
        json je{{"id", e.id}, {"services", e.services}, {"weight", e.weight}};
        j["edge_servers"].push_back(je);
    }
    if (!endpoints.empty()) {
        j["endpoints"] = json::object();
        for (const auto& [party, addr] : endpoints) j["endpoints"][party] = addr;
    }
    return j.dump(2);
}

ScenarioConfig ScenarioConfig::fig2(puzzle::Scheme scheme, std::optional<std::uint64_t> seed) {
    ScenarioConfig cfg;
    cfg.scheme = scheme;
    cfg.seed = seed;
    cfg.services = {
        ServiceSpec{"s1", "sp1", "echo", {"e1", "e3"}},
        ServiceSpec{"s2", "sp2", "echo", {"e1", "e2"}},
    };
    cfg.edge_servers = {
        EdgeSpec{"e1", {"s1", "s2"}, 1},
        EdgeSpec{"e2", {"s2"}, 1},
        EdgeSpec{"e3", {"s1"}, 1},
    };
    cfg.request_service = "s1";
    return cfg;
}

}  // namespace sa2fe::harness
