#include "sa2fe/harness/scenario.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace sa2fe::harness {

namespace {

struct PostSender final : wire::Sender {
    PostSender(wire::LoopbackRouter& router, std::string self)
        : router_(router), self_(std::move(self)) {}
    void send(const std::string& dst, const wire::Envelope& env) override {
        router_.post(self_, dst, env);
    }
    wire::LoopbackRouter& router_;
    std::string self_;
};

}  // namespace

void RunReport::finalize_histogram() {
    if (session_micros.empty()) return;
    histogram_bounds_us = {100, 300, 1000, 3000, 10000, 30000, 100000, 300000};
    histogram_counts.assign(histogram_bounds_us.size() + 1, 0);
    for (double us : session_micros) {
        std::size_t b = 0;
        while (b < histogram_bounds_us.size() && us > histogram_bounds_us[b]) ++b;
        histogram_counts[b] += 1;
    }
}

Scenario::Scenario(ScenarioConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    if (cfg_.seed) {
        master_rng_ = std::make_unique<DeterministicRandom>(*cfg_.seed);
    } else {
        system_rng_ = std::make_unique<SystemRandom>();
    }
    harness_rng_ = std::make_unique<DeterministicRandom>(cfg_.seed ? *cfg_.seed ^ 0x9e3779b9 : 0);

    RandomSource& fa_rng = rng_for("fa");
    voucher_ = rng_for("voucher").bytes(16);

    party::Fa::Config fa_cfg;
    fa_cfg.security_level = cfg_.security_level;
    fa_cfg.scheme = cfg_.scheme;
    fa_cfg.amounts = cfg_.amounts;
    fa_cfg.payment_vouchers = {voucher_};
    fa_cfg.ledger_log_path = cfg_.ledger_log_path;
    fa_ = std::make_unique<party::Fa>(fa_cfg, fa_rng);

    party::Bs::Config bs_cfg;
    bs_cfg.parallel_kernels = cfg_.parallel_kernels;
    bs_cfg.auto_claim = cfg_.auto_claim;
    bs_ = std::make_unique<party::Bs>(bs_cfg, fa_->puzzle_params(), fa_->platform_key(),
                                      rng_for("bs"));

    for (const std::string& sp_id : cfg_.sp_ids()) {
        party::Sp::Config sp_cfg;
        sp_cfg.id = sp_id;
        sp_cfg.security_level = cfg_.security_level;
        for (const ServiceSpec& svc : cfg_.services)
            if (svc.sp == sp_id)
                sp_cfg.services.push_back(
                    party::Sp::OwnedService{svc.name, svc.workload, svc.allowed_es});
        sps_[sp_id] = std::make_unique<party::Sp>(sp_cfg, rng_for("sp:" + sp_id));
    }

    for (const EdgeSpec& e : cfg_.edge_servers) {
        party::Es::Config es_cfg;
        es_cfg.id = e.id;
        es_cfg.capability_weight = e.weight;
        ess_[e.id] =
            std::make_unique<party::Es>(es_cfg, fa_->puzzle_params(), rng_for("es:" + e.id));
    }

    party::User::Config user_cfg;
    user_cfg.id = "u1";
    user_ = std::make_unique<party::User>(user_cfg, fa_->puzzle_params(), fa_->platform_key(),
                                          rng_for("user"));
    party::User::Config token_cfg;
    token_cfg.id = "u-token";
    token_cfg.stop_after_token = true;
    token_user_ = std::make_unique<party::User>(token_cfg, fa_->puzzle_params(),
                                                fa_->platform_key(), rng_for("token-user"));

    router_.attach(*fa_);
    router_.attach(*bs_);
    router_.attach(*user_);
    router_.attach(*token_user_);
    for (auto& [_, sp] : sps_) router_.attach(*sp);
    for (auto& [_, es] : ess_) router_.attach(*es);
}

Scenario::~Scenario() = default;

RandomSource& Scenario::rng_for(const std::string& label) {
    if (!master_rng_) return *system_rng_;
    party_rngs_.push_back(std::make_unique<DeterministicRandom>(master_rng_->derive(label)));
    return *party_rngs_.back();
}

party::Es* Scenario::es(const std::string& id) {
    auto it = ess_.find(id);
    return it == ess_.end() ? nullptr : it->second.get();
}

party::Sp* Scenario::sp(const std::string& id) {
    auto it = sps_.find(id);
    return it == sps_.end() ? nullptr : it->second.get();
}

void Scenario::setup() {
    for (auto& [sp_id, sp] : sps_) {
        PostSender sender(router_, sp_id);
        sp->register_with_fa(sender);
    }
    router_.run();

    for (const EdgeSpec& e : cfg_.edge_servers) {
        PostSender sender(router_, e.id);
        for (const std::string& sname : e.services) {
            for (const ServiceSpec& svc : cfg_.services)
                if (svc.name == sname) ess_[e.id]->register_with_sp(sender, svc.sp, sname);
        }
    }
    router_.run();

    for (const EdgeSpec& e : cfg_.edge_servers) {
        PostSender sender(router_, e.id);
        ess_[e.id]->register_with_bs(sender);
    }
    router_.run();

    // Out-of-band key distribution from Algorithm 1: users hold every
    // service public key before requesting tokens.
    for (const ServiceSpec& svc : cfg_.services) {
        auto rec = fa_->service(svc.name);
        if (!rec) throw std::runtime_error("setup: service " + svc.name + " not registered");
        user_->learn_service_key(svc.name, rec->pk_s);
        token_user_->learn_service_key(svc.name, rec->pk_s);
    }
}

party::User::SessionReport Scenario::run_session(const std::string& sname,
                                                 std::span<const std::uint8_t> data) {
    PostSender sender(router_, user_->id());
    wire::SessionId sid = user_->start_session(sender, sname, data, voucher_);
    router_.run();
    const party::User::SessionReport* rep = user_->report(sid);
    if (!rep) throw std::runtime_error("run_session: report missing");
    return *rep;
}

blindsig::Token Scenario::acquire_token(const std::string& sname) {
    PostSender sender(router_, token_user_->id());
    wire::SessionId sid = token_user_->start_session(sender, sname, {}, voucher_);
    router_.run();
    const party::User::SessionReport* rep = token_user_->report(sid);
    if (!rep || !rep->token) throw std::runtime_error("acquire_token failed");
    return *rep->token;
}

RunReport Scenario::run_all() {
    RunReport report;
    report.deterministic = cfg_.seed.has_value();
    std::string sname = cfg_.request_service.empty() ? cfg_.services.front().name
                                                     : cfg_.request_service;
    for (std::size_t i = 0; i < cfg_.sessions; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        party::User::SessionReport rep = run_session(sname, cfg_.request_data);
        auto t1 = std::chrono::steady_clock::now();
        ++report.sessions;
        switch (rep.outcome) {
            case party::SessionOutcome::Success: ++report.succeeded; break;
            case party::SessionOutcome::Aborted: ++report.aborted; break;
            case party::SessionOutcome::TokenDenied: ++report.token_denied; break;
            default:
                ++report.rejected;
                report.reject_reasons[wire::reject_name(rep.reject)] += 1;
                break;
        }
        if (!report.deterministic)
            report.session_micros.push_back(
                std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    for (auto& [id, es] : ess_) report.served_by_es[id] = es->served_count();
    report.ledger_total_paid = fa_->claim_ledger().total_paid();
    report.ledger_records = fa_->claim_ledger().record_count();
    report.trace_digest_hex = to_hex(router_.trace_digest());
    report.finalize_histogram();
    return report;
}

}  // namespace sa2fe::harness
