#include "sa2fe/wire/transport.hpp"

#include <stdexcept>

namespace sa2fe::wire {

class LoopbackRouter::RouterSender final : public Sender {
public:
    RouterSender(LoopbackRouter& router, std::string self)
        : router_(router), self_(std::move(self)) {}
    void send(const std::string& dst, const Envelope& env) override {
        router_.post(self_, dst, env);
    }

private:
    LoopbackRouter& router_;
    std::string self_;
};

void LoopbackRouter::attach(Party& party) { parties_[party.id()] = &party; }

void LoopbackRouter::add_fault(const FaultRule& rule) { faults_.push_back(rule); }

bool LoopbackRouter::apply_faults(const Delivery& d) {
    for (std::size_t i = 0; i < faults_.size(); ++i) {
        const FaultRule& f = faults_[i];
        if (!f.src.empty() && f.src != d.from) continue;
        if (!f.dst.empty() && f.dst != d.to) continue;
        if (f.msg_type != 0 && f.msg_type != static_cast<std::uint8_t>(d.env.type)) continue;
        std::uint32_t hit = ++fault_hits_[i];
        if (f.occurrence != 0 && hit != f.occurrence) continue;
        switch (f.action) {
            case FaultAction::Drop:
                return false;
            case FaultAction::Duplicate:
                queue_.push_back(d);
                return true;
            case FaultAction::Delay: {
                std::size_t pos = std::min<std::size_t>(queue_.size(), f.delay_slots);
                queue_.insert(queue_.begin() + static_cast<std::ptrdiff_t>(pos), d);
                return false;  // already placed
            }
        }
    }
    return true;
}

void LoopbackRouter::post(const std::string& src, const std::string& dst, const Envelope& env) {
    Delivery d{src, dst, env};
    if (apply_faults(d)) queue_.push_back(std::move(d));
}

std::size_t LoopbackRouter::run(std::size_t max_steps) {
    std::size_t steps = 0;
    while (!queue_.empty()) {
        if (steps >= max_steps) throw std::runtime_error("loopback: step budget exhausted");
        Delivery d = std::move(queue_.front());
        queue_.pop_front();
        trace_.push_back(TraceEntry{d.from, d.to, encode_frame(d.env)});
        auto it = parties_.find(d.to);
        if (it == parties_.end()) continue;  // unknown destination: message lost
        RouterSender sender(*this, d.to);
        it->second->handle(d, sender);
        ++steps;
    }
    return steps;
}

Digest32 LoopbackRouter::trace_digest() const {
    Bytes acc;
    for (const TraceEntry& t : trace_) {
        Bytes line = str_bytes(t.src);
        line.push_back('>');
        Bytes dst = str_bytes(t.dst);
        line.insert(line.end(), dst.begin(), dst.end());
        line.insert(line.end(), t.frame.begin(), t.frame.end());
        Digest32 d = sha256(line);
        acc.insert(acc.end(), d.begin(), d.end());
    }
    return sha256(acc);
}

}  // namespace sa2fe::wire
