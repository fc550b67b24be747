#ifndef SA2FE_WIRE_TRANSPORT_HPP
#define SA2FE_WIRE_TRANSPORT_HPP

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sa2fe/wire/envelope.hpp"

namespace sa2fe::wire {

struct Delivery {
    std::string from;  // reply address: party id on loopback, connection handle on TCP
    std::string to;
    Envelope env;
};

class Sender {
public:
    virtual ~Sender() = default;
    virtual void send(const std::string& dst, const Envelope& env) = 0;
};

class Party {
public:
    virtual ~Party() = default;
    virtual const std::string& id() const = 0;
    virtual void handle(const Delivery& delivery, Sender& out) = 0;
};

// ---- deterministic in-process loopback --------------------------------------

enum class FaultAction : std::uint8_t { Drop, Duplicate, Delay };

struct FaultRule {
    std::string src;             // empty matches any
    std::string dst;             // empty matches any
    std::uint8_t msg_type = 0;   // 0 matches any
    std::uint32_t occurrence = 0;  // 1-based nth match; 0 = every match
    FaultAction action = FaultAction::Drop;
    std::uint32_t delay_slots = 1;  // for Delay: positions pushed back
};

struct TraceEntry {
    std::string src, dst;
    Bytes frame;
};

/// Single-threaded router with a global FIFO: delivery order is send order,
/// so identical seeds and configs replay bit-identically. recv does not
/// exist here; the router dispatches straight into party handlers.
class LoopbackRouter {
public:
    void attach(Party& party);
    void add_fault(const FaultRule& rule);

    /// Queue a message as if `src` had sent it.
    void post(const std::string& src, const std::string& dst, const Envelope& env);

    /// Dispatch until quiescent. Returns the number of deliveries made.
    std::size_t run(std::size_t max_steps = 1'000'000);

    const std::vector<TraceEntry>& trace() const { return trace_; }
    Digest32 trace_digest() const;
    void clear_trace() { trace_.clear(); }

private:
    class RouterSender;
    std::map<std::string, Party*> parties_;
    std::deque<Delivery> queue_;
    std::vector<TraceEntry> trace_;
    std::vector<FaultRule> faults_;
    std::map<std::size_t, std::uint32_t> fault_hits_;  // rule index -> match count
    bool apply_faults(const Delivery& d);              // false: dropped
};

// ---- framed TCP --------------------------------------------------------------

/// One node per party process. Every node listens; outbound messages reuse a
/// per-destination connection, replies ride back on the connection they
/// arrived on (addressed "#conn:<n>"). Frames are the canonical envelope
/// encoding, one frame per message.
class TcpNode : public Sender {
public:
    TcpNode(std::string self, std::string listen_addr,
            std::map<std::string, std::string> peer_addrs);
    ~TcpNode() override;

    TcpNode(const TcpNode&) = delete;
    TcpNode& operator=(const TcpNode&) = delete;

    void start();
    void stop();

    void send(const std::string& dst, const Envelope& env) override;
    /// timeout_ms < 0 blocks, 0 polls.
    std::optional<Delivery> recv(int timeout_ms);

    /// Serve a party's handler until stop() is called from another thread.
    void serve(Party& party);

    const std::string& self() const { return self_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::string self_;
};

}  // namespace sa2fe::wire

#endif  // SA2FE_WIRE_TRANSPORT_HPP
