#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <condition_variable>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sa2fe/wire/transport.hpp"

namespace sa2fe::wire {

namespace {

struct Addr {
    std::string host;
    std::uint16_t port;
};

Addr parse_addr(const std::string& s) {
    auto pos = s.rfind(':');
    if (pos == std::string::npos) throw std::invalid_argument("address must be host:port");
    Addr a;
    a.host = s.substr(0, pos);
    a.port = static_cast<std::uint16_t>(std::stoi(s.substr(pos + 1)));
    return a;
}

bool read_exact(int fd, std::uint8_t* buf, std::size_t n) {
    std::size_t got = 0;
    while (got < n) {
        ssize_t r = ::recv(fd, buf + got, n - got, 0);
        if (r <= 0) return false;
        got += static_cast<std::size_t>(r);
    }
    return true;
}

bool write_all(int fd, const std::uint8_t* buf, std::size_t n) {
    std::size_t sent = 0;
    while (sent < n) {
        ssize_t r = ::send(fd, buf + sent, n - sent, MSG_NOSIGNAL);
        if (r <= 0) return false;
        sent += static_cast<std::size_t>(r);
    }
    return true;
}

// One frame: fixed header then payload_len bytes.
bool read_frame(int fd, Envelope& out) {
    std::uint8_t header[kHeaderBytes];
    if (!read_exact(fd, header, sizeof header)) return false;
    std::size_t len = read_u32_be(std::span<const std::uint8_t>(header + 22, 4));
    if (len > kMaxPayload) return false;
    Bytes frame(header, header + sizeof header);
    frame.resize(kHeaderBytes + len);
    if (len && !read_exact(fd, frame.data() + kHeaderBytes, len)) return false;
    DecodeResult res = decode_frame(frame);
    if (!res.ok()) return false;
    out = std::move(*res.envelope);
    return true;
}

}  // namespace

struct TcpNode::Impl {
    std::string self;
    Addr listen_addr;
    std::map<std::string, std::string> peers;

    int listen_fd = -1;
    std::atomic<bool> running{false};

    std::mutex mu;
    std::condition_variable cv;
    std::deque<Delivery> inbox;
    std::map<std::string, int> conn_fds;  // handle or peer name -> fd
    std::vector<std::thread> readers;
    std::thread acceptor;
    std::uint64_t next_conn = 0;

    void push(Delivery d) {
        {
            std::lock_guard<std::mutex> lk(mu);
            inbox.push_back(std::move(d));
        }
        cv.notify_all();
    }

    void reader_loop(const std::string& handle, int fd) {
        Envelope env;
        while (running.load() && read_frame(fd, env)) {
            push(Delivery{handle, self, env});
        }
        ::shutdown(fd, SHUT_RDWR);
    }

    void accept_loop() {
        while (running.load()) {
            int fd = ::accept(listen_fd, nullptr, nullptr);
            if (fd < 0) break;
            int one = 1;
            setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
            std::string handle;
            {
                std::lock_guard<std::mutex> lk(mu);
                handle = "#conn:" + std::to_string(next_conn++);
                conn_fds[handle] = fd;
            }
            std::lock_guard<std::mutex> lk(mu);
            readers.emplace_back([this, handle, fd] { reader_loop(handle, fd); });
        }
    }

    int connect_to(const std::string& peer) {
        {
            std::lock_guard<std::mutex> lk(mu);
            auto it = conn_fds.find(peer);
            if (it != conn_fds.end()) return it->second;
        }
        auto ait = peers.find(peer);
        if (ait == peers.end()) throw std::invalid_argument("tcp: unknown peer " + peer);
        Addr a = parse_addr(ait->second);
        int fd = ::socket(AF_INET, SOCK_STREAM, 0);
        if (fd < 0) throw std::runtime_error("tcp: socket failed");
        sockaddr_in sa{};
        sa.sin_family = AF_INET;
        sa.sin_port = htons(a.port);
        if (inet_pton(AF_INET, a.host.c_str(), &sa.sin_addr) != 1) {
            ::close(fd);
            throw std::invalid_argument("tcp: bad host " + a.host);
        }
        if (::connect(fd, reinterpret_cast<sockaddr*>(&sa), sizeof sa) != 0) {
            ::close(fd);
            throw std::runtime_error("tcp: connect to " + peer + " failed");
        }
        int one = 1;
        setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
        std::lock_guard<std::mutex> lk(mu);
        auto [it, fresh] = conn_fds.emplace(peer, fd);
        if (!fresh) {
            ::close(fd);
            return it->second;
        }
        readers.emplace_back([this, peer, fd] { reader_loop(peer, fd); });
        return fd;
    }
};

TcpNode::TcpNode(std::string self, std::string listen_addr,
                 std::map<std::string, std::string> peer_addrs)
    : impl_(std::make_unique<Impl>()), self_(std::move(self)) {
    impl_->self = self_;
    impl_->listen_addr = parse_addr(listen_addr);
    impl_->peers = std::move(peer_addrs);
}

TcpNode::~TcpNode() { stop(); }

void TcpNode::start() {
    Impl& im = *impl_;
    im.listen_fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (im.listen_fd < 0) throw std::runtime_error("tcp: socket failed");
    int one = 1;
    setsockopt(im.listen_fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in sa{};
    sa.sin_family = AF_INET;
    sa.sin_port = htons(im.listen_addr.port);
    if (inet_pton(AF_INET, im.listen_addr.host.c_str(), &sa.sin_addr) != 1)
        throw std::invalid_argument("tcp: bad listen host");
    if (::bind(im.listen_fd, reinterpret_cast<sockaddr*>(&sa), sizeof sa) != 0)
        throw std::runtime_error("tcp: bind failed on " + im.listen_addr.host);
    if (::listen(im.listen_fd, 64) != 0) throw std::runtime_error("tcp: listen failed");
    im.running = true;
    im.acceptor = std::thread([&im] { im.accept_loop(); });
}

void TcpNode::stop() {
    Impl& im = *impl_;
    if (!im.running.exchange(false)) return;
    ::shutdown(im.listen_fd, SHUT_RDWR);
    ::close(im.listen_fd);
    {
        std::lock_guard<std::mutex> lk(im.mu);
        for (auto& [_, fd] : im.conn_fds) ::shutdown(fd, SHUT_RDWR);
    }
    if (im.acceptor.joinable()) im.acceptor.join();
    std::vector<std::thread> readers;
    {
        std::lock_guard<std::mutex> lk(im.mu);
        readers.swap(im.readers);
    }
    for (auto& t : readers)
        if (t.joinable()) t.join();
    {
        std::lock_guard<std::mutex> lk(im.mu);
        for (auto& [_, fd] : im.conn_fds) ::close(fd);
        im.conn_fds.clear();
    }
    im.cv.notify_all();
}

void TcpNode::send(const std::string& dst, const Envelope& env) {
    Impl& im = *impl_;
    int fd;
    if (dst.rfind("#conn:", 0) == 0) {
        std::lock_guard<std::mutex> lk(im.mu);
        auto it = im.conn_fds.find(dst);
        if (it == im.conn_fds.end()) throw std::runtime_error("tcp: stale reply handle");
        fd = it->second;
    } else {
        fd = im.connect_to(dst);
    }
    Bytes frame = encode_frame(env);
    if (!write_all(fd, frame.data(), frame.size()))
        throw std::runtime_error("tcp: send to " + dst + " failed");
}

std::optional<Delivery> TcpNode::recv(int timeout_ms) {
    Impl& im = *impl_;
    std::unique_lock<std::mutex> lk(im.mu);
    auto ready = [&im] { return !im.inbox.empty() || !im.running.load(); };
    if (timeout_ms < 0) {
        im.cv.wait(lk, ready);
    } else if (timeout_ms > 0) {
        im.cv.wait_for(lk, std::chrono::milliseconds(timeout_ms), ready);
    }
    if (im.inbox.empty()) return std::nullopt;
    Delivery d = std::move(im.inbox.front());
    im.inbox.pop_front();
    return d;
}

void TcpNode::serve(Party& party) {
    while (impl_->running.load()) {
        auto d = recv(200);
        if (d) party.handle(*d, *this);
    }
}

}  // namespace sa2fe::wire
