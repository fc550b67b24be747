#include "sa2fe/rng.hpp"

#include <openssl/rand.h>

#include <cstring>
#include <stdexcept>

namespace sa2fe {

Bytes RandomSource::bytes(std::size_t n) {
    Bytes out(n);
    fill(out);
    return out;
}

std::uint64_t RandomSource::u64() {
    std::uint8_t buf[8];
    fill(buf);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | buf[i];
    return v;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomSource::below: zero bound");
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
        std::uint64_t v = u64();
        if (v < limit) return v % bound;
    }
}

void SystemRandom::fill(std::span<std::uint8_t> out) {
    if (out.empty()) return;
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
        throw std::runtime_error("RAND_bytes failed");
}

DeterministicRandom::DeterministicRandom(std::span<const std::uint8_t> seed) {
    key_ = sha256(seed);
}

DeterministicRandom::DeterministicRandom(std::uint64_t seed) {
    Bytes b;
    put_u64_be(b, seed);
    key_ = sha256(b);
}

void DeterministicRandom::refill() {
    Bytes input(key_.begin(), key_.end());
    put_u64_be(input, counter_++);
    block_ = sha256(input);
    avail_ = block_.size();
}

void DeterministicRandom::fill(std::span<std::uint8_t> out) {
    std::size_t off = 0;
    while (off < out.size()) {
        if (avail_ == 0) refill();
        std::size_t take = std::min(avail_, out.size() - off);
        std::memcpy(out.data() + off, block_.data() + (block_.size() - avail_), take);
        avail_ -= take;
        off += take;
    }
}

DeterministicRandom DeterministicRandom::derive(std::string_view label) const {
    Bytes input(key_.begin(), key_.end());
    input.push_back(0xd1);
    Bytes lab = str_bytes(label);
    input.insert(input.end(), lab.begin(), lab.end());
    Digest32 d = sha256(input);
    return DeterministicRandom(std::span<const std::uint8_t>(d.data(), d.size()));
}

DeterministicRandom DeterministicRandom::derive_index(std::uint64_t index) const {
    Bytes input(key_.begin(), key_.end());
    input.push_back(0xd2);
    put_u64_be(input, index);
    Digest32 d = sha256(input);
    return DeterministicRandom(std::span<const std::uint8_t>(d.data(), d.size()));
}

Bytes DeterministicRandom::fork_seed() {
    return bytes(32);
}

}  // namespace sa2fe
