#ifndef SA2FE_RNG_HPP
#define SA2FE_RNG_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>

#include "sa2fe/bytes.hpp"

namespace sa2fe {

/// Injected randomness source. All protocol operations take one per call so
/// that deterministic runs are possible by construction.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    Bytes bytes(std::size_t n);
    std::uint64_t u64();
    /// Uniform in [0, bound) by rejection sampling. bound > 0.
    std::uint64_t below(std::uint64_t bound);
};

/// OS randomness (RAND_bytes).
class SystemRandom final : public RandomSource {
public:
    void fill(std::span<std::uint8_t> out) override;
};

/// SHA-256 in counter mode over a seed key. Reproducible across runs and
/// platforms; child streams derived by label/index never overlap the parent.
class DeterministicRandom final : public RandomSource {
public:
    explicit DeterministicRandom(std::span<const std::uint8_t> seed);
    explicit DeterministicRandom(std::uint64_t seed);

    void fill(std::span<std::uint8_t> out) override;

    DeterministicRandom derive(std::string_view label) const;
    DeterministicRandom derive_index(std::uint64_t index) const;

    /// Seed bytes suitable for seeding an independent child generator.
    Bytes fork_seed();

private:
    Digest32 key_{};
    std::uint64_t counter_ = 0;
    Digest32 block_{};
    std::size_t avail_ = 0;
    void refill();
};

}  // namespace sa2fe

#endif  // SA2FE_RNG_HPP
