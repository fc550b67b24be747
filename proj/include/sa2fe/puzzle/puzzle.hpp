#ifndef SA2FE_PUZZLE_PUZZLE_HPP
#define SA2FE_PUZZLE_PUZZLE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sa2fe/bytes.hpp"
#include "sa2fe/puzzle/toy_group.hpp"
#include "sa2fe/rng.hpp"

namespace sa2fe::puzzle {

/// Rerandomizable puzzle: a commitment to a solution digest that a key
/// holder can verify and anyone can refresh into an unlinkable equivalent.
/// Two interchangeable constructions share this interface: one over a
/// pairing-friendly curve, one over ElGamal-style universal re-encryption.

enum class Scheme : std::uint8_t {
    BilinearMap = 1,
    UniversalReenc = 2,
};

enum class Backend : std::uint8_t {
    Production = 1,
    Toy = 2,  // small-group test backend; golden vectors and oracle tests only
};

class PuzzleError : public std::runtime_error {
public:
    explicit PuzzleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PuzzleParams {
    Scheme scheme = Scheme::UniversalReenc;
    Backend backend = Backend::Production;
    int security_level = 128;  // 0 in toy mode

    // UniversalReenc public element y = g^x (compressed point, or 8-byte
    // big-endian residue in toy mode). Empty for BilinearMap.
    Bytes ur_public;

    ToyGroup toy;  // toy mode only

    Bytes encode() const;
    static PuzzleParams decode(std::span<const std::uint8_t> in);
};

struct PuzzleTrapdoor {
    Scheme scheme = Scheme::UniversalReenc;
    bool has_secret = false;
    Bytes x;  // big-endian secret exponent; empty for BilinearMap
};

struct PuzzleSolution {
    Scheme scheme = Scheme::UniversalReenc;
    Backend backend = Backend::Production;
    Digest32 digest{};  // raw 32-byte digest the encoding was derived from
    Bytes encoded;      // scalar (bilinear) or group element (UR)
};

struct Puzzle {
    Scheme scheme = Scheme::UniversalReenc;
    Backend backend = Backend::Production;
    std::uint8_t level_tag = 0;  // security level byte as serialized
    std::vector<Bytes> elems;    // 2 (bilinear) or 4 (UR) group elements
};

/// PuzzleSetup. Bilinear has no trapdoor; UR yields the secret exponent x
/// with y = g^x published in the params.
std::pair<PuzzleParams, PuzzleTrapdoor> puzzle_setup(Scheme scheme, int security_level,
                                                     RandomSource& rng);

/// Toy-mode setup with an explicit trapdoor, for golden vectors.
std::pair<PuzzleParams, PuzzleTrapdoor> puzzle_setup_toy(Scheme scheme, const ToyGroup& grp,
                                                         std::uint64_t x);

/// Deterministic injective-up-to-collision encoding of a digest: scalar
/// reduction for bilinear, hash-to-group for UR. Total function.
PuzzleSolution encode_solution(const Digest32& digest, const PuzzleParams& params);

/// Toy-mode solution from an explicit group element / scalar, for oracle
/// sweeps over every subgroup element.
PuzzleSolution toy_solution(const PuzzleParams& params, std::uint64_t value);

Puzzle puzzle_gen(const PuzzleParams& params, const PuzzleSolution& solution, RandomSource& rng);

bool puzzle_match(const PuzzleParams& params, const PuzzleTrapdoor& trapdoor,
                  const PuzzleSolution& solution, const Puzzle& puzzle);

Puzzle puzzle_rerandomize(const PuzzleParams& params, const Puzzle& puzzle, RandomSource& rng);

/// Canonical fixed-length encoding: scheme tag, security level byte, then the
/// compressed elements in declared order.
Bytes serialize_puzzle(const Puzzle& puzzle);
/// Enforces length, canonicity and prime-order subgroup membership.
Puzzle deserialize_puzzle(std::span<const std::uint8_t> in, const PuzzleParams& params);

std::size_t puzzle_serialized_size(const PuzzleParams& params);

}  // namespace sa2fe::puzzle

#endif  // SA2FE_PUZZLE_PUZZLE_HPP
