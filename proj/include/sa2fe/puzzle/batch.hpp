#ifndef SA2FE_PUZZLE_BATCH_HPP
#define SA2FE_PUZZLE_BATCH_HPP

#include <span>
#include <vector>

#include "sa2fe/puzzle/puzzle.hpp"

namespace sa2fe::puzzle {

/// Batch kernels over puzzle lists. Each list index gets its own randomness
/// stream derived from the batch seed, so the serial reference and the
/// OpenMP kernel produce byte-identical output for the same seed; the serial
/// path is kept as the test oracle for the parallel one.
enum class ExecPolicy {
    Serial,
    Parallel,
};

std::vector<Puzzle> rerandomize_batch(const PuzzleParams& params, std::span<const Puzzle> in,
                                      std::span<const std::uint8_t> seed, ExecPolicy policy);

std::vector<std::uint8_t> match_batch(const PuzzleParams& params, const PuzzleTrapdoor& trapdoor,
                                      const PuzzleSolution& solution, std::span<const Puzzle> in,
                                      ExecPolicy policy);

}  // namespace sa2fe::puzzle

#endif  // SA2FE_PUZZLE_BATCH_HPP
