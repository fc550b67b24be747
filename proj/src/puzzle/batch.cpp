#include "sa2fe/puzzle/batch.hpp"

#include <omp.h>

namespace sa2fe::puzzle {

namespace {

DeterministicRandom stream_for(std::span<const std::uint8_t> seed, std::uint64_t index) {
    Bytes material(seed.begin(), seed.end());
    put_u64_be(material, index);
    return DeterministicRandom(std::span<const std::uint8_t>(material));
}

}  // namespace

std::vector<Puzzle> rerandomize_batch(const PuzzleParams& params, std::span<const Puzzle> in,
                                      std::span<const std::uint8_t> seed, ExecPolicy policy) {
    std::vector<Puzzle> out(in.size());
    if (policy == ExecPolicy::Serial) {
        for (std::size_t i = 0; i < in.size(); ++i) {
            DeterministicRandom rng = stream_for(seed, i);
            out[i] = puzzle_rerandomize(params, in[i], rng);
        }
        return out;
    }
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(in.size()); ++i) {
        DeterministicRandom rng = stream_for(seed, static_cast<std::uint64_t>(i));
        out[static_cast<std::size_t>(i)] = puzzle_rerandomize(params, in[static_cast<std::size_t>(i)], rng);
    }
    return out;
}

std::vector<std::uint8_t> match_batch(const PuzzleParams& params, const PuzzleTrapdoor& trapdoor,
                                      const PuzzleSolution& solution, std::span<const Puzzle> in,
                                      ExecPolicy policy) {
    std::vector<std::uint8_t> out(in.size(), 0);
    if (policy == ExecPolicy::Serial) {
        for (std::size_t i = 0; i < in.size(); ++i)
            out[i] = puzzle_match(params, trapdoor, solution, in[i]) ? 1 : 0;
        return out;
    }
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(in.size()); ++i)
        out[static_cast<std::size_t>(i)] =
            puzzle_match(params, trapdoor, solution, in[static_cast<std::size_t>(i)]) ? 1 : 0;
    return out;
}

}  // namespace sa2fe::puzzle
