#ifndef SA2FE_PUZZLE_TOY_GROUP_HPP
#define SA2FE_PUZZLE_TOY_GROUP_HPP

#include <cstdint>
#include <vector>

namespace sa2fe::puzzle {

/// Test-only group: the order-q subgroup of Z_p* for small primes (p < 2^63).
/// Exists for golden vectors and brute-force oracle tests; never used by
/// production parameter sets.
struct ToyGroup {
    std::uint64_t p = 0;  // field prime
    std::uint64_t q = 0;  // subgroup order, prime, q | p-1
    std::uint64_t g = 0;  // generator of the order-q subgroup

    bool valid() const { return p > 2 && q > 1 && g > 1 && g < p; }
};

std::uint64_t toy_mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t toy_mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t toy_mod_inverse(std::uint64_t a, std::uint64_t m_prime);

/// True iff x is a member of the order-q subgroup (identity included).
bool toy_is_member(const ToyGroup& grp, std::uint64_t x);

/// Brute-force discrete log base g; group must be small. Throws if x is not
/// in the subgroup.
std::uint64_t toy_dlog(const ToyGroup& grp, std::uint64_t x);

/// All q subgroup elements in ascending order (identity first position not
/// guaranteed).
std::vector<std::uint64_t> toy_elements(const ToyGroup& grp);

/// The default vector group used across the test corpus: q=23 subgroup of
/// Z_47* generated by 2.
ToyGroup toy_group_47();

}  // namespace sa2fe::puzzle

#endif  // SA2FE_PUZZLE_TOY_GROUP_HPP
