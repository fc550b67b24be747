#include "sa2fe/puzzle/toy_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace sa2fe::puzzle {

std::uint64_t toy_mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t toy_mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = toy_mod_mul(result, base, m);
        base = toy_mod_mul(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t toy_mod_inverse(std::uint64_t a, std::uint64_t m_prime) {
    // m prime, a != 0 mod m: Fermat inverse.
    if (a % m_prime == 0) throw std::invalid_argument("toy_mod_inverse: zero");
    return toy_mod_pow(a, m_prime - 2, m_prime);
}

bool toy_is_member(const ToyGroup& grp, std::uint64_t x) {
    if (x == 0 || x >= grp.p) return false;
    return toy_mod_pow(x, grp.q, grp.p) == 1;
}

std::uint64_t toy_dlog(const ToyGroup& grp, std::uint64_t x) {
    std::uint64_t acc = 1;
    for (std::uint64_t k = 0; k < grp.q; ++k) {
        if (acc == x) return k;
        acc = toy_mod_mul(acc, grp.g, grp.p);
    }
    throw std::invalid_argument("toy_dlog: not in subgroup");
}

std::vector<std::uint64_t> toy_elements(const ToyGroup& grp) {
    std::vector<std::uint64_t> out;
    out.reserve(grp.q);
    std::uint64_t acc = 1;
    for (std::uint64_t k = 0; k < grp.q; ++k) {
        out.push_back(acc);
        acc = toy_mod_mul(acc, grp.g, grp.p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ToyGroup toy_group_47() { return ToyGroup{47, 23, 2}; }

}  // namespace sa2fe::puzzle
