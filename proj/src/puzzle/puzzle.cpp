#include "sa2fe/puzzle/puzzle.hpp"

#include "sa2fe/puzzle/bn254.hpp"
#include "sa2fe/puzzle/ec_group.hpp"

namespace sa2fe::puzzle {

namespace {

constexpr std::size_t kToyElemBytes = 8;

std::uint64_t be8_to_u64(std::span<const std::uint8_t> in) { return read_u64_be(in); }

Bytes u64_to_be8(std::uint64_t v) {
    Bytes out;
    put_u64_be(out, v);
    return out;
}

std::size_t elem_bytes(const PuzzleParams& p) {
    if (p.backend == Backend::Toy) return kToyElemBytes;
    if (p.scheme == Scheme::BilinearMap) return bn254::kG2CompressedBytes;
    return EcGroup::by_security_level(p.security_level).point_bytes();
}

std::size_t elem_count(Scheme s) { return s == Scheme::BilinearMap ? 2 : 4; }

std::uint8_t level_byte(const PuzzleParams& p) {
    return p.backend == Backend::Toy ? 0 : static_cast<std::uint8_t>(p.security_level);
}

// Reduce an arbitrary big-endian byte string modulo a small modulus.
std::uint64_t be_mod_u64(std::span<const std::uint8_t> bytes, std::uint64_t m) {
    unsigned __int128 acc = 0;
    for (std::uint8_t b : bytes) acc = (acc * 256 + b) % m;
    return static_cast<std::uint64_t>(acc);
}

void require(bool cond, const char* msg) {
    if (!cond) throw PuzzleError(msg);
}

// Shared coin-drawing conventions; the toy oracle in the test suite mirrors
// these exactly so that identical seeds yield identical coins.
std::uint64_t draw_zq(const ToyGroup& g, RandomSource& rng) { return rng.below(g.q); }
std::uint64_t draw_zq_star(const ToyGroup& g, RandomSource& rng) { return 1 + rng.below(g.q - 1); }

}  // namespace

Bytes PuzzleParams::encode() const {
    Bytes out;
    out.push_back(static_cast<std::uint8_t>(scheme));
    out.push_back(static_cast<std::uint8_t>(backend));
    out.push_back(level_byte(*this));
    put_u32_be(out, static_cast<std::uint32_t>(ur_public.size()));
    out.insert(out.end(), ur_public.begin(), ur_public.end());
    if (backend == Backend::Toy) {
        put_u64_be(out, toy.p);
        put_u64_be(out, toy.q);
        put_u64_be(out, toy.g);
    }
    return out;
}

PuzzleParams PuzzleParams::decode(std::span<const std::uint8_t> in) {
    require(in.size() >= 7, "params: truncated");
    PuzzleParams p;
    p.scheme = static_cast<Scheme>(in[0]);
    require(p.scheme == Scheme::BilinearMap || p.scheme == Scheme::UniversalReenc,
            "params: bad scheme");
    p.backend = static_cast<Backend>(in[1]);
    require(p.backend == Backend::Production || p.backend == Backend::Toy, "params: bad backend");
    p.security_level = in[2];
    std::size_t len = read_u32_be(in.subspan(3));
    require(in.size() >= 7 + len, "params: truncated");
    p.ur_public.assign(in.begin() + 7, in.begin() + 7 + static_cast<std::ptrdiff_t>(len));
    if (p.backend == Backend::Toy) {
        require(in.size() == 7 + len + 24, "params: truncated toy group");
        p.toy.p = read_u64_be(in.subspan(7 + len));
        p.toy.q = read_u64_be(in.subspan(7 + len + 8));
        p.toy.g = read_u64_be(in.subspan(7 + len + 16));
    } else {
        require(in.size() == 7 + len, "params: trailing bytes");
    }
    return p;
}

std::pair<PuzzleParams, PuzzleTrapdoor> puzzle_setup(Scheme scheme, int security_level,
                                                     RandomSource& rng) {
    require(security_level == 128 || security_level == 192, "unsupported security level");
    PuzzleParams params;
    params.scheme = scheme;
    params.backend = Backend::Production;
    params.security_level = security_level;
    PuzzleTrapdoor trapdoor;
    trapdoor.scheme = scheme;
    if (scheme == Scheme::BilinearMap) {
        // Pairing backend is pinned to the 128-bit parameterization.
        require(security_level == 128, "unsupported security level");
        trapdoor.has_secret = false;
    } else {
        const EcGroup& grp = EcGroup::by_security_level(security_level);
        Bn x = grp.random_scalar_nonzero(rng);
        params.ur_public = grp.mul_generator(x);
        trapdoor.has_secret = true;
        trapdoor.x = x.to_bytes_padded(static_cast<std::size_t>((grp.order().num_bits() + 7) / 8));
    }
    return {params, trapdoor};
}

std::pair<PuzzleParams, PuzzleTrapdoor> puzzle_setup_toy(Scheme scheme, const ToyGroup& grp,
                                                         std::uint64_t x) {
    require(grp.valid(), "toy group invalid");
    PuzzleParams params;
    params.scheme = scheme;
    params.backend = Backend::Toy;
    params.security_level = 0;
    params.toy = grp;
    PuzzleTrapdoor trapdoor;
    trapdoor.scheme = scheme;
    if (scheme == Scheme::UniversalReenc) {
        std::uint64_t y = toy_mod_pow(grp.g, x, grp.p);
        params.ur_public = u64_to_be8(y);
        trapdoor.has_secret = true;
        trapdoor.x = u64_to_be8(x);
    }
    return {params, trapdoor};
}

PuzzleSolution encode_solution(const Digest32& digest, const PuzzleParams& params) {
    PuzzleSolution sol;
    sol.scheme = params.scheme;
    sol.backend = params.backend;
    sol.digest = digest;
    if (params.backend == Backend::Toy) {
        if (params.scheme == Scheme::BilinearMap) {
            std::uint64_t m = be_mod_u64(digest, params.toy.q);
            if (m == 0) m = 1;
            sol.encoded = u64_to_be8(m);
        } else {
            // Rehash-and-check into the subgroup, excluding the identity.
            for (std::uint32_t ctr = 0;; ++ctr) {
                Bytes material(digest.begin(), digest.end());
                put_u32_be(material, ctr);
                Digest32 d = sha256(material);
                std::uint64_t cand = 1 + be_mod_u64(std::span(d).first(8), params.toy.p - 1);
                if (cand != 1 && toy_is_member(params.toy, cand)) {
                    sol.encoded = u64_to_be8(cand);
                    break;
                }
            }
        }
        return sol;
    }
    if (params.scheme == Scheme::BilinearMap) {
        bn254::Scalar s = bn254::Scalar::from_bytes_reduced(digest);
        if (s.is_zero()) s = bn254::Scalar::from_u64(1);
        sol.encoded = s.to_bytes();
    } else {
        const EcGroup& grp = EcGroup::by_security_level(params.security_level);
        sol.encoded = grp.hash_to_point(digest);
    }
    return sol;
}

PuzzleSolution toy_solution(const PuzzleParams& params, std::uint64_t value) {
    require(params.backend == Backend::Toy, "toy_solution: production params");
    PuzzleSolution sol;
    sol.scheme = params.scheme;
    sol.backend = Backend::Toy;
    if (params.scheme == Scheme::BilinearMap) {
        require(value % params.toy.q != 0, "toy_solution: zero scalar");
    } else {
        require(toy_is_member(params.toy, value), "toy_solution: not a subgroup element");
    }
    sol.encoded = u64_to_be8(value);
    return sol;
}

namespace {

Puzzle make_puzzle(const PuzzleParams& params, std::vector<Bytes> elems) {
    Puzzle p;
    p.scheme = params.scheme;
    p.backend = params.backend;
    p.level_tag = level_byte(params);
    p.elems = std::move(elems);
    return p;
}

Puzzle gen_toy(const PuzzleParams& params, const PuzzleSolution& sol, RandomSource& rng) {
    const ToyGroup& g = params.toy;
    std::uint64_t m = be8_to_u64(sol.encoded);
    if (params.scheme == Scheme::BilinearMap) {
        std::uint64_t r = draw_zq_star(g, rng);
        std::uint64_t minv = toy_mod_inverse(m % g.q, g.q);
        std::uint64_t z1 = toy_mod_pow(g.g, toy_mod_mul(r, minv, g.q), g.p);
        std::uint64_t z2 = toy_mod_pow(g.g, r, g.p);
        return make_puzzle(params, {u64_to_be8(z1), u64_to_be8(z2)});
    }
    std::uint64_t y = be8_to_u64(params.ur_public);
    std::uint64_t r0 = draw_zq(g, rng);
    std::uint64_t r1 = draw_zq_star(g, rng);
    std::uint64_t a0 = toy_mod_mul(m, toy_mod_pow(y, r0, g.p), g.p);
    std::uint64_t b0 = toy_mod_pow(g.g, r0, g.p);
    std::uint64_t a1 = toy_mod_pow(y, r1, g.p);
    std::uint64_t b1 = toy_mod_pow(g.g, r1, g.p);
    return make_puzzle(params,
                       {u64_to_be8(a0), u64_to_be8(b0), u64_to_be8(a1), u64_to_be8(b1)});
}

Puzzle gen_bilinear(const PuzzleParams& params, const PuzzleSolution& sol, RandomSource& rng) {
    using namespace bn254;
    Scalar m = Scalar::from_bytes_reduced(sol.encoded);
    require(!m.is_zero(), "puzzle_gen: zero solution scalar");
    Scalar r = Scalar::random_nonzero(rng);
    G2Point g2 = G2Point::generator();
    // z1 = g2^{r * m^{-1}}, z2 = g2^{r}; "r mod m = 0" read as field division.
    G2Point z1 = g2.mul(r.mul(m.inverse()));
    G2Point z2 = g2.mul(r);
    return make_puzzle(params, {z1.compress(), z2.compress()});
}

Puzzle gen_ur(const PuzzleParams& params, const PuzzleSolution& sol, RandomSource& rng) {
    const EcGroup& grp = EcGroup::by_security_level(params.security_level);
    Bn r0 = grp.random_scalar(rng);
    Bn r1 = grp.random_scalar_nonzero(rng);
    Bytes a0 = grp.add(sol.encoded, grp.mul(params.ur_public, r0));
    Bytes b0 = grp.mul_generator(r0);
    Bytes a1 = grp.mul(params.ur_public, r1);
    Bytes b1 = grp.mul_generator(r1);
    return make_puzzle(params, {a0, b0, a1, b1});
}

}  // namespace

Puzzle puzzle_gen(const PuzzleParams& params, const PuzzleSolution& solution, RandomSource& rng) {
    require(solution.scheme == params.scheme && solution.backend == params.backend,
            "puzzle_gen: scheme mismatch");
    if (params.backend == Backend::Toy) return gen_toy(params, solution, rng);
    if (params.scheme == Scheme::BilinearMap) return gen_bilinear(params, solution, rng);
    return gen_ur(params, solution, rng);
}

namespace {

bool match_toy(const PuzzleParams& params, const PuzzleTrapdoor& trapdoor,
               const PuzzleSolution& sol, const Puzzle& puz) {
    const ToyGroup& g = params.toy;
    std::uint64_t m = be8_to_u64(sol.encoded);
    if (params.scheme == Scheme::BilinearMap) {
        std::uint64_t z1 = be8_to_u64(puz.elems[0]);
        std::uint64_t z2 = be8_to_u64(puz.elems[1]);
        if (!toy_is_member(g, z1) || !toy_is_member(g, z2)) return false;
        // e(g1^m, z1) == e(g1, z2) via brute-force dlog pairing.
        std::uint64_t e1 = toy_mod_mul(m % g.q, toy_dlog(g, z1), g.q);
        std::uint64_t e2 = toy_dlog(g, z2) % g.q;
        return e1 == e2;
    }
    std::uint64_t x = be8_to_u64(trapdoor.x);
    std::uint64_t a0 = be8_to_u64(puz.elems[0]);
    std::uint64_t b0 = be8_to_u64(puz.elems[1]);
    std::uint64_t a1 = be8_to_u64(puz.elems[2]);
    std::uint64_t b1 = be8_to_u64(puz.elems[3]);
    for (std::uint64_t e : {a0, b0, a1, b1})
        if (!toy_is_member(g, e)) return false;
    std::uint64_t m0 = toy_mod_mul(a0, toy_mod_inverse(toy_mod_pow(b0, x, g.p), g.p), g.p);
    std::uint64_t m1 = toy_mod_mul(a1, toy_mod_inverse(toy_mod_pow(b1, x, g.p), g.p), g.p);
    return m1 == 1 && m0 == m;
}

bool match_bilinear(const PuzzleSolution& sol, const Puzzle& puz) {
    using namespace bn254;
    auto z1 = G2Point::decompress(puz.elems[0], /*subgroup_check=*/false);
    auto z2 = G2Point::decompress(puz.elems[1], /*subgroup_check=*/false);
    if (!z1 || !z2) return false;
    Scalar m = Scalar::from_bytes_reduced(sol.encoded);
    G1Point g1 = G1Point::generator();
    return pairing_check(g1.mul(m), *z1, g1, *z2);
}

bool match_ur(const PuzzleParams& params, const PuzzleTrapdoor& trapdoor,
              const PuzzleSolution& sol, const Puzzle& puz) {
    const EcGroup& grp = EcGroup::by_security_level(params.security_level);
    for (const Bytes& e : puz.elems)
        if (!grp.is_valid_point(e)) return false;
    if (!grp.is_valid_point(sol.encoded)) return false;
    Bn x = Bn::from_bytes(trapdoor.x);
    // m1 == identity  <=>  a1 == x*b1 ; m0 == M  <=>  a0 == M + x*b0
    if (!grp.points_equal(puz.elems[2], grp.mul(puz.elems[3], x))) return false;
    return grp.points_equal(puz.elems[0], grp.add(sol.encoded, grp.mul(puz.elems[1], x)));
}

}  // namespace

bool puzzle_match(const PuzzleParams& params, const PuzzleTrapdoor& trapdoor,
                  const PuzzleSolution& solution, const Puzzle& puzzle) {
    require(puzzle.scheme == params.scheme && solution.scheme == params.scheme,
            "puzzle_match: scheme mismatch");
    require(puzzle.backend == params.backend && solution.backend == params.backend,
            "puzzle_match: backend mismatch");
    require(puzzle.elems.size() == elem_count(params.scheme), "puzzle_match: malformed puzzle");
    if (params.scheme == Scheme::UniversalReenc)
        require(trapdoor.has_secret, "puzzle_match: UR requires trapdoor");
    if (params.backend == Backend::Toy) return match_toy(params, trapdoor, solution, puzzle);
    if (params.scheme == Scheme::BilinearMap) return match_bilinear(solution, puzzle);
    return match_ur(params, trapdoor, solution, puzzle);
}

namespace {

Puzzle rerand_toy(const PuzzleParams& params, const Puzzle& puz, RandomSource& rng) {
    const ToyGroup& g = params.toy;
    if (params.scheme == Scheme::BilinearMap) {
        std::uint64_t z1 = be8_to_u64(puz.elems[0]);
        std::uint64_t z2 = be8_to_u64(puz.elems[1]);
        require(toy_is_member(g, z1) && toy_is_member(g, z2), "rerandomize: invalid element");
        std::uint64_t rp = draw_zq_star(g, rng);
        return make_puzzle(params, {u64_to_be8(toy_mod_pow(z1, rp, g.p)),
                                    u64_to_be8(toy_mod_pow(z2, rp, g.p))});
    }
    std::uint64_t a0 = be8_to_u64(puz.elems[0]);
    std::uint64_t b0 = be8_to_u64(puz.elems[1]);
    std::uint64_t a1 = be8_to_u64(puz.elems[2]);
    std::uint64_t b1 = be8_to_u64(puz.elems[3]);
    for (std::uint64_t e : {a0, b0, a1, b1})
        require(toy_is_member(g, e), "rerandomize: invalid element");
    std::uint64_t rp0 = draw_zq(g, rng);
    std::uint64_t rp1 = draw_zq_star(g, rng);
    std::uint64_t na0 = toy_mod_mul(a0, toy_mod_pow(a1, rp0, g.p), g.p);
    std::uint64_t nb0 = toy_mod_mul(b0, toy_mod_pow(b1, rp0, g.p), g.p);
    std::uint64_t na1 = toy_mod_pow(a1, rp1, g.p);
    std::uint64_t nb1 = toy_mod_pow(b1, rp1, g.p);
    return make_puzzle(params,
                       {u64_to_be8(na0), u64_to_be8(nb0), u64_to_be8(na1), u64_to_be8(nb1)});
}

Puzzle rerand_bilinear(const PuzzleParams& params, const Puzzle& puz, RandomSource& rng) {
    using namespace bn254;
    auto z1 = G2Point::decompress(puz.elems[0], /*subgroup_check=*/false);
    auto z2 = G2Point::decompress(puz.elems[1], /*subgroup_check=*/false);
    require(z1.has_value() && z2.has_value(), "rerandomize: invalid element");
    Scalar rp = Scalar::random_nonzero(rng);
    return make_puzzle(params, {z1->mul(rp).compress(), z2->mul(rp).compress()});
}

Puzzle rerand_ur(const PuzzleParams& params, const Puzzle& puz, RandomSource& rng) {
    const EcGroup& grp = EcGroup::by_security_level(params.security_level);
    for (const Bytes& e : puz.elems)
        require(grp.is_valid_point(e), "rerandomize: invalid element");
    Bn rp0 = grp.random_scalar(rng);
    Bn rp1 = grp.random_scalar_nonzero(rng);
    Bytes na0 = puz.elems[0];
    Bytes nb0 = puz.elems[1];
    if (!rp0.is_zero()) {
        na0 = grp.add(puz.elems[0], grp.mul(puz.elems[2], rp0));
        nb0 = grp.add(puz.elems[1], grp.mul(puz.elems[3], rp0));
    }
    Bytes na1 = grp.mul(puz.elems[2], rp1);
    Bytes nb1 = grp.mul(puz.elems[3], rp1);
    return make_puzzle(params, {na0, nb0, na1, nb1});
}

}  // namespace

Puzzle puzzle_rerandomize(const PuzzleParams& params, const Puzzle& puzzle, RandomSource& rng) {
    require(puzzle.scheme == params.scheme && puzzle.backend == params.backend,
            "rerandomize: scheme mismatch");
    require(puzzle.elems.size() == elem_count(params.scheme), "rerandomize: malformed puzzle");
    if (params.backend == Backend::Toy) return rerand_toy(params, puzzle, rng);
    if (params.scheme == Scheme::BilinearMap) return rerand_bilinear(params, puzzle, rng);
    return rerand_ur(params, puzzle, rng);
}

Bytes serialize_puzzle(const Puzzle& puzzle) {
    Bytes out;
    out.push_back(static_cast<std::uint8_t>(puzzle.scheme));
    out.push_back(puzzle.level_tag);
    for (const Bytes& e : puzzle.elems) out.insert(out.end(), e.begin(), e.end());
    return out;
}

std::size_t puzzle_serialized_size(const PuzzleParams& params) {
    return 2 + elem_count(params.scheme) * elem_bytes(params);
}

Puzzle deserialize_puzzle(std::span<const std::uint8_t> in, const PuzzleParams& params) {
    const std::size_t want = puzzle_serialized_size(params);
    require(in.size() == want, "deserialize: wrong length");
    require(in[0] == static_cast<std::uint8_t>(params.scheme), "deserialize: scheme tag mismatch");
    require(in[1] == level_byte(params), "deserialize: level mismatch");
    const std::size_t eb = elem_bytes(params);
    std::vector<Bytes> elems;
    for (std::size_t i = 0; i < elem_count(params.scheme); ++i) {
        auto part = in.subspan(2 + i * eb, eb);
        Bytes e(part.begin(), part.end());
        if (params.backend == Backend::Toy) {
            require(toy_is_member(params.toy, be8_to_u64(e)), "deserialize: not a group element");
        } else if (params.scheme == Scheme::BilinearMap) {
            require(bn254::G2Point::decompress(e).has_value(),
                    "deserialize: not a group element");
        } else {
            require(EcGroup::by_security_level(params.security_level).is_valid_point(e),
                    "deserialize: not a group element");
        }
        elems.push_back(std::move(e));
    }
    Puzzle p;
    p.scheme = params.scheme;
    p.backend = params.backend;
    p.level_tag = in[1];
    p.elems = std::move(elems);
    return p;
}

}  // namespace sa2fe::puzzle
