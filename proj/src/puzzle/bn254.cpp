#include "sa2fe/puzzle/bn254.hpp"

#include <cstring>
#include <stdexcept>

namespace sa2fe::puzzle::bn254 {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct U256 {
    u64 v[4];  // little-endian limbs
};

constexpr U256 kP = {{0x3c208c16d87cfd47ull, 0x97816a916871ca8dull, 0xb85045b68181585dull,
                      0x30644e72e131a029ull}};
constexpr U256 kR = {{0x43e1f593f0000001ull, 0x2833e84879b97091ull, 0xb85045b68181585dull,
                      0x30644e72e131a029ull}};
// optimal ate loop count 6x+2, x = 4965661367192848881
constexpr u64 kAteLoopHi = 0x1ull;
constexpr u64 kAteLoopLo = 0x9d797039be763ba8ull;
constexpr u64 kBnX = 0x44e992b44a6909f1ull;

inline bool u256_eq(const U256& a, const U256& b) {
    return a.v[0] == b.v[0] && a.v[1] == b.v[1] && a.v[2] == b.v[2] && a.v[3] == b.v[3];
}

inline bool u256_is_zero(const U256& a) {
    return (a.v[0] | a.v[1] | a.v[2] | a.v[3]) == 0;
}

inline int u256_cmp(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.v[i] < b.v[i]) return -1;
        if (a.v[i] > b.v[i]) return 1;
    }
    return 0;
}

// returns carry
inline u64 u256_add(U256& out, const U256& a, const U256& b) {
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 t = (u128)a.v[i] + b.v[i] + carry;
        out.v[i] = (u64)t;
        carry = t >> 64;
    }
    return (u64)carry;
}

// returns borrow
inline u64 u256_sub(U256& out, const U256& a, const U256& b) {
    u128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 t = (u128)a.v[i] - b.v[i] - borrow;
        out.v[i] = (u64)t;
        borrow = (t >> 64) & 1;
    }
    return (u64)borrow;
}

struct MontCtx {
    U256 n;       // modulus
    u64 n0inv;    // -n^{-1} mod 2^64
    U256 one;     // R mod n
    U256 r2;      // R^2 mod n
};

u64 compute_n0inv(u64 n0) {
    u64 x = 1;
    for (int i = 0; i < 6; ++i) x *= 2 - n0 * x;  // Newton, mod 2^64
    return ~x + 1;                                // negate
}

void mont_mul(const MontCtx& C, U256& out, const U256& a, const U256& b) {
    u64 t[9] = {0};
    for (int i = 0; i < 4; ++i) {
        u128 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 acc = (u128)a.v[i] * b.v[j] + t[i + j] + carry;
            t[i + j] = (u64)acc;
            carry = acc >> 64;
        }
        int k = i + 4;
        while (carry) {
            u128 acc = (u128)t[k] + carry;
            t[k] = (u64)acc;
            carry = acc >> 64;
            ++k;
        }
    }
    for (int i = 0; i < 4; ++i) {
        u64 m = t[i] * C.n0inv;
        u128 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 acc = (u128)m * C.n.v[j] + t[i + j] + carry;
            t[i + j] = (u64)acc;
            carry = acc >> 64;
        }
        int k = i + 4;
        while (carry && k < 9) {
            u128 acc = (u128)t[k] + carry;
            t[k] = (u64)acc;
            carry = acc >> 64;
            ++k;
        }
    }
    U256 res = {{t[4], t[5], t[6], t[7]}};
    if (t[8] != 0 || u256_cmp(res, C.n) >= 0) {
        U256 tmp;
        u256_sub(tmp, res, C.n);
        res = tmp;
    }
    out = res;
}

void mont_add(const MontCtx& C, U256& out, const U256& a, const U256& b) {
    U256 s;
    u64 carry = u256_add(s, a, b);
    if (carry || u256_cmp(s, C.n) >= 0) {
        U256 tmp;
        u256_sub(tmp, s, C.n);
        s = tmp;
    }
    out = s;
}

void mont_sub(const MontCtx& C, U256& out, const U256& a, const U256& b) {
    U256 s;
    if (u256_sub(s, a, b)) {
        U256 tmp;
        u256_add(tmp, s, C.n);
        s = tmp;
    }
    out = s;
}

void mont_neg(const MontCtx& C, U256& out, const U256& a) {
    if (u256_is_zero(a)) {
        out = a;
    } else {
        u256_sub(out, C.n, a);
    }
}

MontCtx make_ctx(const U256& n) {
    MontCtx c;
    c.n = n;
    c.n0inv = compute_n0inv(n.v[0]);
    // R mod n by 256 doublings of 1, then R^2 by another 256.
    U256 acc = {{1, 0, 0, 0}};
    for (int i = 0; i < 256; ++i) mont_add(c, acc, acc, acc);  // works: add/sub only use n
    c.one = acc;
    for (int i = 0; i < 256; ++i) mont_add(c, acc, acc, acc);
    c.r2 = acc;
    return c;
}

// Big-endian byte-string helpers for fixed exponents derived from p.
using ExpBytes = std::vector<std::uint8_t>;

ExpBytes u256_to_be(const U256& a) {
    ExpBytes out(32);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j)
            out[31 - (i * 8 + j)] = (std::uint8_t)(a.v[i] >> (8 * j));
    return out;
}

void be_sub_small(ExpBytes& b, unsigned k) {
    int i = (int)b.size() - 1;
    unsigned borrow = k;
    while (borrow && i >= 0) {
        unsigned cur = b[i];
        if (cur >= borrow) {
            b[i] = (std::uint8_t)(cur - borrow);
            borrow = 0;
        } else {
            b[i] = (std::uint8_t)(256 + cur - borrow);
            borrow = 1;
        }
        --i;
    }
}

void be_div_small(ExpBytes& b, unsigned k) {
    unsigned rem = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        unsigned cur = rem * 256 + b[i];
        b[i] = (std::uint8_t)(cur / k);
        rem = cur % k;
    }
}

// ---- field towers -------------------------------------------------------

const MontCtx& PC() {
    static const MontCtx c = make_ctx(kP);
    return c;
}
const MontCtx& RC() {
    static const MontCtx c = make_ctx(kR);
    return c;
}

struct Fp {
    U256 m;
};

inline Fp fp_zero() { return Fp{{{0, 0, 0, 0}}}; }
inline Fp fp_one() { return Fp{PC().one}; }
inline bool fp_is_zero(const Fp& a) { return u256_is_zero(a.m); }
inline bool fp_eq(const Fp& a, const Fp& b) { return u256_eq(a.m, b.m); }
inline Fp fp_add(const Fp& a, const Fp& b) {
    Fp r;
    mont_add(PC(), r.m, a.m, b.m);
    return r;
}
inline Fp fp_sub(const Fp& a, const Fp& b) {
    Fp r;
    mont_sub(PC(), r.m, a.m, b.m);
    return r;
}
inline Fp fp_neg(const Fp& a) {
    Fp r;
    mont_neg(PC(), r.m, a.m);
    return r;
}
inline Fp fp_mul(const Fp& a, const Fp& b) {
    Fp r;
    mont_mul(PC(), r.m, a.m, b.m);
    return r;
}
inline Fp fp_sqr(const Fp& a) { return fp_mul(a, a); }
inline Fp fp_dbl(const Fp& a) { return fp_add(a, a); }

Fp fp_from_u64(u64 v) {
    Fp r{{{v, 0, 0, 0}}};
    mont_mul(PC(), r.m, r.m, PC().r2);
    return r;
}

Fp fp_from_be(std::span<const std::uint8_t> be) {
    U256 a = {{0, 0, 0, 0}};
    std::size_t n = be.size();
    for (std::size_t i = 0; i < n && i < 32; ++i) {
        std::uint8_t byte = be[n - 1 - i];
        a.v[i / 8] |= (u64)byte << (8 * (i % 8));
    }
    Fp r{a};
    mont_mul(PC(), r.m, r.m, PC().r2);
    return r;
}

U256 fp_canonical(const Fp& a) {
    U256 one = {{1, 0, 0, 0}};
    U256 out;
    mont_mul(PC(), out, a.m, one);
    return out;
}

Fp fp_pow(const Fp& a, const ExpBytes& e) {
    Fp r = fp_one();
    bool started = false;
    for (std::uint8_t byte : e) {
        for (int bit = 7; bit >= 0; --bit) {
            if (started) r = fp_sqr(r);
            if ((byte >> bit) & 1) {
                if (started)
                    r = fp_mul(r, a);
                else {
                    r = a;
                    started = true;
                }
            }
        }
    }
    return started ? r : fp_one();
}

const ExpBytes& exp_p_minus_2() {
    static const ExpBytes e = [] {
        ExpBytes b = u256_to_be(kP);
        be_sub_small(b, 2);
        return b;
    }();
    return e;
}

inline Fp fp_inv(const Fp& a) { return fp_pow(a, exp_p_minus_2()); }

struct Fp2 {
    Fp c0, c1;
};

inline Fp2 fp2_zero() { return {fp_zero(), fp_zero()}; }
inline Fp2 fp2_one() { return {fp_one(), fp_zero()}; }
inline bool fp2_is_zero(const Fp2& a) { return fp_is_zero(a.c0) && fp_is_zero(a.c1); }
inline bool fp2_eq(const Fp2& a, const Fp2& b) { return fp_eq(a.c0, b.c0) && fp_eq(a.c1, b.c1); }
inline Fp2 fp2_add(const Fp2& a, const Fp2& b) {
    return {fp_add(a.c0, b.c0), fp_add(a.c1, b.c1)};
}
inline Fp2 fp2_sub(const Fp2& a, const Fp2& b) {
    return {fp_sub(a.c0, b.c0), fp_sub(a.c1, b.c1)};
}
inline Fp2 fp2_neg(const Fp2& a) { return {fp_neg(a.c0), fp_neg(a.c1)}; }
inline Fp2 fp2_dbl(const Fp2& a) { return {fp_dbl(a.c0), fp_dbl(a.c1)}; }
inline Fp2 fp2_conj(const Fp2& a) { return {a.c0, fp_neg(a.c1)}; }

inline Fp2 fp2_mul(const Fp2& a, const Fp2& b) {
    Fp t0 = fp_mul(a.c0, b.c0);
    Fp t1 = fp_mul(a.c1, b.c1);
    Fp s = fp_mul(fp_add(a.c0, a.c1), fp_add(b.c0, b.c1));
    return {fp_sub(t0, t1), fp_sub(fp_sub(s, t0), t1)};
}

inline Fp2 fp2_sqr(const Fp2& a) {
    Fp t0 = fp_mul(fp_add(a.c0, a.c1), fp_sub(a.c0, a.c1));
    Fp t1 = fp_dbl(fp_mul(a.c0, a.c1));
    return {t0, t1};
}

inline Fp2 fp2_mul_fp(const Fp2& a, const Fp& s) { return {fp_mul(a.c0, s), fp_mul(a.c1, s)}; }

// multiply by xi = 9 + u
inline Fp2 fp2_mul_xi(const Fp2& a) {
    Fp nine_c0 = fp_add(fp_dbl(fp_dbl(fp_dbl(a.c0))), a.c0);
    Fp nine_c1 = fp_add(fp_dbl(fp_dbl(fp_dbl(a.c1))), a.c1);
    return {fp_sub(nine_c0, a.c1), fp_add(nine_c1, a.c0)};
}

inline Fp2 fp2_inv(const Fp2& a) {
    Fp d = fp_inv(fp_add(fp_sqr(a.c0), fp_sqr(a.c1)));
    return {fp_mul(a.c0, d), fp_neg(fp_mul(a.c1, d))};
}

Fp2 fp2_pow(const Fp2& a, const ExpBytes& e) {
    Fp2 r = fp2_one();
    bool started = false;
    for (std::uint8_t byte : e) {
        for (int bit = 7; bit >= 0; --bit) {
            if (started) r = fp2_sqr(r);
            if ((byte >> bit) & 1) {
                if (started)
                    r = fp2_mul(r, a);
                else {
                    r = a;
                    started = true;
                }
            }
        }
    }
    return started ? r : fp2_one();
}

struct Fp6 {
    Fp2 c0, c1, c2;
};

inline Fp6 fp6_zero() { return {fp2_zero(), fp2_zero(), fp2_zero()}; }
inline Fp6 fp6_one() { return {fp2_one(), fp2_zero(), fp2_zero()}; }
inline bool fp6_is_zero(const Fp6& a) {
    return fp2_is_zero(a.c0) && fp2_is_zero(a.c1) && fp2_is_zero(a.c2);
}
inline bool fp6_eq(const Fp6& a, const Fp6& b) {
    return fp2_eq(a.c0, b.c0) && fp2_eq(a.c1, b.c1) && fp2_eq(a.c2, b.c2);
}
inline Fp6 fp6_add(const Fp6& a, const Fp6& b) {
    return {fp2_add(a.c0, b.c0), fp2_add(a.c1, b.c1), fp2_add(a.c2, b.c2)};
}
inline Fp6 fp6_sub(const Fp6& a, const Fp6& b) {
    return {fp2_sub(a.c0, b.c0), fp2_sub(a.c1, b.c1), fp2_sub(a.c2, b.c2)};
}
inline Fp6 fp6_neg(const Fp6& a) { return {fp2_neg(a.c0), fp2_neg(a.c1), fp2_neg(a.c2)}; }

inline Fp6 fp6_mul(const Fp6& a, const Fp6& b) {
    Fp2 t0 = fp2_mul(a.c0, b.c0);
    Fp2 t1 = fp2_mul(a.c1, b.c1);
    Fp2 t2 = fp2_mul(a.c2, b.c2);
    Fp2 c0 = fp2_add(t0, fp2_mul_xi(fp2_sub(
                             fp2_mul(fp2_add(a.c1, a.c2), fp2_add(b.c1, b.c2)), fp2_add(t1, t2))));
    Fp2 c1 = fp2_add(fp2_sub(fp2_mul(fp2_add(a.c0, a.c1), fp2_add(b.c0, b.c1)), fp2_add(t0, t1)),
                     fp2_mul_xi(t2));
    Fp2 c2 = fp2_add(fp2_sub(fp2_mul(fp2_add(a.c0, a.c2), fp2_add(b.c0, b.c2)), fp2_add(t0, t2)),
                     t1);
    return {c0, c1, c2};
}

inline Fp6 fp6_sqr(const Fp6& a) { return fp6_mul(a, a); }

// multiply by v (the cubic variable): (c0,c1,c2) -> (xi*c2, c0, c1)
inline Fp6 fp6_mul_by_v(const Fp6& a) { return {fp2_mul_xi(a.c2), a.c0, a.c1}; }

inline Fp6 fp6_inv(const Fp6& a) {
    Fp2 c0 = fp2_sub(fp2_sqr(a.c0), fp2_mul_xi(fp2_mul(a.c1, a.c2)));
    Fp2 c1 = fp2_sub(fp2_mul_xi(fp2_sqr(a.c2)), fp2_mul(a.c0, a.c1));
    Fp2 c2 = fp2_sub(fp2_sqr(a.c1), fp2_mul(a.c0, a.c2));
    Fp2 t = fp2_add(fp2_mul(a.c0, c0),
                    fp2_mul_xi(fp2_add(fp2_mul(a.c2, c1), fp2_mul(a.c1, c2))));
    Fp2 ti = fp2_inv(t);
    return {fp2_mul(c0, ti), fp2_mul(c1, ti), fp2_mul(c2, ti)};
}

struct Fp12 {
    Fp6 c0, c1;
};

inline Fp12 fp12_one() { return {fp6_one(), fp6_zero()}; }
inline bool fp12_eq(const Fp12& a, const Fp12& b) { return fp6_eq(a.c0, b.c0) && fp6_eq(a.c1, b.c1); }
inline bool fp12_is_one(const Fp12& a) { return fp6_eq(a.c0, fp6_one()) && fp6_is_zero(a.c1); }

inline Fp12 fp12_mul(const Fp12& a, const Fp12& b) {
    Fp6 t0 = fp6_mul(a.c0, b.c0);
    Fp6 t1 = fp6_mul(a.c1, b.c1);
    Fp6 c0 = fp6_add(t0, fp6_mul_by_v(t1));
    Fp6 c1 = fp6_sub(fp6_sub(fp6_mul(fp6_add(a.c0, a.c1), fp6_add(b.c0, b.c1)), t0), t1);
    return {c0, c1};
}

inline Fp12 fp12_sqr(const Fp12& a) {
    Fp6 t0 = fp6_mul(a.c0, a.c1);
    Fp6 s = fp6_mul(fp6_add(a.c0, a.c1), fp6_add(a.c0, fp6_mul_by_v(a.c1)));
    Fp6 c0 = fp6_sub(fp6_sub(s, t0), fp6_mul_by_v(t0));
    Fp6 c1 = fp6_add(t0, t0);
    return {c0, c1};
}

inline Fp12 fp12_conj(const Fp12& a) { return {a.c0, fp6_neg(a.c1)}; }

inline Fp12 fp12_inv(const Fp12& a) {
    Fp6 t = fp6_sub(fp6_sqr(a.c0), fp6_mul_by_v(fp6_sqr(a.c1)));
    Fp6 ti = fp6_inv(t);
    return {fp6_mul(a.c0, ti), fp6_neg(fp6_mul(a.c1, ti))};
}

Fp12 fp12_pow(const Fp12& a, const ExpBytes& e) {
    Fp12 r = fp12_one();
    bool started = false;
    for (std::uint8_t byte : e) {
        for (int bit = 7; bit >= 0; --bit) {
            if (started) r = fp12_sqr(r);
            if ((byte >> bit) & 1) {
                if (started)
                    r = fp12_mul(r, a);
                else {
                    r = a;
                    started = true;
                }
            }
        }
    }
    return started ? r : fp12_one();
}

Fp12 fp12_pow_u64(const Fp12& a, u64 e) {
    Fp12 r = fp12_one();
    bool started = false;
    for (int bit = 63; bit >= 0; --bit) {
        if (started) r = fp12_sqr(r);
        if ((e >> bit) & 1) {
            if (started)
                r = fp12_mul(r, a);
            else {
                r = a;
                started = true;
            }
        }
    }
    return started ? r : fp12_one();
}

// ---- curve constants and frobenius coefficients -------------------------

struct CurveCtx {
    Fp2 twist_b;          // 3 / xi
    Fp2 g2x, g2y;         // generator of G2 (order-r subgroup of the twist)
    Fp2 gamma1[6];        // gamma1[i] = xi^{i(p-1)/6}, index 0 unused
    Fp2 gamma2[6];        // gamma1[i] * conj(gamma1[i])
    Fp2 gamma3[6];
    ExpBytes r_be;        // group order
    ExpBytes p_minus_3_over_4;
    ExpBytes p_minus_1_over_2;
};

Fp fp_from_hex(const char* hex) {
    Bytes b = from_hex(hex);
    return fp_from_be(b);
}

const CurveCtx& CC() {
    static const CurveCtx ctx = [] {
        CurveCtx c;
        Fp2 xi{fp_from_u64(9), fp_one()};
        Fp2 three{fp_from_u64(3), fp_zero()};
        c.twist_b = fp2_mul(three, fp2_inv(xi));
        c.g2x = {fp_from_hex("1800deef121f1e76426a00665e5c4479674322d4f75edadd46debd5cd992f6ed"),
                 fp_from_hex("198e9393920d483a7260bfb731fb5d25f1aa493335a9e71297e485b7aef312c2")};
        c.g2y = {fp_from_hex("12c85ea5db8c6deb4aab71808dcb408fe3d1e7690c43d37b4ce6cc0166fa7daa"),
                 fp_from_hex("090689d0585ff075ec9e99ad690c3395bc4b313370b38ef355acdadcd122975b")};
        ExpBytes p_minus_1_over_6 = u256_to_be(kP);
        be_sub_small(p_minus_1_over_6, 1);
        be_div_small(p_minus_1_over_6, 6);
        c.gamma1[1] = fp2_pow(xi, p_minus_1_over_6);
        for (int i = 2; i <= 5; ++i) c.gamma1[i] = fp2_mul(c.gamma1[i - 1], c.gamma1[1]);
        for (int i = 1; i <= 5; ++i) {
            c.gamma2[i] = fp2_mul(c.gamma1[i], fp2_conj(c.gamma1[i]));
            c.gamma3[i] = fp2_mul(c.gamma1[i], c.gamma2[i]);
        }
        c.r_be = u256_to_be(kR);
        c.p_minus_3_over_4 = u256_to_be(kP);
        be_sub_small(c.p_minus_3_over_4, 3);
        be_div_small(c.p_minus_3_over_4, 4);
        c.p_minus_1_over_2 = u256_to_be(kP);
        be_sub_small(c.p_minus_1_over_2, 1);
        be_div_small(c.p_minus_1_over_2, 2);
        return c;
    }();
    return ctx;
}

// frobenius maps on Fp12
Fp12 fp12_frobenius(const Fp12& a) {
    const CurveCtx& c = CC();
    Fp12 r;
    r.c0.c0 = fp2_conj(a.c0.c0);
    r.c0.c1 = fp2_mul(fp2_conj(a.c0.c1), c.gamma1[2]);
    r.c0.c2 = fp2_mul(fp2_conj(a.c0.c2), c.gamma1[4]);
    r.c1.c0 = fp2_mul(fp2_conj(a.c1.c0), c.gamma1[1]);
    r.c1.c1 = fp2_mul(fp2_conj(a.c1.c1), c.gamma1[3]);
    r.c1.c2 = fp2_mul(fp2_conj(a.c1.c2), c.gamma1[5]);
    return r;
}

Fp12 fp12_frobenius2(const Fp12& a) {
    const CurveCtx& c = CC();
    Fp12 r;
    r.c0.c0 = a.c0.c0;
    r.c0.c1 = fp2_mul(a.c0.c1, c.gamma2[2]);
    r.c0.c2 = fp2_mul(a.c0.c2, c.gamma2[4]);
    r.c1.c0 = fp2_mul(a.c1.c0, c.gamma2[1]);
    r.c1.c1 = fp2_mul(a.c1.c1, c.gamma2[3]);
    r.c1.c2 = fp2_mul(a.c1.c2, c.gamma2[5]);
    return r;
}

Fp12 fp12_frobenius3(const Fp12& a) {
    const CurveCtx& c = CC();
    Fp12 r;
    r.c0.c0 = fp2_conj(a.c0.c0);
    r.c0.c1 = fp2_mul(fp2_conj(a.c0.c1), c.gamma3[2]);
    r.c0.c2 = fp2_mul(fp2_conj(a.c0.c2), c.gamma3[4]);
    r.c1.c0 = fp2_mul(fp2_conj(a.c1.c0), c.gamma3[1]);
    r.c1.c1 = fp2_mul(fp2_conj(a.c1.c1), c.gamma3[3]);
    r.c1.c2 = fp2_mul(fp2_conj(a.c1.c2), c.gamma3[5]);
    return r;
}

// ---- G1 (Jacobian over Fp, y^2 = x^3 + 3) --------------------------------

struct G1Jac {
    Fp x, y, z;  // z == 0 means infinity
};

G1Jac g1_infinity() { return {fp_one(), fp_one(), fp_zero()}; }
bool g1_is_inf(const G1Jac& p) { return fp_is_zero(p.z); }

G1Jac g1_dbl(const G1Jac& p) {
    if (g1_is_inf(p)) return p;
    Fp a = fp_sqr(p.x);
    Fp b = fp_sqr(p.y);
    Fp cc = fp_sqr(b);
    Fp d = fp_dbl(fp_sub(fp_sub(fp_sqr(fp_add(p.x, b)), a), cc));
    Fp e = fp_add(fp_dbl(a), a);
    Fp f = fp_sqr(e);
    Fp x3 = fp_sub(f, fp_dbl(d));
    Fp y3 = fp_sub(fp_mul(e, fp_sub(d, x3)), fp_dbl(fp_dbl(fp_dbl(cc))));
    Fp z3 = fp_dbl(fp_mul(p.y, p.z));
    return {x3, y3, z3};
}

G1Jac g1_add_affine(const G1Jac& p, const Fp& x2, const Fp& y2) {
    if (g1_is_inf(p)) return {x2, y2, fp_one()};
    Fp z2 = fp_sqr(p.z);
    Fp u2 = fp_mul(x2, z2);
    Fp s2 = fp_mul(fp_mul(y2, z2), p.z);
    Fp h = fp_sub(u2, p.x);
    Fp rr = fp_sub(s2, p.y);
    if (fp_is_zero(h)) {
        if (fp_is_zero(rr)) return g1_dbl(p);
        return g1_infinity();
    }
    Fp h2 = fp_sqr(h);
    Fp h3 = fp_mul(h, h2);
    Fp v = fp_mul(p.x, h2);
    Fp x3 = fp_sub(fp_sub(fp_sqr(rr), h3), fp_dbl(v));
    Fp y3 = fp_sub(fp_mul(rr, fp_sub(v, x3)), fp_mul(p.y, h3));
    Fp z3 = fp_mul(p.z, h);
    return {x3, y3, z3};
}

void g1_to_affine(const G1Jac& p, Fp& x, Fp& y, bool& inf) {
    if (g1_is_inf(p)) {
        inf = true;
        x = fp_zero();
        y = fp_zero();
        return;
    }
    inf = false;
    Fp zi = fp_inv(p.z);
    Fp zi2 = fp_sqr(zi);
    x = fp_mul(p.x, zi2);
    y = fp_mul(p.y, fp_mul(zi2, zi));
}

// ---- G2 (Jacobian over Fp2, twist y^2 = x^3 + 3/xi) ----------------------

struct G2Jac {
    Fp2 x, y, z;
};

G2Jac g2_infinity() { return {fp2_one(), fp2_one(), fp2_zero()}; }
bool g2_is_inf(const G2Jac& p) { return fp2_is_zero(p.z); }

G2Jac g2_dbl(const G2Jac& p) {
    if (g2_is_inf(p)) return p;
    Fp2 a = fp2_sqr(p.x);
    Fp2 b = fp2_sqr(p.y);
    Fp2 cc = fp2_sqr(b);
    Fp2 d = fp2_dbl(fp2_sub(fp2_sub(fp2_sqr(fp2_add(p.x, b)), a), cc));
    Fp2 e = fp2_add(fp2_dbl(a), a);
    Fp2 f = fp2_sqr(e);
    Fp2 x3 = fp2_sub(f, fp2_dbl(d));
    Fp2 y3 = fp2_sub(fp2_mul(e, fp2_sub(d, x3)), fp2_dbl(fp2_dbl(fp2_dbl(cc))));
    Fp2 z3 = fp2_dbl(fp2_mul(p.y, p.z));
    return {x3, y3, z3};
}

G2Jac g2_add_affine(const G2Jac& p, const Fp2& x2, const Fp2& y2) {
    if (g2_is_inf(p)) return {x2, y2, fp2_one()};
    Fp2 z2 = fp2_sqr(p.z);
    Fp2 u2 = fp2_mul(x2, z2);
    Fp2 s2 = fp2_mul(fp2_mul(y2, z2), p.z);
    Fp2 h = fp2_sub(u2, p.x);
    Fp2 rr = fp2_sub(s2, p.y);
    if (fp2_is_zero(h)) {
        if (fp2_is_zero(rr)) return g2_dbl(p);
        return g2_infinity();
    }
    Fp2 h2 = fp2_sqr(h);
    Fp2 h3 = fp2_mul(h, h2);
    Fp2 v = fp2_mul(p.x, h2);
    Fp2 x3 = fp2_sub(fp2_sub(fp2_sqr(rr), h3), fp2_dbl(v));
    Fp2 y3 = fp2_sub(fp2_mul(rr, fp2_sub(v, x3)), fp2_mul(p.y, h3));
    Fp2 z3 = fp2_mul(p.z, h);
    return {x3, y3, z3};
}

void g2_to_affine(const G2Jac& p, Fp2& x, Fp2& y, bool& inf) {
    if (g2_is_inf(p)) {
        inf = true;
        x = fp2_zero();
        y = fp2_zero();
        return;
    }
    inf = false;
    Fp2 zi = fp2_inv(p.z);
    Fp2 zi2 = fp2_sqr(zi);
    x = fp2_mul(p.x, zi2);
    y = fp2_mul(p.y, fp2_mul(zi2, zi));
}

G2Jac g2_mul_be(const G2Jac& base, const ExpBytes& k) {
    if (g2_is_inf(base)) return base;
    Fp2 bx, by;
    bool binf;
    g2_to_affine(base, bx, by, binf);
    G2Jac r = g2_infinity();
    for (std::uint8_t byte : k) {
        for (int bit = 7; bit >= 0; --bit) {
            r = g2_dbl(r);
            if ((byte >> bit) & 1) r = g2_add_affine(r, bx, by);
        }
    }
    return r;
}

// ---- Miller loop ---------------------------------------------------------

// Sparse line value: lA + lB*w + lC*w^3 mapped into Fp12 slots
// (c0.c0, c1.c0, c1.c1).
Fp12 line_to_fp12(const Fp2& la, const Fp2& lb, const Fp2& lc) {
    Fp12 r{fp6_zero(), fp6_zero()};
    r.c0.c0 = la;
    r.c1.c0 = lb;
    r.c1.c1 = lc;
    return r;
}

// Doubling step: T <- 2T, returns the tangent line at T evaluated at P.
Fp12 miller_dbl_step(G2Jac& t, const Fp& px, const Fp& py) {
    Fp2 a = fp2_sqr(t.x);                       // X1^2
    Fp2 b = fp2_sqr(t.y);                       // Y1^2
    Fp2 cc = fp2_sqr(b);                        // Y1^4
    Fp2 z2 = fp2_sqr(t.z);                      // Z1^2
    Fp2 d = fp2_dbl(fp2_sub(fp2_sub(fp2_sqr(fp2_add(t.x, b)), a), cc));
    Fp2 e = fp2_add(fp2_dbl(a), a);             // 3*X1^2
    Fp2 f = fp2_sqr(e);
    Fp2 x3 = fp2_sub(f, fp2_dbl(d));
    Fp2 y3 = fp2_sub(fp2_mul(e, fp2_sub(d, x3)), fp2_dbl(fp2_dbl(fp2_dbl(cc))));
    Fp2 z3 = fp2_dbl(fp2_mul(t.y, t.z));

    // Line scaled by 2*Y1*Z1^3: lA = (Z3*Z1^2)*yP, lB = -(E*Z1^2)*xP,
    // lC = E*X1 - 2*Y1^2.
    Fp2 la = fp2_mul_fp(fp2_mul(z3, z2), py);
    Fp2 lb = fp2_neg(fp2_mul_fp(fp2_mul(e, z2), px));
    Fp2 lc = fp2_sub(fp2_mul(e, t.x), fp2_dbl(b));

    t = {x3, y3, z3};
    return line_to_fp12(la, lb, lc);
}

// Mixed addition step: T <- T + Q (Q affine), returns line through T,Q at P.
Fp12 miller_add_step(G2Jac& t, const Fp2& qx, const Fp2& qy, const Fp& px, const Fp& py) {
    Fp2 z2 = fp2_sqr(t.z);
    Fp2 u2 = fp2_mul(qx, z2);
    Fp2 s2 = fp2_mul(fp2_mul(qy, z2), t.z);
    Fp2 h = fp2_sub(u2, t.x);
    Fp2 rr = fp2_sub(s2, t.y);
    Fp2 h2 = fp2_sqr(h);
    Fp2 h3 = fp2_mul(h, h2);
    Fp2 v = fp2_mul(t.x, h2);
    Fp2 x3 = fp2_sub(fp2_sub(fp2_sqr(rr), h3), fp2_dbl(v));
    Fp2 y3 = fp2_sub(fp2_mul(rr, fp2_sub(v, x3)), fp2_mul(t.y, h3));
    Fp2 z3 = fp2_mul(t.z, h);

    // Line scaled by Z3: lA = Z3*yP, lB = -Rr*xP, lC = Rr*qx - qy*Z3.
    Fp2 la = fp2_mul_fp(z3, py);
    Fp2 lb = fp2_neg(fp2_mul_fp(rr, px));
    Fp2 lc = fp2_sub(fp2_mul(rr, qx), fp2_mul(qy, z3));

    t = {x3, y3, z3};
    return line_to_fp12(la, lb, lc);
}

Fp12 miller_loop(const Fp& px, const Fp& py, const Fp2& qx, const Fp2& qy) {
    const CurveCtx& c = CC();
    Fp12 f = fp12_one();
    G2Jac t{qx, qy, fp2_one()};

    // 6x+2 is 65 bits; iterate from bit 63 of the low word after the
    // leading bit (hi word is exactly 1).
    for (int bit = 63; bit >= 0; --bit) {
        f = fp12_mul(fp12_sqr(f), miller_dbl_step(t, px, py));
        if ((kAteLoopLo >> bit) & 1) {
            f = fp12_mul(f, miller_add_step(t, qx, qy, px, py));
        }
    }

    // Frobenius tail: add pi(Q), then add -pi^2(Q).
    Fp2 q1x = fp2_mul(fp2_conj(qx), c.gamma1[2]);
    Fp2 q1y = fp2_mul(fp2_conj(qy), c.gamma1[3]);
    Fp2 q2x = fp2_mul(qx, c.gamma2[2]);
    Fp2 q2y_neg = fp2_neg(fp2_mul(qy, c.gamma2[3]));
    f = fp12_mul(f, miller_add_step(t, q1x, q1y, px, py));
    f = fp12_mul(f, miller_add_step(t, q2x, q2y_neg, px, py));
    return f;
}

Fp12 final_exponentiation(const Fp12& f) {
    // Easy part: f^{(p^6-1)(p^2+1)}.
    Fp12 t = fp12_mul(fp12_conj(f), fp12_inv(f));
    t = fp12_mul(fp12_frobenius2(t), t);

    // Hard part (Beuchat et al. addition chain); in the cyclotomic subgroup
    // conjugation is inversion.
    Fp12 fx = fp12_pow_u64(t, kBnX);
    Fp12 fx2 = fp12_pow_u64(fx, kBnX);
    Fp12 fx3 = fp12_pow_u64(fx2, kBnX);
    Fp12 y0 = fp12_mul(fp12_mul(fp12_frobenius(t), fp12_frobenius2(t)), fp12_frobenius3(t));
    Fp12 y1 = fp12_conj(t);
    Fp12 y2 = fp12_frobenius2(fx2);
    Fp12 y3 = fp12_conj(fp12_frobenius(fx));
    Fp12 y4 = fp12_conj(fp12_mul(fx, fp12_frobenius(fx2)));
    Fp12 y5 = fp12_conj(fx2);
    Fp12 y6 = fp12_conj(fp12_mul(fx3, fp12_frobenius(fx3)));

    Fp12 t0 = fp12_mul(fp12_mul(fp12_sqr(y6), y4), y5);
    Fp12 t1 = fp12_mul(fp12_mul(y3, y5), t0);
    t0 = fp12_mul(t0, y2);
    t1 = fp12_mul(fp12_sqr(t1), t0);
    t1 = fp12_sqr(t1);
    t0 = fp12_mul(t1, y1);
    t1 = fp12_mul(t1, y0);
    t0 = fp12_sqr(t0);
    return fp12_mul(t0, t1);
}

// ---- Fp2 square root (p = 3 mod 4) ---------------------------------------

bool fp2_sqrt(const Fp2& a, Fp2& out) {
    if (fp2_is_zero(a)) {
        out = fp2_zero();
        return true;
    }
    const CurveCtx& c = CC();
    Fp2 a1 = fp2_pow(a, c.p_minus_3_over_4);
    Fp2 x0 = fp2_mul(a1, a);
    Fp2 alpha = fp2_mul(a1, x0);
    Fp2 minus_one = fp2_neg(fp2_one());
    Fp2 x;
    if (fp2_eq(alpha, minus_one)) {
        // multiply by u (u^2 = -1)
        x = Fp2{fp_neg(x0.c1), x0.c0};
    } else {
        Fp2 b = fp2_pow(fp2_add(fp2_one(), alpha), c.p_minus_1_over_2);
        x = fp2_mul(b, x0);
    }
    if (!fp2_eq(fp2_sqr(x), a)) return false;
    out = x;
    return true;
}

// canonical byte parity of an Fp2 value: lsb of c0 unless c0 == 0
int fp2_parity(const Fp2& v) {
    U256 c0 = fp_canonical(v.c0);
    if (!u256_is_zero(c0)) return (int)(c0.v[0] & 1);
    U256 c1 = fp_canonical(v.c1);
    return (int)(c1.v[0] & 1);
}

void fp_write_be(const Fp& v, std::uint8_t* out) {
    U256 c = fp_canonical(v);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 8; ++j)
            out[31 - (i * 8 + j)] = (std::uint8_t)(c.v[i] >> (8 * j));
}

bool fp_read_be_checked(std::span<const std::uint8_t> in, Fp& out) {
    U256 a = {{0, 0, 0, 0}};
    for (std::size_t i = 0; i < 32; ++i) {
        a.v[(31 - i) / 8] |= (u64)in[i] << (8 * ((31 - i) % 8));
    }
    if (u256_cmp(a, kP) >= 0) return false;  // non-canonical
    Fp r{a};
    mont_mul(PC(), r.m, r.m, PC().r2);
    out = r;
    return true;
}

// ---- scalar helpers -------------------------------------------------------

U256 scalar_canonical(const Scalar& s) {
    U256 a = {{s.mont[0], s.mont[1], s.mont[2], s.mont[3]}};
    U256 one = {{1, 0, 0, 0}};
    U256 out;
    mont_mul(RC(), out, a, one);
    return out;
}

ExpBytes scalar_be(const Scalar& s) { return u256_to_be(scalar_canonical(s)); }

}  // namespace

// ---- Scalar ---------------------------------------------------------------

Scalar::Scalar() : mont{0, 0, 0, 0} {}

Scalar Scalar::one() {
    Scalar s;
    const U256& o = RC().one;
    s.mont = {o.v[0], o.v[1], o.v[2], o.v[3]};
    return s;
}

Scalar Scalar::from_u64(std::uint64_t v) {
    U256 a = {{v, 0, 0, 0}};
    U256 out;
    mont_mul(RC(), out, a, RC().r2);
    Scalar s;
    s.mont = {out.v[0], out.v[1], out.v[2], out.v[3]};
    return s;
}

Scalar Scalar::from_bytes_reduced(std::span<const std::uint8_t> be) {
    // Horner over bytes: interpret arbitrary-length big-endian mod r.
    Scalar acc;  // zero
    Scalar base = Scalar::from_u64(256);
    for (std::uint8_t b : be) {
        acc = acc.mul(base);
        U256 sum;
        U256 bv = {{b, 0, 0, 0}};
        U256 bmont;
        mont_mul(RC(), bmont, bv, RC().r2);
        mont_add(RC(), sum, {{acc.mont[0], acc.mont[1], acc.mont[2], acc.mont[3]}}, bmont);
        acc.mont = {sum.v[0], sum.v[1], sum.v[2], sum.v[3]};
    }
    return acc;
}

Scalar Scalar::random(RandomSource& rng) {
    for (;;) {
        Bytes buf = rng.bytes(32);
        U256 a = {{0, 0, 0, 0}};
        for (std::size_t i = 0; i < 32; ++i)
            a.v[(31 - i) / 8] |= (u64)buf[i] << (8 * ((31 - i) % 8));
        if (u256_cmp(a, kR) >= 0) continue;
        U256 out;
        mont_mul(RC(), out, a, RC().r2);
        Scalar s;
        s.mont = {out.v[0], out.v[1], out.v[2], out.v[3]};
        return s;
    }
}

Scalar Scalar::random_nonzero(RandomSource& rng) {
    for (;;) {
        Scalar s = random(rng);
        if (!s.is_zero()) return s;
    }
}

Scalar Scalar::mul(const Scalar& rhs) const {
    U256 a = {{mont[0], mont[1], mont[2], mont[3]}};
    U256 b = {{rhs.mont[0], rhs.mont[1], rhs.mont[2], rhs.mont[3]}};
    U256 out;
    mont_mul(RC(), out, a, b);
    Scalar s;
    s.mont = {out.v[0], out.v[1], out.v[2], out.v[3]};
    return s;
}

Scalar Scalar::inverse() const {
    // Fermat: a^{r-2} mod r.
    ExpBytes e = u256_to_be(kR);
    be_sub_small(e, 2);
    Scalar r = Scalar::one();
    bool started = false;
    for (std::uint8_t byte : e) {
        for (int bit = 7; bit >= 0; --bit) {
            if (started) r = r.mul(r);
            if ((byte >> bit) & 1) {
                if (started)
                    r = r.mul(*this);
                else {
                    r = *this;
                    started = true;
                }
            }
        }
    }
    return r;
}

bool Scalar::is_zero() const { return (mont[0] | mont[1] | mont[2] | mont[3]) == 0; }

bool Scalar::operator==(const Scalar& rhs) const { return mont == rhs.mont; }

Bytes Scalar::to_bytes() const {
    ExpBytes be = scalar_be(*this);
    return Bytes(be.begin(), be.end());
}

// ---- G1Point ---------------------------------------------------------------

G1Point::G1Point() : x{0, 0, 0, 0}, y{0, 0, 0, 0}, inf(true) {}

G1Point G1Point::generator() {
    G1Point p;
    Fp gx = fp_from_u64(1);
    Fp gy = fp_from_u64(2);
    std::memcpy(p.x.data(), gx.m.v, 32);
    std::memcpy(p.y.data(), gy.m.v, 32);
    p.inf = false;
    return p;
}

G1Point G1Point::mul(const Scalar& k) const {
    if (inf || k.is_zero()) return G1Point();
    Fp ax{{{x[0], x[1], x[2], x[3]}}};
    Fp ay{{{y[0], y[1], y[2], y[3]}}};
    ExpBytes e = scalar_be(k);
    G1Jac r = g1_infinity();
    for (std::uint8_t byte : e) {
        for (int bit = 7; bit >= 0; --bit) {
            r = g1_dbl(r);
            if ((byte >> bit) & 1) r = g1_add_affine(r, ax, ay);
        }
    }
    G1Point out;
    Fp ox, oy;
    bool oinf;
    g1_to_affine(r, ox, oy, oinf);
    out.inf = oinf;
    std::memcpy(out.x.data(), ox.m.v, 32);
    std::memcpy(out.y.data(), oy.m.v, 32);
    return out;
}

G1Point G1Point::neg() const {
    if (inf) return *this;
    G1Point p = *this;
    Fp ay{{{y[0], y[1], y[2], y[3]}}};
    Fp ny = fp_neg(ay);
    std::memcpy(p.y.data(), ny.m.v, 32);
    return p;
}

bool G1Point::is_infinity() const { return inf; }

bool G1Point::operator==(const G1Point& rhs) const {
    if (inf || rhs.inf) return inf == rhs.inf;
    return x == rhs.x && y == rhs.y;
}

// ---- G2Point ---------------------------------------------------------------

namespace {

Fp2 g2p_x(const G2Point& p) {
    return {Fp{{{p.x_c0[0], p.x_c0[1], p.x_c0[2], p.x_c0[3]}}},
            Fp{{{p.x_c1[0], p.x_c1[1], p.x_c1[2], p.x_c1[3]}}}};
}
Fp2 g2p_y(const G2Point& p) {
    return {Fp{{{p.y_c0[0], p.y_c0[1], p.y_c0[2], p.y_c0[3]}}},
            Fp{{{p.y_c1[0], p.y_c1[1], p.y_c1[2], p.y_c1[3]}}}};
}

G2Point g2p_from(const Fp2& x, const Fp2& y, bool inf) {
    G2Point p;
    p.inf = inf;
    std::memcpy(p.x_c0.data(), x.c0.m.v, 32);
    std::memcpy(p.x_c1.data(), x.c1.m.v, 32);
    std::memcpy(p.y_c0.data(), y.c0.m.v, 32);
    std::memcpy(p.y_c1.data(), y.c1.m.v, 32);
    return p;
}

}  // namespace

G2Point::G2Point()
    : x_c0{0, 0, 0, 0}, x_c1{0, 0, 0, 0}, y_c0{0, 0, 0, 0}, y_c1{0, 0, 0, 0}, inf(true) {}

G2Point G2Point::generator() {
    const CurveCtx& c = CC();
    return g2p_from(c.g2x, c.g2y, false);
}

G2Point G2Point::add(const G2Point& rhs) const {
    if (inf) return rhs;
    if (rhs.inf) return *this;
    G2Jac a{g2p_x(*this), g2p_y(*this), fp2_one()};
    G2Jac r = g2_add_affine(a, g2p_x(rhs), g2p_y(rhs));
    Fp2 ox, oy;
    bool oinf;
    g2_to_affine(r, ox, oy, oinf);
    return g2p_from(ox, oy, oinf);
}

G2Point G2Point::mul(const Scalar& k) const {
    if (inf || k.is_zero()) return G2Point();
    ExpBytes e = scalar_be(k);
    Fp2 ax = g2p_x(*this), ay = g2p_y(*this);
    G2Jac r = g2_infinity();
    for (std::uint8_t byte : e) {
        for (int bit = 7; bit >= 0; --bit) {
            r = g2_dbl(r);
            if ((byte >> bit) & 1) r = g2_add_affine(r, ax, ay);
        }
    }
    Fp2 ox, oy;
    bool oinf;
    g2_to_affine(r, ox, oy, oinf);
    return g2p_from(ox, oy, oinf);
}

G2Point G2Point::neg() const {
    if (inf) return *this;
    return g2p_from(g2p_x(*this), fp2_neg(g2p_y(*this)), false);
}

bool G2Point::is_infinity() const { return inf; }

bool G2Point::is_on_curve() const {
    if (inf) return true;
    Fp2 x = g2p_x(*this), y = g2p_y(*this);
    Fp2 lhs = fp2_sqr(y);
    Fp2 rhs = fp2_add(fp2_mul(fp2_sqr(x), x), CC().twist_b);
    return fp2_eq(lhs, rhs);
}

bool G2Point::in_subgroup() const {
    if (inf) return true;
    if (!is_on_curve()) return false;
    G2Jac a{g2p_x(*this), g2p_y(*this), fp2_one()};
    return g2_is_inf(g2_mul_be(a, CC().r_be));
}

bool G2Point::operator==(const G2Point& rhs) const {
    if (inf || rhs.inf) return inf == rhs.inf;
    return x_c0 == rhs.x_c0 && x_c1 == rhs.x_c1 && y_c0 == rhs.y_c0 && y_c1 == rhs.y_c1;
}

Bytes G2Point::compress() const {
    if (inf) throw std::invalid_argument("G2Point::compress: infinity");
    Bytes out(kG2CompressedBytes);
    Fp2 x = g2p_x(*this), y = g2p_y(*this);
    fp_write_be(x.c0, out.data());
    fp_write_be(x.c1, out.data() + 32);
    out[64] = (std::uint8_t)fp2_parity(y);
    return out;
}

std::optional<G2Point> G2Point::decompress(std::span<const std::uint8_t> in, bool subgroup_check) {
    if (in.size() != kG2CompressedBytes) return std::nullopt;
    if (in[64] > 1) return std::nullopt;
    Fp2 x;
    if (!fp_read_be_checked(in.subspan(0, 32), x.c0)) return std::nullopt;
    if (!fp_read_be_checked(in.subspan(32, 32), x.c1)) return std::nullopt;
    Fp2 rhs = fp2_add(fp2_mul(fp2_sqr(x), x), CC().twist_b);
    Fp2 y;
    if (!fp2_sqrt(rhs, y)) return std::nullopt;
    if (fp2_is_zero(y)) return std::nullopt;  // x^3+b == 0 never yields a subgroup point here
    if (fp2_parity(y) != (int)in[64]) y = fp2_neg(y);
    G2Point p = g2p_from(x, y, false);
    if (subgroup_check && !p.in_subgroup()) return std::nullopt;
    return p;
}

// ---- Gt and pairings --------------------------------------------------------

namespace {

Fp12 gt_to_fp12(const Gt& g) {
    Fp12 f;
    const u64* src = g.limbs.data();
    Fp2* slots[6] = {&f.c0.c0, &f.c0.c1, &f.c0.c2, &f.c1.c0, &f.c1.c1, &f.c1.c2};
    for (int i = 0; i < 6; ++i) {
        std::memcpy(slots[i]->c0.m.v, src, 32);
        src += 4;
        std::memcpy(slots[i]->c1.m.v, src, 32);
        src += 4;
    }
    return f;
}

void gt_fill(Gt& g, const Fp12& f) {
    u64* dst = g.limbs.data();
    const Fp2* slots[6] = {&f.c0.c0, &f.c0.c1, &f.c0.c2, &f.c1.c0, &f.c1.c1, &f.c1.c2};
    for (int i = 0; i < 6; ++i) {
        std::memcpy(dst, slots[i]->c0.m.v, 32);
        dst += 4;
        std::memcpy(dst, slots[i]->c1.m.v, 32);
        dst += 4;
    }
}

Gt fp12_to_gt(const Fp12& f) {
    Gt g;
    gt_fill(g, f);
    return g;
}

Fp12 miller_points(const G1Point& p, const G2Point& q) {
    if (p.is_infinity() || q.is_infinity()) return fp12_one();
    Fp px{{{p.x[0], p.x[1], p.x[2], p.x[3]}}};
    Fp py{{{p.y[0], p.y[1], p.y[2], p.y[3]}}};
    return miller_loop(px, py, g2p_x(q), g2p_y(q));
}

}  // namespace

Gt::Gt() : limbs{} { gt_fill(*this, fp12_one()); }

Gt Gt::pairing(const G1Point& p, const G2Point& q) {
    return fp12_to_gt(final_exponentiation(miller_points(p, q)));
}

Gt Gt::mul(const Gt& rhs) const {
    return fp12_to_gt(fp12_mul(gt_to_fp12(*this), gt_to_fp12(rhs)));
}

Gt Gt::pow(const Scalar& k) const {
    ExpBytes e = scalar_be(k);
    return fp12_to_gt(fp12_pow(gt_to_fp12(*this), e));
}

bool Gt::is_one() const { return fp12_is_one(gt_to_fp12(*this)); }

bool Gt::operator==(const Gt& rhs) const { return limbs == rhs.limbs; }

bool pairing_check(const G1Point& a1, const G2Point& a2, const G1Point& b1, const G2Point& b2) {
    // e(a1,a2) == e(b1,b2)  <=>  e(a1,a2) * e(-b1,b2) == 1
    Fp12 f = fp12_mul(miller_points(a1, a2), miller_points(b1.neg(), b2));
    return fp12_is_one(final_exponentiation(f));
}

}  // namespace sa2fe::puzzle::bn254
