/*
 * Philox4x32-10 and the portable distributions.
 *
 * The Philox round constants and the 10-round recommendation follow the
 * original counter-based generator construction (Salmon et al.); the known-
 * answer vectors are pinned in the test suite.
 */
#include "fri/rng.hpp"

#include <cmath>

namespace fri {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;  // golden-ratio Weyl increments
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    uint64_t p = uint64_t(a) * uint64_t(b);
    hi = uint32_t(p >> 32);
    lo = uint32_t(p);
}

}  // namespace

PhiloxBlock philox4x32_10(const uint32_t ctr[4], const uint32_t key[2]) {
    uint32_t c0 = ctr[0], c1 = ctr[1], c2 = ctr[2], c3 = ctr[3];
    uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c0, hi0, lo0);
        mulhilo(kPhiloxM1, c2, hi1, lo1);
        uint32_t n0 = hi1 ^ c1 ^ k0;
        uint32_t n1 = lo1;
        uint32_t n2 = hi0 ^ c3 ^ k1;
        uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return PhiloxBlock{{c0, c1, c2, c3}};
}

uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RngStream RngStream::derive(uint64_t master_seed, const StreamKey& key) {
    uint32_t p = uint32_t(key.purpose);
    if (p < kStreamPurposeMin || p > kStreamPurposeMax)
        throw std::invalid_argument("RngStream::derive: purpose tag outside the documented key space");
    // Chain the key components through the finalizer so every field stirs
    // the full 64-bit state before the next one enters.
    uint64_t h = splitmix64(master_seed ^ 0xA5A5A5A55A5A5A5Aull);
    h = splitmix64(h ^ uint64_t(p));
    h = splitmix64(h ^ key.index);
    h = splitmix64(h ^ key.sub);
    RngStream s;
    s.id_ = h;
    uint64_t h2 = splitmix64(h);
    s.key_[0] = uint32_t(h);
    s.key_[1] = uint32_t(h >> 32);
    s.ctr_[2] = uint32_t(h2);
    s.ctr_[3] = uint32_t(h2 >> 32);
    return s;
}

RngStream RngStream::child(uint64_t tag) const {
    uint64_t h = splitmix64(id_ ^ splitmix64(tag ^ 0xC3C3C3C33C3C3C3Cull));
    RngStream s;
    s.id_ = h;
    uint64_t h2 = splitmix64(h);
    s.key_[0] = uint32_t(h);
    s.key_[1] = uint32_t(h >> 32);
    s.ctr_[2] = uint32_t(h2);
    s.ctr_[3] = uint32_t(h2 >> 32);
    return s;
}

void RngStream::refill() {
    buf_ = philox4x32_10(ctr_, key_);
    pos_ = 0;
    // 64-bit block counter; the identity words [2..3] never change.
    if (++ctr_[0] == 0) ++ctr_[1];
}

uint32_t RngStream::next_u32() {
    if (pos_ >= 4) refill();
    return buf_.x[pos_++];
}

uint64_t RngStream::next_u64() {
    uint64_t lo = next_u32();
    uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double RngStream::next_unit() {
    // 53 random bits, offset by half an ulp so the value is in the open
    // interval (0,1): log(U) in the geometric sampler must never see 0.
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

uint32_t RngStream::below(uint32_t n) {
    if (n == 0) throw std::invalid_argument("RngStream::below: n must be >= 1");
    uint64_t m = uint64_t(next_u32()) * n;
    uint32_t lo = uint32_t(m);
    if (lo < n) {
        uint32_t t = uint32_t(-n) % n;  // 2^32 mod n
        while (lo < t) {
            m = uint64_t(next_u32()) * n;
            lo = uint32_t(m);
        }
    }
    return uint32_t(m >> 32);
}

int64_t RngStream::geometric_mean(double T) {
    double q = T / (T + 1.0);
    double u = next_unit();
    return int64_t(std::floor(std::log(u) / std::log(q)));
}

int64_t RngStream::poisson(double mean) {
    if (mean <= 0.0) return 0;
    return mean < 30.0 ? poisson_knuth(mean) : poisson_ptrs(mean);
}

int64_t RngStream::poisson_knuth(double mean) {
    double limit = std::exp(-mean);
    double prod = 1.0;
    int64_t k = -1;
    do {
        prod *= next_unit();
        ++k;
    } while (prod > limit);
    return k;
}

// Transformed rejection with squeeze (Hormann's PTRS); exact for mean >= 10,
// used here from 30 where it beats the product method comfortably.
int64_t RngStream::poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double llam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = next_unit() - 0.5;
        double v = next_unit();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return int64_t(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            kf * llam - mean - std::lgamma(kf + 1.0))
            return int64_t(kf);
    }
}

}  // namespace fri
