/*
 * Counter-based random number streams for reproducible parallel Monte Carlo.
 *
 * Every random decision in the library is drawn from an RngStream identified by
 * (master_seed, purpose, index, sub).  Streams are cheap to construct (a few
 * integer hashes), independent of worker scheduling, and replayable: resetting
 * the block counter replays the exact byte sequence, which is what the
 * common-random-numbers coupling tests rely on.
 *
 * The generator is Philox4x32-10.  Distributions are implemented here rather
 * than taken from <random> because libstdc++/libc++/MSVC disagree on the
 * variate algorithms, and the reproducibility contract (identical CSV output
 * for any worker count on any platform) requires bit-stable draws.
 */
#pragma once

#include <cstdint>
#include <stdexcept>

namespace fri {

// One Philox4x32-10 block: 4 output words from a 128-bit counter + 64-bit key.
struct PhiloxBlock {
    uint32_t x[4];
};

PhiloxBlock philox4x32_10(const uint32_t ctr[4], const uint32_t key[2]);

// SplitMix64 finalizer; used to derive stream identities from structured keys.
uint64_t splitmix64(uint64_t z);

// The documented key space for derive_stream.  Purposes partition the random
// universe so that no two call sites can collide; index/sub are call-site
// specific (replicate number, vertex index, grid point, ...).
enum class StreamPurpose : uint32_t {
    walk_estimator = 1,  // killed-walk functional estimators (index = estimator slot)
    fiber_interior = 2,  // per-vertex fiber generation, interior tier
    fiber_boundary = 3,  // per-vertex fiber generation, boundary thinning tier
    fiber_outer    = 4,  // aggregated out-of-box fiber generation (padded mode)
    replicate      = 5,  // one stream per replicate of a repeated experiment
    sweep_point    = 6,  // phase-plane sweep, index = grid point, sub = rep
    climb_step     = 7,  // hill climb, index = step number
    direct_edge    = 8,  // direct single-edge density replicates
    coupling       = 9,  // good-edge coupling records
};

constexpr uint32_t kStreamPurposeMin = 1;
constexpr uint32_t kStreamPurposeMax = 9;

struct StreamKey {
    StreamPurpose purpose;
    uint64_t index = 0;
    uint64_t sub = 0;
};

class RngStream {
public:
    RngStream() = default;

    // Deterministic stream for (master_seed, key).  Distinct keys give
    // independent streams; an out-of-range purpose tag is rejected.
    static RngStream derive(uint64_t master_seed, const StreamKey& key);

    // Recursive derivation: a child stream namespaced under this stream's
    // identity.  Used for per-vertex streams inside a replicate.
    RngStream child(uint64_t tag) const;

    // Rewind to the start of the stream (replays the identical sequence).
    void reset() { ctr_[0] = ctr_[1] = 0; pos_ = 4; }

    uint64_t id() const { return id_; }

    uint32_t next_u32();
    uint64_t next_u64();

    // Uniform on (0,1), strictly inside, 53-bit resolution.
    double next_unit();

    // Unbiased uniform integer in [0, n), n >= 1 (Lemire rejection).
    uint32_t below(uint32_t n);

    // Geometric on {0,1,2,...} with mean T: floor(log(U)/log(T/(T+1))).
    // This is the killed-walk lifetime law, P(G = k) = (T/(T+1))^k / (T+1).
    int64_t geometric_mean(double T);

    // Poisson with the given mean (exact: Knuth product method below 30,
    // transformed-rejection PTRS at 30 and above).
    int64_t poisson(double mean);

private:
    uint32_t key_[2] = {0, 0};
    uint32_t ctr_[4] = {0, 0, 0, 0};  // [0..1] block counter, [2..3] identity
    uint64_t id_ = 0;
    PhiloxBlock buf_{};
    int pos_ = 4;  // next unread word in buf_; 4 = empty

    void refill();
    int64_t poisson_knuth(double mean);
    int64_t poisson_ptrs(double mean);
};

}  // namespace fri
