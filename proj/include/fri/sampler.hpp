/*
 * Finitary-random-interlacement sampling restricted to a finite box.
 *
 * The model: every vertex x of Z^d independently emits N_x ~ Poisson(2du/(T+1))
 * fibers, each an independent geometrically killed walk started at x.  The
 * observable is the set of box-internal edges traversed by at least one fiber.
 * Two independent mechanisms produce that restriction:
 *
 * exact-boundary - exact in law.  The trace of the full process on a finite
 *     box K is, by reversibility of the killed walk, the trace of
 *     Poisson(2du * Es_K(x)) unconditioned fibers per x in K, where Es_K is
 *     the killed escape probability.  Interior vertices (all neighbors in K)
 *     have Es = 1/(T+1) exactly, so they draw Poisson(2du/(T+1)) fibers
 *     directly; face vertices draw Poisson(2du) proposals and accept each
 *     with probability exactly Es_K(x) by running an auxiliary killed walk
 *     and accepting iff it never re-enters K at a positive time.  Each
 *     acceptance then launches a fresh unconditioned fiber.
 *
 * padded-direct - direct simulation of Definition-style fiber emission from
 *     the box itself plus a padding collar of margin m around it, with
 *     out-of-collar starts dropped.  A fiber of length < m cannot cross the
 *     collar, so each dropped start reaches the box with probability at most
 *     (T/(T+1))^m; the margin is chosen so the summed (documented, not
 *     silent) truncation mass stays below padding_tol.  Collar starts are
 *     never enumerated vertex by vertex: a fiber from overshoot profile
 *     (t_1..t_d) must survive at least sum(t_i) steps to matter, and that
 *     thinning factorizes as prod q^{t_i}, so surviving collar fibers form a
 *     Poisson process whose start law is a per-axis product (uniform inside
 *     the side, truncated-geometric overshoot outside) and whose length is
 *     dist + fresh Geometric by memorylessness.  This reproduces the padded
 *     box enumeration exactly, at O(d) cost per surviving fiber.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <thread>

#include "fri/lattice.hpp"
#include "fri/rng.hpp"
#include "fri/walk.hpp"

namespace fri {

enum class SamplerMode { exact_boundary, padded_direct };

struct FriConfig {
    int d = 3;
    double u = 0.0;
    double T = 0.0;
    Box box;
    SamplerMode mode = SamplerMode::exact_boundary;
    double padding_tol = 1e-6;       // padded mode: total truncation budget
    uint64_t master_seed = 0;
    bool keep_multiplicity = false;
    bool record_first_jumps = false;  // padded mode: record first-step edges (good-edge coupling)
    bool retain_trajectories = false;
    // Resource guard: refuse boxes whose edge bitset would exceed this many
    // slots (a slot is one bit, plus 4 bytes when multiplicities are kept).
    int64_t max_edge_slots = int64_t(1) << 33;
};

void validate_fri_config(const FriConfig& config);

struct FriSample {
    EdgeSet edges;
    int64_t fiber_count = 0;  // == sum of all per-vertex start counts below

    // Fiber starts per box vertex, indexed by box flat index.
    std::vector<uint32_t> box_start_counts;
    // Padded mode: starts in the collar that survived long enough to possibly
    // reach the box (fibers certain to die earlier are never materialized).
    std::vector<std::pair<Point, uint32_t>> collar_start_counts;

    std::optional<EdgeSet> first_jump_edges;  // when record_first_jumps
    std::vector<Trajectory> trajectories;     // when retain_trajectories

    int64_t padding_margin_used = 0;    // padded mode
    double truncation_mass = 0.0;       // padded mode: exact dropped Poisson mass
    bool truncation_over_budget = false;

    int64_t starts_at(const Point& p) const;
};

// Smallest m >= 0 with (T/(T+1))^m <= tol; tol >= 1 gives 0.
int64_t padding_margin(double T, double tol);

FriSample sample_fri_box_exact(const FriConfig& config, RngStream& rng);
FriSample sample_fri_box_padded(const FriConfig& config, RngStream& rng);

// Mode dispatch.
FriSample sample_fri(const FriConfig& config, RngStream& rng);

/*
 * Parallel replication with a determinism contract: replicate r always uses
 * the stream keyed (purpose, key_index, r) regardless of worker count, and
 * the per-replicate statistics are folded in replicate order, so float
 * reductions are bit-identical for 1 worker and for 64.
 */
template <class Stat, class MapFn, class FoldFn>
Stat run_replicates(const FriConfig& config, int64_t n_reps, MapFn&& map, Stat init,
                    FoldFn&& fold, int workers = 1,
                    StreamPurpose purpose = StreamPurpose::replicate, uint64_t key_index = 0) {
    validate_fri_config(config);
    if (n_reps < 0) throw std::invalid_argument("run_replicates: negative replicate count");
    std::vector<Stat> results(static_cast<size_t>(n_reps));
    workers = int(std::min<int64_t>(std::max(workers, 1), std::max<int64_t>(n_reps, 1)));
    auto body = [&](int64_t r) {
        RngStream stream = RngStream::derive(config.master_seed, StreamKey{purpose, key_index, uint64_t(r)});
        FriSample sample = sample_fri(config, stream);
        results[size_t(r)] = map(sample, r);
    };
    if (workers <= 1) {
        for (int64_t r = 0; r < n_reps; ++r) body(r);
    } else {
        std::atomic<int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(size_t(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    int64_t r = next.fetch_add(1);
                    if (r >= n_reps) return;
                    body(r);
                }
            });
        for (auto& t : pool) t.join();
    }
    Stat acc = std::move(init);
    for (int64_t r = 0; r < n_reps; ++r) acc = fold(std::move(acc), results[size_t(r)]);
    return acc;
}

}  // namespace fri
