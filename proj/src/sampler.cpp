#include "fri/sampler.hpp"

#include <cmath>
#include <cstring>

namespace fri {

namespace {

// Geometric/Poisson draws with the per-config constants precomputed; the
// samplers sit in 1e5-replicate loops and the log/exp of a fixed parameter
// does not belong inside them.
struct CachedGeometric {
    double inv_log_q;
    explicit CachedGeometric(double T) : inv_log_q(1.0 / std::log(T / (T + 1.0))) {}
    int64_t draw(RngStream& s) const {
        return int64_t(std::floor(std::log(s.next_unit()) * inv_log_q));
    }
};

struct CachedPoisson {
    double mean;
    double exp_neg;  // exp(-mean), used by the product method
    explicit CachedPoisson(double m) : mean(m), exp_neg(std::exp(-m)) {}
    int64_t draw(RngStream& s) const {
        if (mean >= 30.0) return s.poisson(mean);
        double prod = 1.0;
        int64_t k = -1;
        do {
            prod *= s.next_unit();
            ++k;
        } while (prod > exp_neg);
        return k;
    }
};

/*
 * Shared fiber walker.  Steps a killed walk of the given length from raw
 * coordinates and records every traversal of an in-box edge.  The flat vertex
 * index is maintained incrementally while the walk stays inside (one add per
 * step) and recomputed only on re-entry.
 */
struct FiberWalker {
    const Box& box;
    EdgeSet& edges;
    EdgeSet* first_jumps = nullptr;
    std::vector<Trajectory>* trajectories = nullptr;
    bool dedup_multiplicity = false;

    int d;
    uint32_t moves;
    int64_t stride[kMaxDim];
    std::vector<int64_t> scratch_slots;  // per-fiber slot list in multiplicity mode

    FiberWalker(const Box& b, EdgeSet& e)
        : box(b), edges(e), d(b.dim()), moves(uint32_t(2 * b.dim())) {
        int64_t s = 1;
        for (int i = d - 1; i >= 0; --i) {
            stride[i] = s;
            s *= box.side(i);
        }
        dedup_multiplicity = edges.keeps_multiplicity();
    }

    void run(RngStream& rng, const int32_t* start, int64_t steps, bool count_first_jump) {
        int32_t pos[kMaxDim];
        std::memcpy(pos, start, sizeof(int32_t) * size_t(d));
        bool inside = box.contains(pos);
        int64_t idx = inside ? box.index_of(pos) : -1;
        Trajectory* traj = nullptr;
        if (trajectories) {
            trajectories->emplace_back();
            traj = &trajectories->back();
            traj->start = Point::zero(d);
            std::memcpy(traj->start.c.data(), start, sizeof(int32_t) * size_t(d));
            traj->steps.reserve(size_t(std::min<int64_t>(steps, 1 << 12)));
        }
        if (dedup_multiplicity) scratch_slots.clear();
        for (int64_t t = 1; t <= steps; ++t) {
            uint32_t mv = rng.below(moves);
            int axis = int(mv >> 1);
            int dir = (mv & 1) ? 1 : -1;
            if (traj) traj->steps.push_back(uint8_t(mv));
            int32_t next_c = pos[axis] + dir;
            pos[axis] = next_c;
            bool next_inside =
                inside ? (next_c >= box.lo.c[axis] && next_c <= box.hi.c[axis])
                       : box.contains(pos);
            if (inside && next_inside) {
                int64_t next_idx = idx + dir * stride[axis];
                int64_t base_idx = dir > 0 ? idx : next_idx;
                record(base_idx, axis);
                if (count_first_jump && t == 1 && first_jumps)
                    first_jumps->insert(base_idx, axis);
                idx = next_idx;
            } else if (next_inside) {
                idx = box.index_of(pos);
            }
            inside = next_inside;
        }
        if (dedup_multiplicity) flush_fiber();
    }

private:
    void record(int64_t base_idx, int axis0) {
        if (dedup_multiplicity)
            scratch_slots.push_back(base_idx * d + axis0);
        else
            edges.insert(base_idx, axis0);
    }

    // Multiplicity counts traversing fibers, not traversals: dedupe the slots
    // this one fiber touched before committing them.
    void flush_fiber() {
        std::sort(scratch_slots.begin(), scratch_slots.end());
        scratch_slots.erase(std::unique(scratch_slots.begin(), scratch_slots.end()),
                            scratch_slots.end());
        for (int64_t slot : scratch_slots) edges.insert_slot(slot, 1);
        scratch_slots.clear();
    }
};

// Auxiliary thinning walk: true iff a killed walk from `start` never sits in
// the box at a positive time before dying.  Acceptance probability is exactly
// the killed escape probability of the box at `start`.
bool aux_walk_escapes(RngStream& rng, const int32_t* start, const Box& box,
                      const CachedGeometric& geom, int d) {
    int64_t G = geom.draw(rng);
    if (G == 0) return true;
    int32_t pos[kMaxDim];
    std::memcpy(pos, start, sizeof(int32_t) * size_t(d));
    const uint32_t moves = uint32_t(2 * d);
    for (int64_t t = 0; t < G; ++t) {
        uint32_t mv = rng.below(moves);
        pos[mv >> 1] += (mv & 1) ? 1 : -1;
        if (box.contains(pos)) return false;
    }
    return true;
}

}  // namespace

void validate_fri_config(const FriConfig& config) {
    if (config.d < 3 || config.d > kMaxDim)
        throw std::invalid_argument("fri config: d must be in [3, " + std::to_string(kMaxDim) + "]");
    if (config.box.dim() != config.d)
        throw std::invalid_argument("fri config: box dimension disagrees with d");
    if (!(config.u > 0.0) || !std::isfinite(config.u))
        throw std::invalid_argument("fri config: u must be positive");
    if (!(config.T > 0.0) || !std::isfinite(config.T))
        throw std::invalid_argument("fri config: T must be positive");
    if (!(config.padding_tol > 0.0 && config.padding_tol < 1.0))
        throw std::invalid_argument("fri config: padding_tol must lie in (0,1)");
    int64_t slots = config.box.vertex_count() * config.d;
    if (slots > config.max_edge_slots)
        throw std::runtime_error("fri config: box needs " + std::to_string(slots) +
                                 " edge slots, over the resource budget of " +
                                 std::to_string(config.max_edge_slots));
}

int64_t FriSample::starts_at(const Point& p) const {
    if (edges.box().contains(p))
        return box_start_counts[size_t(edges.box().index_of(p))];
    for (const auto& [pt, n] : collar_start_counts)
        if (pt == p) return n;
    return 0;
}

int64_t padding_margin(double T, double tol) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("padding_margin: T must be positive and finite");
    if (!(tol > 0.0))
        throw std::invalid_argument("padding_margin: tol must be positive");
    if (tol >= 1.0) return 0;
    double log_q = std::log(T / (T + 1.0));
    int64_t m = int64_t(std::ceil(std::log(tol) / log_q));
    // Float-safe adjustment: exact smallest m with q^m <= tol.
    while (m > 0 && std::exp(double(m - 1) * log_q) <= tol) --m;
    while (std::exp(double(m) * log_q) > tol) ++m;
    return m;
}

FriSample sample_fri(const FriConfig& config, RngStream& rng) {
    return config.mode == SamplerMode::exact_boundary ? sample_fri_box_exact(config, rng)
                                                      : sample_fri_box_padded(config, rng);
}

FriSample sample_fri_box_exact(const FriConfig& config, RngStream& rng) {
    validate_fri_config(config);
    const Box& box = config.box;
    const int d = config.d;
    const int64_t n_vertices = box.vertex_count();

    FriSample out;
    out.edges = EdgeSet(box, config.keep_multiplicity);
    out.box_start_counts.assign(size_t(n_vertices), 0);

    FiberWalker walker(box, out.edges);
    if (config.retain_trajectories) walker.trajectories = &out.trajectories;

    const CachedGeometric geom(config.T);
    const CachedPoisson pois_interior(2.0 * d * config.u / (config.T + 1.0));
    const CachedPoisson pois_proposals(2.0 * d * config.u);

    // Row-major odometer over the box; flat index just counts up.
    int32_t pos[kMaxDim];
    for (int i = 0; i < d; ++i) pos[i] = box.lo.c[i];
    for (int64_t idx = 0; idx < n_vertices; ++idx) {
        bool on_face = false;
        for (int i = 0; i < d; ++i)
            if (pos[i] == box.lo.c[i] || pos[i] == box.hi.c[i]) { on_face = true; break; }

        RngStream vertex_rng = rng.child(uint64_t(idx));
        uint32_t started = 0;
        if (!on_face) {
            // Interior tier: escape probability is exactly 1/(T+1), so the
            // accepted-fiber law Poisson(2du/(T+1)) is drawn directly.
            int64_t n_fibers = pois_interior.draw(vertex_rng);
            for (int64_t k = 0; k < n_fibers; ++k)
                walker.run(vertex_rng, pos, geom.draw(vertex_rng), false);
            started = uint32_t(n_fibers);
        } else {
            // Boundary tier: Poisson(2du) proposals thinned by the auxiliary
            // escape event, each acceptance launching a fresh fiber.
            int64_t n_proposals = pois_proposals.draw(vertex_rng);
            for (int64_t k = 0; k < n_proposals; ++k) {
                if (!aux_walk_escapes(vertex_rng, pos, box, geom, d)) continue;
                walker.run(vertex_rng, pos, geom.draw(vertex_rng), false);
                ++started;
            }
        }
        out.box_start_counts[size_t(idx)] = started;
        out.fiber_count += started;

        for (int i = d - 1; i >= 0; --i) {
            if (pos[i] < box.hi.c[i]) { ++pos[i]; break; }
            pos[i] = box.lo.c[i];
        }
    }
    return out;
}

FriSample sample_fri_box_padded(const FriConfig& config, RngStream& rng) {
    validate_fri_config(config);
    const Box& box = config.box;
    const int d = config.d;
    const int64_t n_vertices = box.vertex_count();
    const double q = config.T / (config.T + 1.0);
    const double lambda = 2.0 * d * config.u / (config.T + 1.0);

    // Margin fixpoint: the per-start tolerance is padding_tol divided by the
    // padded vertex count, which itself depends on the margin.
    int64_t margin = padding_margin(config.T, config.padding_tol / double(n_vertices));
    for (int iter = 0; iter < 64; ++iter) {
        double padded = 1.0;
        for (int i = 0; i < d; ++i) padded *= double(box.side(i)) + 2.0 * double(margin);
        int64_t next = padding_margin(config.T, config.padding_tol / padded);
        if (next == margin) break;
        margin = next;
    }

    FriSample out;
    out.edges = EdgeSet(box, config.keep_multiplicity);
    out.box_start_counts.assign(size_t(n_vertices), 0);
    out.padding_margin_used = margin;
    if (config.record_first_jumps) out.first_jump_edges.emplace(box, false);

    FiberWalker walker(box, out.edges);
    if (out.first_jump_edges) walker.first_jumps = &*out.first_jump_edges;
    if (config.retain_trajectories) walker.trajectories = &out.trajectories;

    const CachedGeometric geom(config.T);
    const CachedPoisson pois_vertex(lambda);

    // --- Tier 1: starts inside the box, full Definition-style emission.
    int32_t pos[kMaxDim];
    for (int i = 0; i < d; ++i) pos[i] = box.lo.c[i];
    for (int64_t idx = 0; idx < n_vertices; ++idx) {
        RngStream vertex_rng = rng.child(uint64_t(idx));
        int64_t n_fibers = pois_vertex.draw(vertex_rng);
        for (int64_t k = 0; k < n_fibers; ++k)
            walker.run(vertex_rng, pos, geom.draw(vertex_rng), config.record_first_jumps);
        out.box_start_counts[size_t(idx)] = uint32_t(n_fibers);
        out.fiber_count += n_fibers;
        for (int i = d - 1; i >= 0; --i) {
            if (pos[i] < box.hi.c[i]) { ++pos[i]; break; }
            pos[i] = box.lo.c[i];
        }
    }

    /*
     * --- Tier 2: starts in the collar (padded region minus the box).
     *
     * A start with per-axis overshoots (t_1..t_d), 0 <= t_i <= margin, sum
     * t_i = dist >= 1, emits fibers at rate lambda; only fibers with G >=
     * dist can touch the box, a thinning with probability q^dist that
     * factorizes over axes.  Surviving starts therefore form a Poisson
     * process of total mass lambda * (prod W_i - prod L_i) with product start
     * law: weight L_i for "inside" on axis i (uniform over the side), weight
     * w = q(1-q^margin)/(1-q) for each of "low"/"high" (overshoot truncated-
     * geometric).  Conditioning on "not all axes inside" is done by one
     * sequential pass with suffix products.  Survivor length is dist + fresh
     * Geometric, by memorylessness.
     */
    const double w_out = (q - std::pow(q, double(margin) + 1.0)) / (1.0 - q);
    double suffixW[kMaxDim + 1], suffixL[kMaxDim + 1];
    suffixW[d] = suffixL[d] = 1.0;
    for (int i = d - 1; i >= 0; --i) {
        suffixL[i] = suffixL[i + 1] * double(box.side(i));
        suffixW[i] = suffixW[i + 1] * (double(box.side(i)) + 2.0 * w_out);
    }
    const double collar_mass = lambda * (suffixW[0] - suffixL[0]);

    // Exact dropped mass: starts beyond the margin that could still have
    // reached the box.  Documented in the sample, flagged when over budget.
    {
        double full = 1.0;
        for (int i = 0; i < d; ++i) full *= double(box.side(i)) + 2.0 * q / (1.0 - q);
        out.truncation_mass = lambda * (full - suffixW[0]);
        out.truncation_over_budget = out.truncation_mass > config.padding_tol;
    }

    RngStream collar_rng = rng.child(uint64_t(n_vertices));
    const double log_q = std::log(q);
    const double qm = std::pow(q, double(margin));
    int64_t n_collar = collar_rng.poisson(collar_mass);
    std::vector<Point> collar_starts;
    collar_starts.reserve(size_t(n_collar));
    for (int64_t k = 0; k < n_collar; ++k) {
        int32_t start[kMaxDim];
        int64_t dist = 0;
        bool have_outside = false;
        for (int i = 0; i < d; ++i) {
            bool outside;
            if (have_outside) {
                double W = double(box.side(i)) + 2.0 * w_out;
                outside = collar_rng.next_unit() * W >= double(box.side(i));
            } else {
                // Conditioned on at least one outside axis remaining.
                double denom = suffixW[i] - suffixL[i];
                double p_out = 2.0 * w_out * suffixW[i + 1] / denom;
                outside = (i == d - 1) || collar_rng.next_unit() < p_out;
            }
            if (outside) {
                have_outside = true;
                bool high = collar_rng.next_unit() < 0.5;
                // Truncated geometric on [1, margin]: P(t) proportional to q^t.
                double u = collar_rng.next_unit();
                int64_t t = int64_t(std::ceil(std::log1p(-u * (1.0 - qm)) / log_q));
                t = std::clamp<int64_t>(t, 1, margin);
                dist += t;
                start[i] = high ? box.hi.c[i] + int32_t(t) : box.lo.c[i] - int32_t(t);
            } else {
                start[i] = box.lo.c[i] + int32_t(collar_rng.below(uint32_t(box.side(i))));
            }
        }
        walker.run(collar_rng, start, dist + geom.draw(collar_rng), false);
        Point p = Point::zero(d);
        std::memcpy(p.c.data(), start, sizeof(int32_t) * size_t(d));
        collar_starts.push_back(p);
    }
    out.fiber_count += n_collar;
    std::sort(collar_starts.begin(), collar_starts.end());
    for (size_t i = 0; i < collar_starts.size();) {
        size_t j = i;
        while (j < collar_starts.size() && collar_starts[j] == collar_starts[i]) ++j;
        out.collar_start_counts.emplace_back(collar_starts[i], uint32_t(j - i));
        i = j;
    }
    return out;
}

}  // namespace fri
