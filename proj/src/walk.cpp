#include "fri/walk.hpp"

#include <cstring>

namespace fri {

void validate_params(const KilledWalkParams& params, bool allow_infinite_T) {
    if (params.d < 3 || params.d > kMaxDim)
        throw std::invalid_argument("walk params: d must be in [3, " + std::to_string(kMaxDim) + "]");
    if (std::isnan(params.T) || params.T <= 0.0)
        throw std::invalid_argument("walk params: T must be positive");
    if (std::isinf(params.T) && !allow_infinite_T)
        throw std::invalid_argument("walk params: T = infinity needs a horizon-truncated estimator");
}

std::vector<Point> Trajectory::vertices() const {
    std::vector<Point> v;
    v.reserve(steps.size() + 1);
    v.push_back(start);
    Point p = start;
    for (uint8_t s : steps) {
        p.c[s >> 1] += (s & 1) ? 1 : -1;
        v.push_back(p);
    }
    return v;
}

Trajectory sample_killed_walk(RngStream& rng, const Point& start, const KilledWalkParams& params) {
    validate_params(params);
    Trajectory traj;
    traj.start = start;
    int64_t G = rng.geometric_mean(params.T);
    traj.steps.reserve(size_t(G));
    for (int64_t t = 0; t < G; ++t)
        traj.steps.push_back(uint8_t(rng.below(uint32_t(2 * params.d))));
    return traj;
}

bool hits_at_positive_time(const Trajectory& traj, const PointSet& A) {
    int32_t pos[kMaxDim];
    const int d = traj.start.d;
    std::memcpy(pos, traj.start.c.data(), sizeof(int32_t) * size_t(d));
    for (uint8_t s : traj.steps) {
        pos[s >> 1] += (s & 1) ? 1 : -1;
        if (A.contains(pos)) return true;
    }
    return false;
}

namespace {

// Walks from x until death or first positive-time visit to A; returns the hit
// time, or 0 for escape.  `limit` bounds the number of steps actually taken.
inline int64_t run_until_hit(RngStream& rng, const Point& x, const PointSet& A,
                             int d, int64_t limit) {
    int32_t pos[kMaxDim];
    std::memcpy(pos, x.c.data(), sizeof(int32_t) * size_t(d));
    const uint32_t moves = uint32_t(2 * d);
    for (int64_t t = 1; t <= limit; ++t) {
        uint32_t mv = rng.below(moves);
        pos[mv >> 1] += (mv & 1) ? 1 : -1;
        if (A.contains(pos)) return t;
    }
    return 0;
}

}  // namespace

EstimateWithError estimate_escape_probability(RngStream& rng, const Point& x, const PointSet& A,
                                              const KilledWalkParams& params, int64_t n) {
    validate_params(params);
    if (n < 1) throw std::invalid_argument("estimate_escape_probability: n must be >= 1");
    int64_t escapes = 0;
    for (int64_t i = 0; i < n; ++i) {
        int64_t G = rng.geometric_mean(params.T);
        if (G == 0 || run_until_hit(rng, x, A, params.d, G) == 0) ++escapes;
    }
    double p = double(escapes) / double(n);
    double sd = (n > 1) ? std::sqrt(p * (1.0 - p) * double(n) / double(n - 1)) : 0.0;
    return EstimateWithError{p, sd / std::sqrt(double(n)), n};
}

std::vector<EstimateWithError> estimate_escape_coupled(RngStream& rng, const Point& x,
                                                       const PointSet& A,
                                                       int d, const std::vector<double>& Ts,
                                                       int64_t n) {
    for (double T : Ts) validate_params(KilledWalkParams{d, T});
    if (n < 1) throw std::invalid_argument("estimate_escape_coupled: n must be >= 1");
    std::vector<int64_t> escapes(Ts.size(), 0);
    for (int64_t i = 0; i < n; ++i) {
        RngStream sample = rng.child(uint64_t(i));
        double u = sample.next_unit();  // shared geometric quantile
        for (size_t j = 0; j < Ts.size(); ++j) {
            double q = Ts[j] / (Ts[j] + 1.0);
            int64_t G = int64_t(std::floor(std::log(u) / std::log(q)));
            // Replaying from the same stream state gives every T the same
            // step sequence, so the hit events are nested in T.
            sample.reset();
            sample.next_unit();  // consume the quantile draw again
            if (G == 0 || run_until_hit(sample, x, A, d, G) == 0) ++escapes[j];
        }
    }
    std::vector<EstimateWithError> out(Ts.size());
    for (size_t j = 0; j < Ts.size(); ++j) {
        double p = double(escapes[j]) / double(n);
        double sd = (n > 1) ? std::sqrt(p * (1.0 - p) * double(n) / double(n - 1)) : 0.0;
        out[j] = EstimateWithError{p, sd / std::sqrt(double(n)), n};
    }
    return out;
}

CapacityEstimate estimate_capacity(RngStream& rng, const PointSet& A,
                                   const KilledWalkParams& params, int64_t n_per_vertex) {
    validate_params(params);
    if (A.size() == 0) throw std::invalid_argument("estimate_capacity: A is empty");
    CapacityEstimate cap;
    cap.per_vertex.reserve(A.size());
    double total = 0.0, var = 0.0;
    const double scale = 2.0 * params.d;
    for (size_t i = 0; i < A.size(); ++i) {
        RngStream vertex_rng = rng.child(uint64_t(i));
        EstimateWithError es =
            estimate_escape_probability(vertex_rng, A.points()[i], A, params, n_per_vertex);
        EstimateWithError eq{scale * es.value, scale * es.stderr_, es.n_samples};
        total += eq.value;
        var += eq.stderr_ * eq.stderr_;
        cap.per_vertex.push_back(eq);
    }
    cap.total = EstimateWithError{total, std::sqrt(var), n_per_vertex};
    return cap;
}

ReturnMomentEstimate estimate_return_moment(RngStream& rng, const Point& x, const PointSet& A,
                                            const KilledWalkParams& params, int64_t n,
                                            std::optional<int64_t> horizon) {
    validate_params(params, /*allow_infinite_T=*/true);
    if (n < 1) throw std::invalid_argument("estimate_return_moment: n must be >= 1");
    const bool infinite_T = std::isinf(params.T);
    if (infinite_T && !horizon)
        throw std::invalid_argument("estimate_return_moment: T = infinity requires a horizon");
    if (horizon && *horizon < 1)
        throw std::invalid_argument("estimate_return_moment: horizon must be >= 1");

    double sum = 0.0, sumsq = 0.0;
    bool clipped = false;
    for (int64_t i = 0; i < n; ++i) {
        int64_t limit = infinite_T ? *horizon : rng.geometric_mean(params.T);
        if (horizon && limit > *horizon) { limit = *horizon; clipped = true; }
        int64_t H = run_until_hit(rng, x, A, params.d, limit);
        double v = double(H);  // 0 when the walk never returned in time
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / double(n);
    double var = (n > 1) ? (sumsq - sum * mean) / double(n - 1) : 0.0;
    ReturnMomentEstimate out;
    out.estimate = EstimateWithError{mean, std::sqrt(std::max(var, 0.0) / double(n)), n};
    out.horizon = horizon.value_or(0);
    out.truncated = infinite_T || clipped;
    return out;
}

}  // namespace fri
