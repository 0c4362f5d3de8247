/*
 * Geometrically killed simple random walk on Z^d and Monte Carlo estimators
 * of its hitting functionals.
 *
 * The walk takes G steps, G ~ Geometric on {0,1,2,...} with success
 * probability 1/(T+1) (mean T); each step is uniform over the 2d signed unit
 * moves.  H_A is the first time >= 1 the walk sits in A; when G = 0 no
 * positive time exists and H_A = infinity by convention.  The estimators
 * below report:
 *
 *   escape probability   Es_A(x)   = P_x(H_A = infinity)
 *   equilibrium measure  e_A(x)    = 2d * Es_A(x) for x in A
 *   capacity             cap(A)    = sum_{x in A} e_A(x)
 *   return moment        E_x[H_A * 1{1 <= H_A < infinity}]
 *
 * T = infinity (the unkilled walk) is accepted only by the return-moment
 * estimator and only together with a finite horizon, because for d <= 4 the
 * true moment is infinite and a truncated estimate is the honest report.
 */
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "fri/lattice.hpp"
#include "fri/rng.hpp"

namespace fri {

struct KilledWalkParams {
    int d = 3;
    double T = 1.0;
};

// Throws unless d in [3, kMaxDim] and T > 0 (T = inf only if allowed).
void validate_params(const KilledWalkParams& params, bool allow_infinite_T = false);

struct EstimateWithError {
    double value = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(n)
    int64_t n_samples = 0;
};

// One sampled path; steps are packed as axis0 * 2 + (1 if the move is +1).
struct Trajectory {
    Point start;
    std::vector<uint8_t> steps;

    int64_t length() const { return int64_t(steps.size()); }
    std::vector<Point> vertices() const;  // X_0 .. X_G
};

Trajectory sample_killed_walk(RngStream& rng, const Point& start, const KilledWalkParams& params);

// True iff some X_n with 1 <= n <= G lies in A.
bool hits_at_positive_time(const Trajectory& traj, const PointSet& A);

EstimateWithError estimate_escape_probability(RngStream& rng, const Point& x, const PointSet& A,
                                              const KilledWalkParams& params, int64_t n);

// Common-random-numbers version: one shared uniform decides the geometric
// quantile and one shared stream decides the steps, for every T in Ts.  The
// per-sample hit events are then nested in T, which the monotonicity test and
// the finite-difference derivative check both exploit.
std::vector<EstimateWithError> estimate_escape_coupled(RngStream& rng, const Point& x,
                                                       const PointSet& A,
                                                       int d, const std::vector<double>& Ts,
                                                       int64_t n);

struct CapacityEstimate {
    EstimateWithError total;                     // cap(A) = sum 2d * Es(x)
    std::vector<EstimateWithError> per_vertex;   // equilibrium measure, A order
};

CapacityEstimate estimate_capacity(RngStream& rng, const PointSet& A,
                                   const KilledWalkParams& params, int64_t n_per_vertex);

struct ReturnMomentEstimate {
    EstimateWithError estimate;
    int64_t horizon = 0;     // 0 = untruncated (finite T only)
    bool truncated = false;  // true when a horizon clipped the walk
};

// E_x[H * 1{1 <= H < inf}]; with T = inf a horizon is mandatory and the
// estimate is the truncated analog E_x[H * 1{1 <= H <= horizon}].
ReturnMomentEstimate estimate_return_moment(RngStream& rng, const Point& x, const PointSet& A,
                                            const KilledWalkParams& params, int64_t n,
                                            std::optional<int64_t> horizon = std::nullopt);

}  // namespace fri
