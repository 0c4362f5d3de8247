/*
 * Phase-plane exploration in the (u, T) control plane.
 *
 * sweep() measures cluster-size and cluster-diameter statistics over a
 * rectangular grid of (u, T) points, each averaged over independent
 * replicates.  Replicate streams are keyed by (grid point, replicate), so
 * row (u_i, T_j) of the output is invariant under worker count and under
 * reordering or subsetting of the grid.
 *
 * hill_climb() traces the percolation boundary with the adaptive staircase:
 * at the current (u, T), draw one realization (or a few) on the [0,N]^d box
 * and compare the largest-cluster bounding-box diameter against the
 * threshold sqrt(3) * eps * N.  Subcritical -> step T up; supercritical ->
 * mark (u, T) and step u down.  The walk ends when u would go negative, or
 * is cut off (and flagged) at the T safety cap: since u steps land exactly
 * on a lattice of multiples of du, a climb whose u reaches 0 sits in an
 * empty-sample regime that can never look supercritical again, and the cap
 * is then the only way out.
 *
 * fit_loglog() is ordinary least squares of log T on log u over the marked
 * boundary points; near T = 0 the boundary follows u ~ 1/T, i.e. slope -1.
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "fri/sampler.hpp"

namespace fri {

struct SweepGrid {
    double u_min = 0.0, u_max = 0.0, du = 1.0;
    double T_min = 0.0, T_max = 0.0, dT = 1.0;
    int32_t N = 10;       // box [0, N]^d
    int64_t reps = 1;
    // Resource guard: grid points * reps * box vertices may not exceed this.
    int64_t budget = int64_t(4) << 30;
};

struct PhasePoint {
    double u = 0.0, T = 0.0;
    int64_t reps = 0;
    double mean_largest_size = 0.0;   // vertices; 0 when the sample is empty
    double mean_largest_diam = 0.0;   // bounding-box Euclidean diameter
    double mean_second_size = 0.0;
    double mean_second_diam = 0.0;
};

// Rows ordered u-major then T; base supplies d, mode, tolerances and the
// master seed, while box/u/T come from the grid.
std::vector<PhasePoint> sweep(const SweepGrid& grid, const FriConfig& base, int workers = 1);

struct ClimbConfig {
    int32_t N = 50;
    double u0 = 3.0, T0 = 0.01;
    double du = 0.01, dT = 0.01;
    double eps = 0.2;             // threshold fraction, in (0, 1/sqrt(3)]
    double T_cap = 20.0;          // safety cap; reaching it sets truncated
    int64_t reps_per_step = 1;    // diameters averaged within a step
    int64_t max_steps = 2000000;  // hard stop against pathological oracles
};

struct ClimbStep {
    int64_t step = 0;
    double u = 0.0, T = 0.0;
    double diameter = 0.0;
    bool supercritical = false;  // diameter >= threshold; such steps are marked
};

struct ClimbPath {
    std::vector<ClimbStep> steps;
    std::vector<std::pair<double, double>> marks;  // (u, T) of supercritical steps
    double threshold = 0.0;                        // sqrt(3) * eps * N
    bool truncated = false;                        // ended at T_cap or max_steps
};

// Measured largest-cluster diameter at (u, T) for climb step `step`.
// The default oracle samples one FRI realization per call.
using DiameterOracle = std::function<double(double u, double T, int64_t step)>;

ClimbPath hill_climb(const ClimbConfig& cc, const FriConfig& base,
                     const DiameterOracle& oracle = {});

struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int64_t n_points = 0;
};

// OLS of log T on log u.  Requires >= 2 points with positive coordinates and
// at least two distinct u values.  A constant-T point set fits slope 0 with
// r2 = 1 (zero residual and zero total variation).
RegressionResult fit_loglog(const std::vector<std::pair<double, double>>& uT_points);

}  // namespace fri
