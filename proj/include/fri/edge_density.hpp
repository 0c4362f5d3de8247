/*
 * Single-edge traversal probability p_{d,u}(T) for the distinguished edge
 * e1 = {0, x1}, by two fully independent routes, plus its T-derivative
 * diagnostic and the Bernoulli good-edge coupling.
 *
 * Closed form.  With A = {0, x1}, E1 = Es_A(-x1), E2 = Es_A(x2), f = Es_A(0),
 * and a = ((2d-2)E2 + E1 + 1)/(2d), the probability that one fiber started
 * at 0 avoids traversing e1 is
 *     pF_0 = ([((2d-2)E2 + E1)/(2d)] T + 1) / (aT + 1),
 * its complement is g = (T/(2d))/(aT + 1), and superposing the two
 * Poisson(2du * f) fiber families at the endpoints gives
 *     p = 1 - exp(-4du * f * g).
 * The inputs are Monte Carlo estimates; the result carries a delta-method
 * standard error.
 *
 * Direct estimator.  Realizes the fibers hitting {0, x1} by the same
 * proposal/acceptance thinning the exact box sampler uses and simply counts
 * replicates in which some fiber traverses e1 -- no shared algebra with the
 * closed form, which is what makes the cross-check in the test suite a real
 * oracle.
 *
 * Derivative.  sign(dp/dT) = sign((f*g)'), and
 *     (f*g)'(T) = (1/(2d))/(aT+1)^2 * [ f - ((aT+1)/(T+1)) * RM ],
 * RM = E_0[H * 1{1 <= H < inf}].  As T -> 0+ this tends to 1/(2d); for large
 * T it goes negative in low dimension (the non-monotone regime) and stays
 * positive in high dimension.
 */
#pragma once

#include "fri/sampler.hpp"
#include "fri/walk.hpp"

namespace fri {

struct EdgeDensityInputs {
    EstimateWithError E1;             // escape of -x1 from {0, x1}
    EstimateWithError E2;             // escape of x2 from {0, x1}
    EstimateWithError Es;             // escape of 0 from {0, x1}; f(T)
    EstimateWithError return_moment;  // E_0[H ; 1 <= H < inf]
};

// Four independent killed-walk Monte Carlo estimates at the given (d, T).
EdgeDensityInputs estimate_inputs(RngStream& rng, int d, double T, int64_t n);

struct ClosedFormResult {
    double a = 0.0;
    double pF_minus_x1 = 0.0;
    double pF_x2 = 0.0;
    double pF_0 = 0.0;
    double g = 0.0;  // = 1 - pF_0
    double p = 0.0;
    double p_stderr = 0.0;
};

// Throws if the escape inputs leave [0,1] or the return moment is negative.
ClosedFormResult closed_form(const EdgeDensityInputs& inputs, int d, double u, double T);

// Empirical frequency of e1-traversal over n_reps independent realizations
// of the fibers meeting {0, x1}.
EstimateWithError edge_density_direct(RngStream& rng, int d, double u, double T, int64_t n_reps);

// (f*g)'(T) from the inputs; the sign of dp/dT.
double fg_derivative(const EdgeDensityInputs& inputs, int d, double T);

struct BernoulliCoupling {
    double density = 0.0;       // 1 - exp(-2uT/(T+1)^2)
    bool supercritical = false; // uT/(T+1)^2 >= -log(1 - p_c)/2
};

BernoulliCoupling bernoulli_coupling(double u, double T, double p_c = 0.2488);

struct CoupledSample {
    FriSample fri;
    EdgeSet good;  // edges traversed by the first jump of some endpoint fiber
};

// Padded-direct sampling with first-jump bookkeeping; good is a Bernoulli
// field of per-edge density 1 - exp(-2uT/(T+1)^2) and is a subset of
// fri.edges in every realization.
CoupledSample sample_coupled_good_edges(const FriConfig& config, RngStream& rng);

}  // namespace fri
