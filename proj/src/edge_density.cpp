/*
 * Closed-form and direct estimators for the single-edge traversal
 * probability, the T-derivative diagnostic, and the Bernoulli coupling.
 */
#include "fri/edge_density.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace fri {

namespace {

void check_point_inputs(const EdgeDensityInputs& in) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!std::isfinite(in.E1.value) || !in_unit(in.E1.value))
        throw std::invalid_argument("edge_density: E1 outside [0,1]");
    if (!std::isfinite(in.E2.value) || !in_unit(in.E2.value))
        throw std::invalid_argument("edge_density: E2 outside [0,1]");
    if (!std::isfinite(in.Es.value) || !in_unit(in.Es.value))
        throw std::invalid_argument("edge_density: Es outside [0,1]");
    if (!std::isfinite(in.return_moment.value) || in.return_moment.value < 0.0)
        throw std::invalid_argument("edge_density: negative return moment");
}

void check_dT(int d, double T) {
    if (d < 3 || d > kMaxDim) throw std::invalid_argument("edge_density: d outside [3," + std::to_string(kMaxDim) + "]");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("edge_density: T must be finite and > 0");
}

}  // namespace

EdgeDensityInputs estimate_inputs(RngStream& rng, int d, double T, int64_t n) {
    check_dT(d, T);
    if (n < 1) throw std::invalid_argument("estimate_inputs: n must be >= 1");
    KilledWalkParams params{d, T};

    Point origin = Point::zero(d);
    Point x1 = origin.moved(1, +1);
    Point minus_x1 = origin.moved(1, -1);
    Point x2 = origin.moved(2, +1);
    PointSet A({origin, x1});

    RngStream s1 = rng.child(0);
    RngStream s2 = rng.child(1);
    RngStream ss = rng.child(2);
    RngStream sm = rng.child(3);

    EdgeDensityInputs out;
    out.E1 = estimate_escape_probability(s1, minus_x1, A, params, n);
    out.E2 = estimate_escape_probability(s2, x2, A, params, n);
    out.Es = estimate_escape_probability(ss, origin, A, params, n);
    out.return_moment = estimate_return_moment(sm, origin, A, params, n).estimate;
    return out;
}

ClosedFormResult closed_form(const EdgeDensityInputs& inputs, int d, double u, double T) {
    check_dT(d, T);
    check_point_inputs(inputs);
    if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("closed_form: u must be finite and > 0");

    const double dd = 2.0 * d;
    const double E1 = inputs.E1.value;
    const double E2 = inputs.E2.value;
    const double f = inputs.Es.value;

    ClosedFormResult r;
    r.a = ((dd - 2.0) * E2 + E1 + 1.0) / dd;
    const double denom = r.a * T + 1.0;
    r.pF_minus_x1 = (((dd - 2.0) * E2 + 2.0 * E1) / dd * T + 1.0) / denom;
    r.pF_x2 = (((dd - 1.0) * E2 + E1) / dd * T + 1.0) / denom;
    r.pF_0 = (((dd - 2.0) * E2 + E1) / dd * T + 1.0) / denom;
    r.g = (T / dd) / denom;

    const double w = 2.0 * dd * u;  // 4du
    r.p = -std::expm1(-w * f * r.g);

    // Delta method through p(f, g(a(E1, E2))).
    const double e = std::exp(-w * f * r.g);
    const double dp_df = w * r.g * e;
    const double dp_dg = w * f * e;
    const double dg_da = -T * T / (dd * denom * denom);
    const double da_dE1 = 1.0 / dd;
    const double da_dE2 = (dd - 2.0) / dd;
    const double via_g = dp_dg * dg_da;
    const double v = dp_df * dp_df * inputs.Es.stderr_ * inputs.Es.stderr_ +
                     via_g * via_g * (da_dE1 * da_dE1 * inputs.E1.stderr_ * inputs.E1.stderr_ +
                                      da_dE2 * da_dE2 * inputs.E2.stderr_ * inputs.E2.stderr_);
    r.p_stderr = std::sqrt(v);
    return r;
}

double fg_derivative(const EdgeDensityInputs& inputs, int d, double T) {
    check_dT(d, T);
    check_point_inputs(inputs);
    const double dd = 2.0 * d;
    const double a = ((dd - 2.0) * inputs.E2.value + inputs.E1.value + 1.0) / dd;
    const double denom = a * T + 1.0;
    return (1.0 / dd) / (denom * denom) *
           (inputs.Es.value - denom / (T + 1.0) * inputs.return_moment.value);
}

namespace {

// Walk-position helpers over raw coordinates; A = {0, x1} throughout.
inline bool is_origin(const int32_t* pos, int d) {
    for (int i = 0; i < d; ++i)
        if (pos[i] != 0) return false;
    return true;
}

inline bool is_x1(const int32_t* pos, int d) {
    if (pos[0] != 1) return false;
    for (int i = 1; i < d; ++i)
        if (pos[i] != 0) return false;
    return true;
}

// Killed walk from start; true iff it never sits in {0, x1} at a time >= 1.
bool avoids_pair(RngStream& rng, const int32_t* start, int d, double T) {
    int64_t g = rng.geometric_mean(T);
    int32_t pos[kMaxDim];
    std::memcpy(pos, start, sizeof(int32_t) * size_t(d));
    for (int64_t t = 0; t < g; ++t) {
        uint32_t mv = rng.below(uint32_t(2 * d));
        pos[mv >> 1] += (mv & 1u) ? 1 : -1;
        if (is_origin(pos, d) || is_x1(pos, d)) return false;
    }
    return true;
}

// Killed walk from start; true iff some step crosses between 0 and x1.
bool traverses_e1(RngStream& rng, const int32_t* start, int d, double T) {
    int64_t g = rng.geometric_mean(T);
    int32_t pos[kMaxDim];
    std::memcpy(pos, start, sizeof(int32_t) * size_t(d));
    bool at0 = is_origin(pos, d);
    bool at1 = is_x1(pos, d);
    for (int64_t t = 0; t < g; ++t) {
        uint32_t mv = rng.below(uint32_t(2 * d));
        pos[mv >> 1] += (mv & 1u) ? 1 : -1;
        bool n0 = is_origin(pos, d);
        bool n1 = is_x1(pos, d);
        if ((at0 && n1) || (at1 && n0)) return true;
        at0 = n0;
        at1 = n1;
    }
    return false;
}

}  // namespace

EstimateWithError edge_density_direct(RngStream& rng, int d, double u, double T, int64_t n_reps) {
    check_dT(d, T);
    if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("edge_density_direct: u must be finite and > 0");
    if (n_reps < 1) throw std::invalid_argument("edge_density_direct: n_reps must be >= 1");

    const double proposal_mean = 2.0 * d * u;  // Pois(2du) proposals per endpoint
    int32_t endpoints[2][kMaxDim];
    std::memset(endpoints, 0, sizeof(endpoints));
    endpoints[1][0] = 1;

    int64_t traversed = 0;
    for (int64_t rep = 0; rep < n_reps; ++rep) {
        RngStream s = rng.child(uint64_t(rep));
        bool hit = false;
        for (int side = 0; side < 2 && !hit; ++side) {
            RngStream es = s.child(uint64_t(side));
            int64_t proposals = es.poisson(proposal_mean);
            for (int64_t k = 0; k < proposals && !hit; ++k) {
                // Accepting with probability Es_{0,x1}(endpoint) turns the
                // proposal rate into the equilibrium rate 2du*Es, and an
                // accepted proposal launches a fresh unconditioned fiber.
                if (!avoids_pair(es, endpoints[side], d, T)) continue;
                if (traverses_e1(es, endpoints[side], d, T)) hit = true;
            }
        }
        traversed += hit ? 1 : 0;
    }

    EstimateWithError est;
    est.n_samples = n_reps;
    est.value = double(traversed) / double(n_reps);
    est.stderr_ = n_reps > 1 ? std::sqrt(est.value * (1.0 - est.value) / double(n_reps - 1)) : 0.0;
    return est;
}

BernoulliCoupling bernoulli_coupling(double u, double T, double p_c) {
    if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("bernoulli_coupling: u must be finite and > 0");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("bernoulli_coupling: T must be finite and > 0");
    if (!(p_c > 0.0) || !(p_c < 1.0)) throw std::invalid_argument("bernoulli_coupling: p_c must lie in (0,1)");
    const double rate = u * T / ((T + 1.0) * (T + 1.0));
    BernoulliCoupling out;
    out.density = -std::expm1(-2.0 * rate);
    out.supercritical = rate >= -0.5 * std::log1p(-p_c);
    return out;
}

CoupledSample sample_coupled_good_edges(const FriConfig& config, RngStream& rng) {
    if (config.mode != SamplerMode::padded_direct)
        throw std::invalid_argument("sample_coupled_good_edges: requires padded-direct mode");
    FriConfig cfg = config;
    cfg.record_first_jumps = true;
    CoupledSample out;
    out.fri = sample_fri_box_padded(cfg, rng);
    out.good = *out.fri.first_jump_edges;
    return out;
}

}  // namespace fri
