/*
 * Grid sweep, boundary staircase, and the log-log boundary fit.
 */
#include "fri/phase.hpp"

#include <cmath>
#include <stdexcept>

#include "fri/cluster.hpp"

namespace fri {

namespace {

int64_t axis_count(double lo, double hi, double step) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || hi < lo)
        throw std::invalid_argument("sweep grid: empty or non-finite axis range");
    if (hi == lo) return 1;
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("sweep grid: step must be positive on a non-degenerate axis");
    return int64_t(std::floor((hi - lo) / step + 0.5)) + 1;
}

std::array<double, 4> cluster_summary(const FriSample& sample) {
    ClusterReport report = cluster_report(sample.edges);
    std::array<double, 4> out{0.0, 0.0, 0.0, 0.0};
    if (report.largest) {
        out[0] = double(report.largest->size_vertices);
        out[1] = report.largest->bbox_diameter;
    }
    if (report.second) {
        out[2] = double(report.second->size_vertices);
        out[3] = report.second->bbox_diameter;
    }
    return out;
}

}  // namespace

std::vector<PhasePoint> sweep(const SweepGrid& grid, const FriConfig& base, int workers) {
    const int64_t nu = axis_count(grid.u_min, grid.u_max, grid.du);
    const int64_t nT = axis_count(grid.T_min, grid.T_max, grid.dT);
    if (grid.N < 1) throw std::invalid_argument("sweep grid: N must be >= 1");
    if (grid.reps < 1) throw std::invalid_argument("sweep grid: reps must be >= 1");
    if (!(grid.u_min > 0.0)) throw std::invalid_argument("sweep grid: u_min must be positive");
    if (!(grid.T_min > 0.0)) throw std::invalid_argument("sweep grid: T_min must be positive");

    FriConfig cfg = base;
    cfg.box = Box::cube(base.d, 0, grid.N);
    double vertices = std::pow(double(grid.N) + 1.0, double(base.d));
    double cost = double(nu) * double(nT) * double(grid.reps) * vertices;
    if (cost > double(grid.budget))
        throw std::runtime_error("sweep: grid of " + std::to_string(nu * nT) + " points x " +
                                 std::to_string(grid.reps) + " reps on a " +
                                 std::to_string(int64_t(vertices)) +
                                 "-vertex box exceeds the step budget of " +
                                 std::to_string(grid.budget));

    std::vector<PhasePoint> rows;
    rows.reserve(size_t(nu * nT));
    for (int64_t iu = 0; iu < nu; ++iu) {
        for (int64_t iT = 0; iT < nT; ++iT) {
            cfg.u = grid.u_min + double(iu) * grid.du;
            cfg.T = grid.T_min + double(iT) * grid.dT;
            const uint64_t point_key = uint64_t(iu) * uint64_t(nT) + uint64_t(iT);
            auto sums = run_replicates<std::array<double, 4>>(
                cfg, grid.reps,
                [](const FriSample& s, int64_t) { return cluster_summary(s); },
                std::array<double, 4>{0.0, 0.0, 0.0, 0.0},
                [](std::array<double, 4> acc, const std::array<double, 4>& x) {
                    for (int i = 0; i < 4; ++i) acc[i] += x[i];
                    return acc;
                },
                workers, StreamPurpose::sweep_point, point_key);
            PhasePoint row;
            row.u = cfg.u;
            row.T = cfg.T;
            row.reps = grid.reps;
            row.mean_largest_size = sums[0] / double(grid.reps);
            row.mean_largest_diam = sums[1] / double(grid.reps);
            row.mean_second_size = sums[2] / double(grid.reps);
            row.mean_second_diam = sums[3] / double(grid.reps);
            rows.push_back(row);
        }
    }
    return rows;
}

ClimbPath hill_climb(const ClimbConfig& cc, const FriConfig& base, const DiameterOracle& oracle) {
    if (cc.N < 1) throw std::invalid_argument("hill_climb: N must be >= 1");
    if (!(cc.eps > 0.0) || cc.eps > 1.0 / std::sqrt(3.0) + 1e-12)
        throw std::invalid_argument("hill_climb: eps must lie in (0, 1/sqrt(3)]");
    if (!(cc.u0 > 0.0) || !(cc.T0 > 0.0))
        throw std::invalid_argument("hill_climb: u0 and T0 must be positive");
    if (!(cc.du > 0.0) || !(cc.dT > 0.0))
        throw std::invalid_argument("hill_climb: du and dT must be positive");
    if (!(cc.T_cap >= cc.T0)) throw std::invalid_argument("hill_climb: T_cap must be >= T0");
    if (cc.reps_per_step < 1) throw std::invalid_argument("hill_climb: reps_per_step must be >= 1");

    FriConfig cfg = base;
    cfg.box = Box::cube(base.d, 0, cc.N);

    DiameterOracle measure = oracle;
    if (!measure) {
        measure = [&cfg, &cc](double u, double T, int64_t step) {
            // An exactly-zero intensity produces no fibers; skip the sampler,
            // whose contract requires u > 0.
            if (u <= 0.0) return 0.0;
            FriConfig local = cfg;
            local.u = u;
            local.T = T;
            double total = 0.0;
            for (int64_t r = 0; r < cc.reps_per_step; ++r) {
                RngStream stream = RngStream::derive(
                    local.master_seed,
                    StreamKey{StreamPurpose::climb_step, uint64_t(step), uint64_t(r)});
                FriSample sample = sample_fri(local, stream);
                ClusterReport report = cluster_report(sample.edges);
                total += report.largest ? report.largest->bbox_diameter : 0.0;
            }
            return total / double(cc.reps_per_step);
        };
    }

    ClimbPath path;
    path.threshold = std::sqrt(3.0) * cc.eps * double(cc.N);
    int64_t down = 0, up = 0;  // u and T are recomputed from counters each
                               // step so no rounding drift accumulates
    for (int64_t step = 0; step < cc.max_steps; ++step) {
        const double u = cc.u0 - double(down) * cc.du;
        const double T = cc.T0 + double(up) * cc.dT;
        if (u < 0.0) break;  // stepped past zero intensity: boundary fully traced
        if (T > cc.T_cap) {
            path.truncated = true;
            break;
        }
        ClimbStep node;
        node.step = step;
        node.u = u;
        node.T = T;
        node.diameter = measure(u, T, step);
        node.supercritical = node.diameter >= path.threshold;
        if (node.supercritical) {
            path.marks.emplace_back(u, T);
            ++down;
        } else {
            ++up;
        }
        path.steps.push_back(node);
        if (int64_t(path.steps.size()) == cc.max_steps) path.truncated = true;
    }
    return path;
}

RegressionResult fit_loglog(const std::vector<std::pair<double, double>>& uT_points) {
    if (uT_points.size() < 2)
        throw std::invalid_argument("fit_loglog: need at least 2 points");
    double sx = 0.0, sy = 0.0;
    const double n = double(uT_points.size());
    for (const auto& [u, T] : uT_points) {
        if (!(u > 0.0) || !(T > 0.0) || !std::isfinite(u) || !std::isfinite(T))
            throw std::invalid_argument("fit_loglog: coordinates must be positive and finite");
        sx += std::log(u);
        sy += std::log(T);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [u, T] : uT_points) {
        const double dx = std::log(u) - mx, dy = std::log(T) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("fit_loglog: all u equal; slope is undefined");
    RegressionResult r;
    r.n_points = int64_t(uT_points.size());
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    // Zero total variation means the fit is exact by construction.
    r.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return r;
}

}  // namespace fri
