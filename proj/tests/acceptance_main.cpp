/*
 * End-to-end acceptance gate.  Nine independent criteria, one line of output
 * each ("criterion N (<name>): PASS|FAIL - measurements"); the exit status is
 * the number of failed criteria.  Every tolerance is stated in the line so a
 * failure is diagnosable from the log alone.
 *
 * The statistical criteria run at fixed master seeds, so each verdict is
 * reproducible bit for bit; tolerances (3-4 sigma) are wide enough that a
 * correct implementation passes for all but a vanishing fraction of seeds.
 */
#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fri/cli.hpp"
#include "fri/cluster.hpp"
#include "fri/edge_density.hpp"
#include "fri/phase.hpp"
#include "fri/sampler.hpp"
#include "fri/walk.hpp"

using namespace fri;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("criterion %d (%s): %s - %s\n", idx, name.c_str(), ok ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

/* ---------------- criterion 1: sampler cross-validation ---------------- */

void criterion_sampler_agreement() {
    const Box box = Box::cube(3, 0, 5);
    const EdgeId central = canonical_edge(Point::of({2, 2, 2}), Point::of({3, 2, 2}));
    const int64_t n = 100000;
    bool ok = true;
    double worst_z = 0.0;
    std::string detail;

    int combo = 0;
    for (double u : {0.2, 0.5})
        for (double T : {1.0, 2.0, 5.0}) {
            double p[2], se[2];
            for (int m = 0; m < 2; ++m) {
                FriConfig c;
                c.d = 3;
                c.u = u;
                c.T = T;
                c.box = box;
                c.mode = m == 0 ? SamplerMode::exact_boundary : SamplerMode::padded_direct;
                c.master_seed = 1100;
                int64_t hits = run_replicates<int64_t>(
                    c, n,
                    [&](const FriSample& s, int64_t) { return s.edges.test(central) ? 1 : 0; },
                    int64_t(0), [](int64_t a, int64_t b) { return a + b; }, 1,
                    StreamPurpose::replicate, uint64_t(combo * 2 + m));
                p[m] = double(hits) / double(n);
                se[m] = std::sqrt(p[m] * (1.0 - p[m]) / double(n));
            }
            double z = std::abs(p[0] - p[1]) / std::sqrt(se[0] * se[0] + se[1] * se[1]);
            worst_z = std::max(worst_z, z);
            if (z >= 3.0) {
                ok = false;
                detail += " (u=" + fmt(u) + ",T=" + fmt(T) + "): exact=" + fmt(p[0]) +
                          " padded=" + fmt(p[1]) + " z=" + fmt(z) + ";";
            }
            ++combo;
        }
    report(1, "sampler cross-validation", ok,
           "central-edge occupancy, 6 (u,T) points x 2 samplers x 1e5 reps on [0,5]^3; "
           "worst |z| = " + fmt(worst_z) + " (limit 3)" + detail);
}

/* ---------------- criterion 2: edge-density non-monotonicity ---------------- */

void criterion_non_monotonicity() {
    const int64_t n = 1000000;
    RngStream r50 = RngStream::derive(1200, {StreamPurpose::walk_estimator, 50, 0});
    EdgeDensityInputs in50 = estimate_inputs(r50, 3, 50.0, n);
    RngStream r500 = RngStream::derive(1200, {StreamPurpose::walk_estimator, 500, 0});
    EdgeDensityInputs in500 = estimate_inputs(r500, 3, 500.0, n);

    ClosedFormResult p50 = closed_form(in50, 3, 1.0 / 6.0, 50.0);
    ClosedFormResult p500 = closed_form(in500, 3, 1.0 / 6.0, 500.0);
    double gap = p50.p - p500.p;
    double sigma = std::sqrt(p50.p_stderr * p50.p_stderr + p500.p_stderr * p500.p_stderr);
    double z = gap / sigma;

    const double lo = 0.5 * 1.7e-3, hi = 2.0 * 1.7e-3;
    bool ok = gap > 0.0 && z >= 4.0 && gap >= lo && gap <= hi;
    report(2, "edge-density non-monotonicity", ok,
           "p(T=50)=" + fmt(p50.p, 6) + " p(T=500)=" + fmt(p500.p, 6) + " gap=" + fmt(gap, 4) +
           " (" + fmt(z, 3) + " sigma, need >= 4) inside [" + fmt(lo, 3) + ", " + fmt(hi, 3) +
           "] at 1e6 input walks");
}

/* ---------------- criterion 3: derivative limit and signs ---------------- */

void criterion_derivative() {
    bool ok = true;
    std::string detail = "T->0 limit vs 1/(2d):";
    for (int d : {3, 4, 5}) {
        RngStream rng =
            RngStream::derive(1300, {StreamPurpose::walk_estimator, uint64_t(d), 0});
        double deriv = fg_derivative(estimate_inputs(rng, d, 1e-3, 100000), d, 1e-3);
        double target = 1.0 / (2.0 * d);
        bool within = std::abs(deriv - target) < 0.1 * target;
        ok = ok && within;
        detail += " d=" + std::to_string(d) + ":" + fmt(deriv, 4) + (within ? "" : "(off)");
    }

    detail += "; signs:";
    for (int d : {3, 4}) {
        RngStream rng =
            RngStream::derive(1301, {StreamPurpose::walk_estimator, uint64_t(d), 0});
        double deriv = fg_derivative(estimate_inputs(rng, d, 500.0, 100000), d, 500.0);
        bool neg = deriv < 0.0;
        ok = ok && neg;
        detail += " (d=" + std::to_string(d) + ",T=500):" + std::string(neg ? "-" : "+!");
    }
    for (double T : {0.5, 5.0, 50.0, 500.0}) {
        RngStream rng =
            RngStream::derive(1302, {StreamPurpose::walk_estimator, uint64_t(T * 2), 0});
        double deriv = fg_derivative(estimate_inputs(rng, 20, T, 30000), 20, T);
        bool pos = deriv > 0.0;
        ok = ok && pos;
        detail += " (d=20,T=" + fmt(T) + "):" + std::string(pos ? "+" : "-!");
    }
    report(3, "derivative limit and signs", ok, detail);
}

/* ---------------- criterion 4: good-edge coupling ---------------- */

void criterion_coupling() {
    FriConfig c;
    c.d = 3;
    c.u = 1.0;
    c.T = 1.0;
    c.box = Box::cube(3, 0, 19);  // 20^3 vertices
    c.mode = SamplerMode::padded_direct;
    c.master_seed = 1400;

    const int64_t reps = 10000;
    int64_t valid_slots = 0;
    {
        EdgeSet probe(c.box, false);
        for (int64_t s = 0; s < probe.slot_count(); ++s)
            if (probe.valid_slot(s)) ++valid_slots;
    }

    int64_t good_total = 0, violations = 0;
    for (int64_t r = 0; r < reps; ++r) {
        RngStream rng = RngStream::derive(c.master_seed, {StreamPurpose::coupling, 0, uint64_t(r)});
        CoupledSample cs = sample_coupled_good_edges(c, rng);
        good_total += cs.good.occupied_count();
        cs.good.for_each_occupied([&](int64_t slot) {
            if (!cs.fri.edges.test_slot(slot)) ++violations;
        });
    }

    double want = bernoulli_coupling(c.u, c.T).density;  // 1 - exp(-1/2)
    double n = double(valid_slots) * double(reps);
    double got = double(good_total) / n;
    double z = std::abs(got - want) / std::sqrt(want * (1.0 - want) / n);
    bool ok = z < 3.0 && violations == 0;
    report(4, "good-edge coupling", ok,
           "density " + fmt(got, 6) + " vs " + fmt(want, 6) + " (z=" + fmt(z, 3) +
           ", limit 3) over 1e4 reps of [0,19]^3 at (u,T)=(1,1); subset violations " +
           std::to_string(violations) + "/" + std::to_string(reps));
}

/* ---------------- criteria 5 and 6: sweep-based phase checks ---------------- */

std::vector<PhasePoint> run_reference_sweep() {
    SweepGrid grid;
    grid.u_min = grid.u_max = 1.0 / 6.0;
    grid.du = 0.1;
    grid.T_min = 1.0;
    grid.T_max = 3.0;
    grid.dT = 0.2;
    grid.N = 50;
    grid.reps = 20;

    FriConfig base;
    base.d = 3;
    base.u = grid.u_min;
    base.T = grid.T_min;
    base.box = Box::cube(3, 0, 1);  // overridden by the grid
    base.mode = SamplerMode::padded_direct;
    base.master_seed = 1500;
    return sweep(grid, base, 1);
}

void criterion_phase_transition(const std::vector<PhasePoint>& rows) {
    const double span = std::sqrt(3.0) * 50.0;
    const PhasePoint& cold = rows[2];  // T = 1.4
    const PhasePoint& hot = rows[6];   // T = 2.2
    bool hot_ok = hot.mean_largest_diam > 0.8 * span;
    bool cold_ok = cold.mean_largest_diam < 0.3 * span;
    report(5, "phase transition thresholds", hot_ok && cold_ok,
           "mean largest diameter at u=1/6, N=50, 20 reps: T=2.2 -> " +
           fmt(hot.mean_largest_diam, 5) + " (need > " + fmt(0.8 * span, 5) + ": " +
           (hot_ok ? "ok" : "violated") + "), T=1.4 -> " + fmt(cold.mean_largest_diam, 5) +
           " (need < " + fmt(0.3 * span, 5) + ": " + (cold_ok ? "ok" : "violated") + ")");
}

void criterion_second_largest(const std::vector<PhasePoint>& rows) {
    size_t peak = 0;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].mean_second_size > rows[peak].mean_second_size) peak = i;
    bool interior = peak > 0 && peak + 1 < rows.size();
    const PhasePoint& hot = rows[6];  // T = 2.2
    double ratio = hot.mean_second_size / hot.mean_largest_size;
    bool small_at_hot = ratio < 0.25;
    report(6, "second-largest peak", interior && small_at_hot,
           "second-largest mean size peaks at T=" + fmt(rows[peak].T) + " (" +
           fmt(rows[peak].mean_second_size, 5) + ", interior: " + (interior ? "yes" : "no") +
           "); at T=2.2 second/largest = " + fmt(hot.mean_second_size, 5) + "/" +
           fmt(hot.mean_largest_size, 6) + " = " + fmt(100.0 * ratio, 3) + "% (need < 25%)");
}

/* ---------------- criterion 7: boundary climb regression ---------------- */

bool staircase_invariant(const ClimbPath& path) {
    for (size_t i = 1; i < path.steps.size(); ++i) {
        if (path.steps[i].u > path.steps[i - 1].u + 1e-12) return false;
        if (path.steps[i].T < path.steps[i - 1].T - 1e-12) return false;
    }
    return true;
}

void criterion_climb() {
    ClimbConfig full;
    full.N = 50;
    full.u0 = 3.0;
    full.T0 = 0.01;
    full.du = 0.01;
    full.dT = 0.01;
    full.eps = 0.2;
    full.T_cap = 20.0;

    FriConfig base;
    base.d = 3;
    base.u = 1.0;
    base.T = 1.0;
    base.box = Box::cube(3, 0, 1);  // overridden by the climb
    base.mode = SamplerMode::padded_direct;
    base.master_seed = 1700;

    ClimbPath path = hill_climb(full, base);
    bool stairs = staircase_invariant(path);
    RegressionResult fit = fit_loglog(path.marks);
    bool slope_ok = fit.slope >= -1.2 && fit.slope <= -0.6;

    ClimbConfig reduced = full;
    reduced.N = 30;
    reduced.du = 0.05;
    reduced.dT = 0.05;
    FriConfig rbase = base;
    rbase.master_seed = 1701;
    ClimbPath rpath = hill_climb(reduced, rbase);
    bool rstairs = staircase_invariant(rpath);
    RegressionResult rfit = fit_loglog(rpath.marks);
    bool rslope_ok = rfit.slope >= -1.3 && rfit.slope <= -0.5;

    bool ok = stairs && slope_ok && rstairs && rslope_ok;
    report(7, "boundary climb regression", ok,
           "N=50 step 0.01: " + std::to_string(path.steps.size()) + " steps, " +
           std::to_string(path.marks.size()) + " marks, slope " + fmt(fit.slope, 4) + " (r2 " +
           fmt(fit.r2, 3) + ", band [-1.2,-0.6]), staircase " + (stairs ? "ok" : "violated") +
           (path.truncated ? ", ended at T cap" : ", ended at u=0") + "; N=30 step 0.05: slope " +
           fmt(rfit.slope, 4) + " (band [-1.3,-0.5]), staircase " + (rstairs ? "ok" : "violated"));
}

/* ---------------- criterion 8: oracle equivalence ---------------- */

std::vector<std::set<int64_t>> bfs_components(const EdgeSet& es) {
    std::map<int64_t, std::vector<int64_t>> adj;
    const Box& box = es.box();
    es.for_each_occupied([&](int64_t slot) {
        EdgeId e = es.edge_at(slot);
        int64_t a = box.index_of(e.base);
        int64_t b = box.index_of(e.base.moved(e.axis, +1));
        adj[a].push_back(b);
        adj[b].push_back(a);
    });
    std::vector<std::set<int64_t>> comps;
    std::set<int64_t> seen;
    for (const auto& [v, _] : adj) {
        if (seen.count(v)) continue;
        std::set<int64_t> comp;
        std::queue<int64_t> q;
        q.push(v);
        seen.insert(v);
        while (!q.empty()) {
            int64_t x = q.front();
            q.pop();
            comp.insert(x);
            for (int64_t y : adj[x])
                if (seen.insert(y).second) q.push(y);
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

void criterion_oracles() {
    // Union-find vs breadth-first search on 200 random edge sets.
    int partition_mismatches = 0;
    RngStream rng = RngStream::derive(1800, {StreamPurpose::replicate, 0, 0});
    for (int trial = 0; trial < 200; ++trial) {
        int side = 3 + int(rng.below(8));
        Box box = Box::cube(3, 0, int32_t(side - 1));
        EdgeSet es(box, false);
        int64_t n_edges = int64_t(rng.below(uint32_t(3 * side * side)));
        for (int64_t k = 0; k < n_edges; ++k) {
            Point p = Point::of({int32_t(rng.below(uint32_t(side))),
                                 int32_t(rng.below(uint32_t(side))),
                                 int32_t(rng.below(uint32_t(side)))});
            int axis = 1 + int(rng.below(3));
            if (p.c[axis - 1] + 1 >= side) continue;
            es.insert_slot(es.slot_of(canonical_edge(p, p.moved(axis, +1))));
        }
        ComponentLabeling lab = connected_components(es);
        std::map<int32_t, std::set<int64_t>> mine;
        for (size_t i = 0; i < lab.vertices.size(); ++i)
            mine[lab.label[i]].insert(lab.vertices[i]);
        std::set<std::set<int64_t>> a, b;
        for (auto& [_, s] : mine) a.insert(s);
        for (auto& s : bfs_components(es)) b.insert(s);
        if (a != b) ++partition_mismatches;
    }

    // Closed form vs direct realization across the 3x3 (u,T) grid.
    double worst_z = 0.0;
    int grid_failures = 0;
    const std::vector<double> us{1.0 / 6.0, 0.2, 0.5};
    const std::vector<double> Ts{1.0, 2.0, 5.0};
    for (size_t ti = 0; ti < Ts.size(); ++ti) {
        RngStream ri = RngStream::derive(1801, {StreamPurpose::walk_estimator, ti, 0});
        EdgeDensityInputs inputs = estimate_inputs(ri, 3, Ts[ti], 200000);
        for (size_t ui = 0; ui < us.size(); ++ui) {
            ClosedFormResult closed = closed_form(inputs, 3, us[ui], Ts[ti]);
            RngStream rd =
                RngStream::derive(1801, {StreamPurpose::direct_edge, ti * 3 + ui, 0});
            EstimateWithError direct = edge_density_direct(rd, 3, us[ui], Ts[ti], 50000);
            double z = std::abs(closed.p - direct.value) /
                       std::sqrt(closed.p_stderr * closed.p_stderr + direct.stderr_ * direct.stderr_);
            worst_z = std::max(worst_z, z);
            if (z >= 3.0) ++grid_failures;
        }
    }

    bool ok = partition_mismatches == 0 && grid_failures == 0;
    report(8, "oracle equivalence", ok,
           "component partitions: " + std::to_string(200 - partition_mismatches) +
           "/200 identical; closed vs direct on 3x3 (u,T) grid: worst |z| = " + fmt(worst_z, 3) +
           " (limit 3), " + std::to_string(grid_failures) + " points out of band");
}

/* ---------------- criterion 9: determinism ---------------- */

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void criterion_determinism() {
    fs::path root = fs::temp_directory_path() / ("fri_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);

    auto run_into = [&](const std::string& tag, const std::string& command, int workers,
                        int64_t reps, int32_t N, uint64_t seed) {
        fs::path dir = root / tag;
        fs::create_directories(dir);
        cli::RunConfig c;
        c.command = command;
        c.d = 3;
        c.u = 1.0 / 6.0;
        c.T = 2.0;
        c.N = N;
        c.seed = seed;
        c.workers = workers;
        c.reps = reps;
        c.out = dir.string();
        c.mode = "padded-direct";
        c.T_min = 1.0;
        c.T_max = 3.0;
        c.T_step = 0.2;
        c.svg = false;
        // The CLI chats on stdout; keep this binary's output to one line per
        // criterion by parking stdout on /dev/null around the call.
        std::fflush(stdout);
        int saved = ::dup(1);
        int sink = ::open("/dev/null", O_WRONLY);
        ::dup2(sink, 1);
        cli::execute(c);
        std::fflush(stdout);
        ::dup2(saved, 1);
        ::close(sink);
        ::close(saved);
        return dir;
    };

    // The criterion-5 sweep, rerun through the CLI with 1 and 4 workers.
    fs::path s1 = run_into("sweep_w1", "sweep", 1, 20, 50, 1500);
    fs::path s4 = run_into("sweep_w4", "sweep", 4, 20, 50, 1500);
    std::string sweep1 = slurp(s1 / "sweep.csv");
    std::string sweep4 = slurp(s4 / "sweep.csv");
    bool sweep_ok = !sweep1.empty() && sweep1 == sweep4;

    // Cluster statistics, 1 vs 3 workers.
    fs::path c1 = run_into("clusters_w1", "clusters", 1, 50, 20, 1900);
    fs::path c3 = run_into("clusters_w3", "clusters", 3, 50, 20, 1900);
    std::string clusters1 = slurp(c1 / "clusters.csv");
    std::string clusters3 = slurp(c3 / "clusters.csv");
    bool clusters_ok = !clusters1.empty() && clusters1 == clusters3;

    fs::remove_all(root);
    report(9, "determinism", sweep_ok && clusters_ok,
           "sweep.csv (N=50, 20 reps) workers 1 vs 4: " +
           std::string(sweep_ok ? "byte-identical" : "DIFFER") + " (" +
           std::to_string(sweep1.size()) + " bytes); clusters.csv (N=20, 50 reps) workers 1 vs 3: " +
           std::string(clusters_ok ? "byte-identical" : "DIFFER") + " (" +
           std::to_string(clusters1.size()) + " bytes)");
}

}  // namespace

int main() {
    criterion_sampler_agreement();
    criterion_non_monotonicity();
    criterion_derivative();
    criterion_coupling();
    std::vector<PhasePoint> rows = run_reference_sweep();
    criterion_phase_transition(rows);
    criterion_second_largest(rows);
    criterion_climb();
    criterion_oracles();
    criterion_determinism();
    std::printf("%d/9 criteria passed\n", 9 - g_failures);
    return g_failures;
}
