/*
 * Config parsing, command dispatch, CSV emission, and the run manifest.
 */
#include "fri/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fri/cluster.hpp"
#include "fri/edge_density.hpp"
#include "fri/phase.hpp"
#include "fri/sampler.hpp"
#include "svg.hpp"

namespace fri::cli {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 16);
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_i64(const std::string& s, int64_t& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc{} && res.ptr == e;
}

bool parse_u64(const std::string& s, uint64_t& out) {
    const char* b = s.data();
    const char* e = b + s.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc{} && res.ptr == e;
}

bool parse_f64(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) return false;
    out = v;
    return true;
}

bool parse_bool01(const std::string& s, bool& out) {
    if (s == "0") { out = false; return true; }
    if (s == "1") { out = true; return true; }
    return false;
}

bool valid_command(const std::string& c) {
    return c == "sample" || c == "clusters" || c == "edge-density" || c == "sweep" ||
           c == "climb" || c == "capacity";
}

}  // namespace

ParseOutcome parse_config(const std::string& text,
                          const std::map<std::string, std::string>& overrides) {
    ParseOutcome out;
    std::map<std::string, std::string> kv;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            out.errors.push_back("line " + std::to_string(lineno) + ": expected key=value, got '" + t + "'");
            continue;
        }
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    for (const auto& [k, v] : overrides) kv[k] = v;

    RunConfig c;
    if (auto it = kv.find("command"); it != kv.end()) c.command = it->second;
    if (!valid_command(c.command))
        out.errors.push_back("command must be one of sample|clusters|edge-density|sweep|climb|capacity");

    // Per-command defaults for keys the user left unset.
    if (c.command == "clusters") c.reps = 100;
    else if (c.command == "edge-density") c.reps = 20000;
    else if (c.command == "sweep") c.reps = 20;
    else if (c.command == "capacity") { c.reps = 10000; c.N = 2; }

    bool have_u_min = kv.count("u_min") > 0, have_u_max = kv.count("u_max") > 0;

    for (const auto& [key, value] : kv) {
        bool ok = true;
        int64_t i = 0;
        if (key == "command") continue;
        else if (key == "d") { ok = parse_i64(value, i); if (ok) c.d = int(i); }
        else if (key == "u") ok = parse_f64(value, c.u);
        else if (key == "T") ok = parse_f64(value, c.T);
        else if (key == "N") { ok = parse_i64(value, i); if (ok) c.N = int32_t(i); }
        else if (key == "seed") ok = parse_u64(value, c.seed);
        else if (key == "workers") { ok = parse_i64(value, i); if (ok) c.workers = int(i); }
        else if (key == "reps") ok = parse_i64(value, c.reps);
        else if (key == "out") { c.out = value; if (value.empty()) ok = false; }
        else if (key == "mode") c.mode = value;
        else if (key == "padding_tol") ok = parse_f64(value, c.padding_tol);
        else if (key == "method") c.method = value;
        else if (key == "n_inputs") ok = parse_i64(value, c.n_inputs);
        else if (key == "u_min") ok = parse_f64(value, c.u_min);
        else if (key == "u_max") ok = parse_f64(value, c.u_max);
        else if (key == "u_step") ok = parse_f64(value, c.u_step);
        else if (key == "T_min") ok = parse_f64(value, c.T_min);
        else if (key == "T_max") ok = parse_f64(value, c.T_max);
        else if (key == "T_step") ok = parse_f64(value, c.T_step);
        else if (key == "budget") ok = parse_i64(value, c.budget);
        else if (key == "svg") ok = parse_bool01(value, c.svg);
        else if (key == "climb_u0") ok = parse_f64(value, c.climb_u0);
        else if (key == "climb_T0") ok = parse_f64(value, c.climb_T0);
        else if (key == "climb_du") ok = parse_f64(value, c.climb_du);
        else if (key == "climb_dT") ok = parse_f64(value, c.climb_dT);
        else if (key == "climb_eps") ok = parse_f64(value, c.climb_eps);
        else if (key == "climb_T_cap") ok = parse_f64(value, c.climb_T_cap);
        else if (key == "climb_reps") ok = parse_i64(value, c.climb_reps);
        else {
            out.errors.push_back("unknown key '" + key + "'");
            continue;
        }
        if (!ok) out.errors.push_back("invalid value for key '" + key + "': '" + value + "'");
    }

    // A bare `u` narrows the sweep to a single intensity unless the grid
    // keys say otherwise.
    if (!have_u_min) c.u_min = c.u;
    if (!have_u_max) c.u_max = c.u;

    auto fail = [&](const std::string& msg) { out.errors.push_back(msg); };
    if (c.d < 3 || c.d > kMaxDim) fail("d must be in [3, " + std::to_string(kMaxDim) + "]");
    if (!(c.u > 0.0)) fail("u must be positive");
    if (!(c.T > 0.0)) fail("T must be positive");
    if (c.N < 1) fail("N must be >= 1");
    if (c.workers < 0) fail("workers must be >= 0");
    if (c.reps < 1) fail("reps must be >= 1");
    if (c.mode != "exact-boundary" && c.mode != "padded-direct")
        fail("mode must be exact-boundary or padded-direct");
    if (!(c.padding_tol > 0.0 && c.padding_tol < 1.0)) fail("padding_tol must lie in (0,1)");
    if (c.method != "closed" && c.method != "direct" && c.method != "both")
        fail("method must be closed, direct, or both");
    if (c.n_inputs < 1) fail("n_inputs must be >= 1");
    if (!(c.u_min > 0.0)) fail("u_min must be positive");
    if (!(c.u_max >= c.u_min)) fail("u grid requires u_min <= u_max");
    if (!(c.u_step > 0.0)) fail("u_step must be positive");
    if (!(c.T_min > 0.0)) fail("T_min must be positive");
    if (!(c.T_max >= c.T_min)) fail("T grid requires T_min <= T_max");
    if (!(c.T_step > 0.0)) fail("T_step must be positive");
    if (c.budget < 1) fail("budget must be >= 1");
    if (!(c.climb_u0 > 0.0)) fail("climb_u0 must be positive");
    if (!(c.climb_T0 > 0.0)) fail("climb_T0 must be positive");
    if (!(c.climb_du > 0.0)) fail("climb_du must be positive");
    if (!(c.climb_dT > 0.0)) fail("climb_dT must be positive");
    if (!(c.climb_eps > 0.0 && c.climb_eps <= 1.0 / std::sqrt(3.0) + 1e-12))
        fail("climb_eps must lie in (0, 1/sqrt(3)]");
    if (!(c.climb_T_cap >= c.climb_T0)) fail("climb_T_cap must be >= climb_T0");
    if (c.climb_reps < 1) fail("climb_reps must be >= 1");

    if (out.errors.empty()) out.config = c;
    return out;
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream os;
    os << "command=" << c.command << "\n"
       << "d=" << c.d << "\n"
       << "u=" << fmt_double(c.u) << "\n"
       << "T=" << fmt_double(c.T) << "\n"
       << "N=" << c.N << "\n"
       << "seed=" << c.seed << "\n"
       << "workers=" << c.workers << "\n"
       << "reps=" << c.reps << "\n"
       << "out=" << c.out << "\n"
       << "mode=" << c.mode << "\n"
       << "padding_tol=" << fmt_double(c.padding_tol) << "\n"
       << "method=" << c.method << "\n"
       << "n_inputs=" << c.n_inputs << "\n"
       << "u_min=" << fmt_double(c.u_min) << "\n"
       << "u_max=" << fmt_double(c.u_max) << "\n"
       << "u_step=" << fmt_double(c.u_step) << "\n"
       << "T_min=" << fmt_double(c.T_min) << "\n"
       << "T_max=" << fmt_double(c.T_max) << "\n"
       << "T_step=" << fmt_double(c.T_step) << "\n"
       << "budget=" << c.budget << "\n"
       << "svg=" << (c.svg ? 1 : 0) << "\n"
       << "climb_u0=" << fmt_double(c.climb_u0) << "\n"
       << "climb_T0=" << fmt_double(c.climb_T0) << "\n"
       << "climb_du=" << fmt_double(c.climb_du) << "\n"
       << "climb_dT=" << fmt_double(c.climb_dT) << "\n"
       << "climb_eps=" << fmt_double(c.climb_eps) << "\n"
       << "climb_T_cap=" << fmt_double(c.climb_T_cap) << "\n"
       << "climb_reps=" << c.climb_reps << "\n";
    return os.str();
}

namespace {

struct OutputFile {
    std::string name;
    std::string content;
};

void write_atomic(const std::string& dir, const std::string& name, const std::string& content) {
    std::string path = dir + "/" + name;
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f.write(content.data(), std::streamsize(content.size()));
        if (!f) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

FriConfig make_fri_config(const RunConfig& c) {
    FriConfig fc;
    fc.d = c.d;
    fc.u = c.u;
    fc.T = c.T;
    fc.box = Box::cube(c.d, 0, c.N);
    fc.mode = c.mode == "padded-direct" ? SamplerMode::padded_direct : SamplerMode::exact_boundary;
    fc.padding_tol = c.padding_tol;
    fc.master_seed = c.seed;
    return fc;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

struct ClusterRow {
    int64_t rep = 0;
    int64_t fibers = 0, edges = 0;
    int32_t comps = 0;
    int64_t l_size = 0, l_edges = 0;
    double l_diam = 0.0;
    int64_t s_size = 0, s_edges = 0;
    double s_diam = 0.0;
    bool trunc = false;
};

struct ClusterRun {
    std::vector<ClusterRow> rows;
    bool trunc = false;
};

ClusterRun run_cluster_reps(const RunConfig& c, int workers) {
    FriConfig fc = make_fri_config(c);
    return run_replicates<ClusterRun>(
        fc, c.reps,
        [](const FriSample& s, int64_t r) {
            ClusterRow row;
            row.rep = r;
            row.fibers = s.fiber_count;
            row.edges = s.edges.occupied_count();
            row.trunc = s.truncation_over_budget;
            ClusterReport rep = cluster_report(s.edges);
            row.comps = rep.component_count;
            if (rep.largest) {
                row.l_size = rep.largest->size_vertices;
                row.l_edges = rep.largest->size_edges;
                row.l_diam = rep.largest->bbox_diameter;
            }
            if (rep.second) {
                row.s_size = rep.second->size_vertices;
                row.s_edges = rep.second->size_edges;
                row.s_diam = rep.second->bbox_diameter;
            }
            ClusterRun one;
            one.rows.push_back(row);
            one.trunc = row.trunc;
            return one;
        },
        ClusterRun{},
        [](ClusterRun acc, const ClusterRun& x) {
            acc.rows.insert(acc.rows.end(), x.rows.begin(), x.rows.end());
            acc.trunc = acc.trunc || x.trunc;
            return acc;
        },
        workers);
}

std::string clusters_csv(const std::vector<ClusterRow>& rows) {
    std::string s =
        "rep,fiber_count,edge_count,component_count,largest_size,largest_edges,largest_diam,"
        "second_size,second_edges,second_diam\n";
    for (const auto& r : rows) {
        s += std::to_string(r.rep) + "," + std::to_string(r.fibers) + "," + std::to_string(r.edges) +
             "," + std::to_string(r.comps) + "," + std::to_string(r.l_size) + "," +
             std::to_string(r.l_edges) + "," + fmt_double(r.l_diam) + "," + std::to_string(r.s_size) +
             "," + std::to_string(r.s_edges) + "," + fmt_double(r.s_diam) + "\n";
    }
    return s;
}

void cmd_sample_clusters(const RunConfig& c, std::vector<OutputFile>& files, ExecResult& res) {
    ClusterRun run = run_cluster_reps(c, resolve_workers(c.workers));
    res.truncated = res.truncated || run.trunc;
    files.push_back({"clusters.csv", clusters_csv(run.rows)});

    if (c.command == "sample" && run.rows.size() == 1) {
        const auto& r = run.rows[0];
        std::cout << "fibers=" << r.fibers << " edges=" << r.edges << " components=" << r.comps
                  << " largest={vertices=" << r.l_size << ", edges=" << r.l_edges
                  << ", diameter=" << fmt_double(r.l_diam) << "}\n";
    } else {
        double mc = 0, ml = 0, md = 0, ms = 0;
        for (const auto& r : run.rows) {
            mc += double(r.comps);
            ml += double(r.l_size);
            md += r.l_diam;
            ms += double(r.s_size);
        }
        double n = double(run.rows.size());
        std::cout << "reps=" << run.rows.size() << " mean_components=" << fmt_double(mc / n)
                  << " mean_largest_size=" << fmt_double(ml / n)
                  << " mean_largest_diam=" << fmt_double(md / n)
                  << " mean_second_size=" << fmt_double(ms / n) << "\n";
    }
}

void cmd_edge_density(const RunConfig& c, std::vector<OutputFile>& files, ExecResult&) {
    std::string csv = "d,u,T,method,estimate,stderr,n_samples\n";
    auto row = [&](const char* method, double est, double se, int64_t n) {
        csv += std::to_string(c.d) + "," + fmt_double(c.u) + "," + fmt_double(c.T) + "," + method +
               "," + fmt_double(est) + "," + fmt_double(se) + "," + std::to_string(n) + "\n";
    };
    if (c.method == "closed" || c.method == "both") {
        RngStream rng = RngStream::derive(c.seed, StreamKey{StreamPurpose::walk_estimator, 0, 0});
        EdgeDensityInputs in = estimate_inputs(rng, c.d, c.T, c.n_inputs);
        ClosedFormResult r = closed_form(in, c.d, c.u, c.T);
        row("closed", r.p, r.p_stderr, c.n_inputs);
        std::cout << "closed: p=" << fmt_double(r.p) << " stderr=" << fmt_double(r.p_stderr)
                  << " (a=" << fmt_double(r.a) << ", g=" << fmt_double(r.g) << ")\n";
    }
    if (c.method == "direct" || c.method == "both") {
        RngStream rng = RngStream::derive(c.seed, StreamKey{StreamPurpose::direct_edge, 0, 0});
        EstimateWithError est = edge_density_direct(rng, c.d, c.u, c.T, c.reps);
        row("direct", est.value, est.stderr_, est.n_samples);
        std::cout << "direct: p=" << fmt_double(est.value) << " stderr=" << fmt_double(est.stderr_)
                  << " n=" << est.n_samples << "\n";
    }
    files.push_back({"edge_density.csv", csv});
}

void cmd_sweep(const RunConfig& c, std::vector<OutputFile>& files, ExecResult&) {
    SweepGrid grid;
    grid.u_min = c.u_min;
    grid.u_max = c.u_max;
    grid.du = c.u_step;
    grid.T_min = c.T_min;
    grid.T_max = c.T_max;
    grid.dT = c.T_step;
    grid.N = c.N;
    grid.reps = c.reps;
    grid.budget = c.budget;
    std::vector<PhasePoint> rows = sweep(grid, make_fri_config(c), resolve_workers(c.workers));

    std::string csv = "u,T,reps,mean_largest_size,mean_largest_diam,mean_second_size,mean_second_diam\n";
    for (const auto& r : rows) {
        csv += fmt_double(r.u) + "," + fmt_double(r.T) + "," + std::to_string(r.reps) + "," +
               fmt_double(r.mean_largest_size) + "," + fmt_double(r.mean_largest_diam) + "," +
               fmt_double(r.mean_second_size) + "," + fmt_double(r.mean_second_diam) + "\n";
    }
    files.push_back({"sweep.csv", csv});
    if (c.svg) files.push_back({"sweep.svg", render_sweep_svg(rows)});
    std::cout << "sweep: " << rows.size() << " grid points x " << c.reps << " reps\n";
}

void cmd_climb(const RunConfig& c, std::vector<OutputFile>& files, ExecResult& res) {
    ClimbConfig cc;
    cc.N = c.N;
    cc.u0 = c.climb_u0;
    cc.T0 = c.climb_T0;
    cc.du = c.climb_du;
    cc.dT = c.climb_dT;
    cc.eps = c.climb_eps;
    cc.T_cap = c.climb_T_cap;
    cc.reps_per_step = c.climb_reps;
    ClimbPath path = hill_climb(cc, make_fri_config(c));
    res.truncated = res.truncated || path.truncated;

    std::string csv = "step,u,T,diameter,decision,marked\n";
    for (const auto& s : path.steps) {
        csv += std::to_string(s.step) + "," + fmt_double(s.u) + "," + fmt_double(s.T) + "," +
               fmt_double(s.diameter) + "," + (s.supercritical ? "u-down" : "T-up") + "," +
               (s.supercritical ? "1" : "0") + "\n";
    }
    files.push_back({"climb.csv", csv});

    const RegressionResult* fit_ptr = nullptr;
    RegressionResult fit;
    bool two_u = false;
    for (size_t i = 1; i < path.marks.size(); ++i)
        if (path.marks[i].first != path.marks[0].first) { two_u = true; break; }
    if (path.marks.size() >= 2 && two_u) {
        fit = fit_loglog(path.marks);
        fit_ptr = &fit;
        std::cout << "climb: " << path.steps.size() << " steps, " << path.marks.size()
                  << " marked; log-log slope=" << fmt_double(fit.slope)
                  << " intercept=" << fmt_double(fit.intercept) << " r2=" << fmt_double(fit.r2)
                  << (path.truncated ? " [truncated at T cap]" : "") << "\n";
    } else {
        std::cout << "climb: " << path.steps.size() << " steps, " << path.marks.size()
                  << " marked; too few marked points for a boundary fit"
                  << (path.truncated ? " [truncated at T cap]" : "") << "\n";
    }
    if (c.svg) files.push_back({"climb.svg", render_climb_svg(path, fit_ptr)});
}

void cmd_capacity(const RunConfig& c, std::vector<OutputFile>&, ExecResult&) {
    Box box = Box::cube(c.d, 0, c.N);
    std::vector<Point> pts;
    pts.reserve(size_t(box.vertex_count()));
    for (int64_t i = 0; i < box.vertex_count(); ++i) pts.push_back(box.point_at(i));
    PointSet A(std::move(pts));
    RngStream rng = RngStream::derive(c.seed, StreamKey{StreamPurpose::walk_estimator, 1, 0});
    CapacityEstimate cap = estimate_capacity(rng, A, KilledWalkParams{c.d, c.T}, c.reps);
    double emin = cap.per_vertex.empty() ? 0.0 : cap.per_vertex[0].value;
    double emax = emin;
    for (const auto& e : cap.per_vertex) {
        emin = std::min(emin, e.value);
        emax = std::max(emax, e.value);
    }
    std::cout << "capacity([0," << c.N << "]^" << c.d << ", T=" << fmt_double(c.T)
              << ") = " << fmt_double(cap.total.value) << " +- " << fmt_double(cap.total.stderr_)
              << "  (" << c.reps << " walks/vertex; equilibrium weights in ["
              << fmt_double(emin) << ", " << fmt_double(emax) << "])\n";
}

}  // namespace

ExecResult execute(const RunConfig& c) {
    auto t0 = std::chrono::steady_clock::now();
    ExecResult res;
    std::vector<OutputFile> files;
    std::vector<std::string> notes;

    try {
        if (c.command == "sample" || c.command == "clusters") cmd_sample_clusters(c, files, res);
        else if (c.command == "edge-density") cmd_edge_density(c, files, res);
        else if (c.command == "sweep") cmd_sweep(c, files, res);
        else if (c.command == "climb") cmd_climb(c, files, res);
        else if (c.command == "capacity") cmd_capacity(c, files, res);
        else throw std::invalid_argument("unknown command " + c.command);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        res.exit_code = 2;
        return res;
    } catch (const std::runtime_error& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        res.resource = true;
        notes.push_back(e.what());
    }

    if (res.truncated) notes.push_back("a truncation flag was raised; see config padding/cap settings");

    nlohmann::json manifest;
    manifest["version"] = "0.1.0";
    manifest["command"] = c.command;
    {
        nlohmann::json cfg;
        std::istringstream lines(emit_config(c));
        std::string line;
        while (std::getline(lines, line)) {
            size_t eq = line.find('=');
            if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 1);
        }
        manifest["config"] = cfg;
    }
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& f : files) {
        write_atomic(c.out, f.name, f.content);
        res.outputs.push_back(f.name);
        outs.push_back({{"file", f.name}, {"bytes", f.content.size()}, {"fnv1a64", fnv1a_hex(f.content)}});
    }
    manifest["outputs"] = outs;
    manifest["flags"] = {{"truncated", res.truncated}, {"resource", res.resource}};
    manifest["notes"] = notes;
    auto t1 = std::chrono::steady_clock::now();
    manifest["walltime_s"] = std::chrono::duration<double>(t1 - t0).count();
    write_atomic(c.out, "manifest.json", manifest.dump(2) + "\n");

    if (res.truncated || res.resource) res.exit_code = 3;
    return res;
}

int run(int argc, char** argv) {
    CLI::App app{"finitary random interlacements laboratory"};
    std::string config_path;
    app.add_option("--config", config_path, "config file (key=value lines, '#' comments)");
    static const char* flag_keys[] = {"command", "d", "u", "T", "N", "seed", "workers", "reps", "out"};
    std::map<std::string, std::string> raw;
    for (const char* k : flag_keys)
        app.add_option("--" + std::string(k), raw[k], "override config key '" + std::string(k) + "'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string text;
    if (!config_path.empty()) {
        std::ifstream f(config_path, std::ios::binary);
        if (!f) {
            std::cerr << "config error: cannot read " << config_path << "\n";
            return 2;
        }
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }

    std::map<std::string, std::string> overrides;
    for (const char* k : flag_keys)
        if (app.count("--" + std::string(k)) > 0) overrides[k] = raw[k];

    ParseOutcome parsed = parse_config(text, overrides);
    if (!parsed.config) {
        for (const auto& e : parsed.errors) std::cerr << "config error: " << e << "\n";
        return 2;
    }

    try {
        return execute(*parsed.config).exit_code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace fri::cli
