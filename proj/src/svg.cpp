/*
 * Minimal two-panel SVG plots for sweep and climb results.
 */
#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fri/cli.hpp"

namespace fri::cli {

namespace {

constexpr double kPanelW = 420, kPanelH = 320, kMargin = 52, kGap = 40;

struct Frame {
    double x0, y0;          // top-left of the plot area, SVG coords
    double xmin, xmax, ymin, ymax;

    double px(double x) const {
        double den = xmax > xmin ? xmax - xmin : 1.0;
        return x0 + (x - xmin) / den * kPanelW;
    }
    double py(double y) const {
        double den = ymax > ymin ? ymax - ymin : 1.0;
        return y0 + kPanelH - (y - ymin) / den * kPanelH;
    }
};

void pad_range(double& lo, double& hi) {
    if (hi <= lo) {
        lo -= 1.0;
        hi += 1.0;
    } else {
        double pad = 0.06 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
}

std::string num(double v) { return fmt_double(v); }

void axes(std::string& s, const Frame& f, const std::string& title) {
    s += "<rect x='" + num(f.x0) + "' y='" + num(f.y0) + "' width='" + num(kPanelW) +
         "' height='" + num(kPanelH) + "' fill='white' stroke='#444'/>\n";
    s += "<text x='" + num(f.x0 + kPanelW / 2) + "' y='" + num(f.y0 - 10) +
         "' text-anchor='middle' font-family='monospace' font-size='13'>" + title + "</text>\n";
    s += "<text x='" + num(f.x0) + "' y='" + num(f.y0 + kPanelH + 16) +
         "' font-family='monospace' font-size='11'>" + num(f.xmin) + "</text>\n";
    s += "<text x='" + num(f.x0 + kPanelW) + "' y='" + num(f.y0 + kPanelH + 16) +
         "' text-anchor='end' font-family='monospace' font-size='11'>" + num(f.xmax) + "</text>\n";
    s += "<text x='" + num(f.x0 - 4) + "' y='" + num(f.y0 + kPanelH) +
         "' text-anchor='end' font-family='monospace' font-size='11'>" + num(f.ymin) + "</text>\n";
    s += "<text x='" + num(f.x0 - 4) + "' y='" + num(f.y0 + 10) +
         "' text-anchor='end' font-family='monospace' font-size='11'>" + num(f.ymax) + "</text>\n";
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string svg_open() {
    double w = 2 * kPanelW + 2 * kMargin + kGap + kMargin;
    double h = kPanelH + 2 * kMargin;
    return "<svg xmlns='http://www.w3.org/2000/svg' width='" + num(w) + "' height='" + num(h) +
           "' viewBox='0 0 " + num(w) + " " + num(h) + "'>\n<rect width='100%' height='100%' fill='#fafafa'/>\n";
}

}  // namespace

std::string render_sweep_svg(const std::vector<PhasePoint>& rows) {
    std::string s = svg_open();
    if (rows.empty()) return s + "<text x='40' y='40' font-family='monospace'>no data</text>\n</svg>\n";

    double Tlo = rows[0].T, Thi = rows[0].T, dlo = 0.0, dhi = 0.0, slo = 0.0, shi = 0.0;
    for (const auto& r : rows) {
        Tlo = std::min(Tlo, r.T);
        Thi = std::max(Thi, r.T);
        dhi = std::max(dhi, r.mean_largest_diam);
        shi = std::max(shi, r.mean_second_size);
    }
    pad_range(Tlo, Thi);
    pad_range(dlo, dhi);
    pad_range(slo, shi);

    Frame left{kMargin * 1.6, kMargin, Tlo, Thi, dlo, dhi};
    Frame right{kMargin * 1.6 + kPanelW + kGap + kMargin, kMargin, Tlo, Thi, slo, shi};
    axes(s, left, "mean largest-cluster diameter vs T");
    axes(s, right, "mean second-largest size vs T");

    // One series per distinct u, both panels.
    std::map<double, std::vector<const PhasePoint*>> series;
    for (const auto& r : rows) series[r.u].push_back(&r);
    int ci = 0;
    for (auto& [u, pts] : series) {
        const char* color = kPalette[ci % 8];
        ++ci;
        std::sort(pts.begin(), pts.end(),
                  [](const PhasePoint* a, const PhasePoint* b) { return a->T < b->T; });
        for (const Frame* f : {&left, &right}) {
            bool second = f == &right;
            std::string poly;
            for (const auto* p : pts) {
                double y = second ? p->mean_second_size : p->mean_largest_diam;
                poly += num(f->px(p->T)) + "," + num(f->py(y)) + " ";
                s += "<circle cx='" + num(f->px(p->T)) + "' cy='" + num(f->py(y)) +
                     "' r='2.5' fill='" + color + "'/>\n";
            }
            s += "<polyline points='" + poly + "' fill='none' stroke='" + color + "' stroke-width='1.2'/>\n";
        }
        s += "<text x='" + num(left.x0 + 8) + "' y='" + num(kMargin + 16 + 14 * (ci - 1)) +
             "' font-family='monospace' font-size='11' fill='" + color + "'>u=" + num(u) + "</text>\n";
    }
    return s + "</svg>\n";
}

std::string render_climb_svg(const ClimbPath& path, const RegressionResult* fit) {
    std::string s = svg_open();
    if (path.steps.empty()) return s + "<text x='40' y='40' font-family='monospace'>no data</text>\n</svg>\n";

    double Tlo = path.steps[0].T, Thi = Tlo, ulo = path.steps[0].u, uhi = ulo;
    for (const auto& st : path.steps) {
        Tlo = std::min(Tlo, st.T);
        Thi = std::max(Thi, st.T);
        ulo = std::min(ulo, st.u);
        uhi = std::max(uhi, st.u);
    }
    pad_range(Tlo, Thi);
    pad_range(ulo, uhi);
    Frame left{kMargin * 1.6, kMargin, Tlo, Thi, ulo, uhi};
    axes(s, left, "staircase path: u vs T (marks = supercritical)");
    std::string poly;
    for (const auto& st : path.steps) poly += num(left.px(st.T)) + "," + num(left.py(st.u)) + " ";
    s += "<polyline points='" + poly + "' fill='none' stroke='#1f77b4' stroke-width='1.2'/>\n";
    for (const auto& [u, T] : path.marks)
        s += "<circle cx='" + num(left.px(T)) + "' cy='" + num(left.py(u)) + "' r='2.5' fill='#d62728'/>\n";

    if (!path.marks.empty()) {
        double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
        bool first = true;
        for (const auto& [u, T] : path.marks) {
            double x = std::log10(u), y = std::log10(T);
            if (first) { xlo = xhi = x; ylo = yhi = y; first = false; }
            xlo = std::min(xlo, x); xhi = std::max(xhi, x);
            ylo = std::min(ylo, y); yhi = std::max(yhi, y);
        }
        pad_range(xlo, xhi);
        pad_range(ylo, yhi);
        Frame right{kMargin * 1.6 + kPanelW + kGap + kMargin, kMargin, xlo, xhi, ylo, yhi};
        axes(s, right, "marked points: log10 T vs log10 u");
        for (const auto& [u, T] : path.marks)
            s += "<circle cx='" + num(right.px(std::log10(u))) + "' cy='" +
                 num(right.py(std::log10(T))) + "' r='2.5' fill='#d62728'/>\n";
        if (fit) {
            // Natural-log fit log T = slope*log u + b renders in log10 space
            // with the same slope and intercept b/ln(10).
            double b10 = fit->intercept / std::log(10.0);
            double ya = fit->slope * xlo + b10, yb = fit->slope * xhi + b10;
            s += "<line x1='" + num(right.px(xlo)) + "' y1='" + num(right.py(ya)) + "' x2='" +
                 num(right.px(xhi)) + "' y2='" + num(right.py(yb)) +
                 "' stroke='#2ca02c' stroke-width='1.4'/>\n";
            s += "<text x='" + num(right.x0 + 8) + "' y='" + num(right.y0 + 16) +
                 "' font-family='monospace' font-size='11' fill='#2ca02c'>slope=" + num(fit->slope) +
                 " r2=" + num(fit->r2) + "</text>\n";
        }
    }
    return s + "</svg>\n";
}

}  // namespace fri::cli
