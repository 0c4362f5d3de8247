#include "fri/cluster.hpp"

#include <algorithm>
#include <cmath>

namespace fri {

UnionFind::UnionFind(int64_t n) : parent_(size_t(n)), size_(size_t(n), 1) {
    for (int64_t i = 0; i < n; ++i) parent_[size_t(i)] = i;
}

int64_t UnionFind::find(int64_t v) {
    while (parent_[size_t(v)] != v) {
        parent_[size_t(v)] = parent_[size_t(parent_[size_t(v)])];  // path halving
        v = parent_[size_t(v)];
    }
    return v;
}

bool UnionFind::unite(int64_t a, int64_t b) {
    int64_t ra = find(a), rb = find(b);
    if (ra == rb) return false;
    if (size_[size_t(ra)] < size_[size_t(rb)]) std::swap(ra, rb);
    parent_[size_t(rb)] = ra;
    size_[size_t(ra)] += size_[size_t(rb)];
    ++merges_;
    return true;
}

ComponentLabeling connected_components(const EdgeSet& edges) {
    ComponentLabeling out;
    out.vertices = edges.touched_vertices();
    const int64_t n = int64_t(out.vertices.size());
    if (n == 0) return out;

    auto dense_of = [&](int64_t flat) {
        return int64_t(std::lower_bound(out.vertices.begin(), out.vertices.end(), flat) -
                       out.vertices.begin());
    };

    const Box& box = edges.box();
    const int d = box.dim();
    int64_t stride[kMaxDim];
    {
        int64_t s = 1;
        for (int i = d - 1; i >= 0; --i) {
            stride[i] = s;
            s *= box.side(i);
        }
    }

    UnionFind uf(n);
    edges.for_each_occupied([&](int64_t slot) {
        int64_t base = slot / d;
        int axis0 = int(slot % d);
        uf.unite(dense_of(base), dense_of(base + stride[axis0]));
    });

    out.label.assign(size_t(n), -1);
    std::vector<int32_t> root_label(size_t(n), -1);
    int32_t next = 0;
    for (int64_t i = 0; i < n; ++i) {
        int64_t r = uf.find(i);
        if (root_label[size_t(r)] < 0) root_label[size_t(r)] = next++;
        out.label[size_t(i)] = root_label[size_t(r)];
    }
    out.component_count = next;
    out.merge_count = uf.merge_count();
    return out;
}

double bbox_diameter(const ClusterStats& stats) {
    double s = 0.0;
    for (int i = 0; i < stats.bbox_lo.d; ++i) {
        double e = double(stats.bbox_hi.c[i]) - double(stats.bbox_lo.c[i]);
        s += e * e;
    }
    return std::sqrt(s);
}

ClusterReport cluster_report(const EdgeSet& edges) {
    ClusterReport report;
    ComponentLabeling lab = connected_components(edges);
    report.component_count = lab.component_count;
    if (lab.component_count == 0) return report;

    const Box& box = edges.box();
    const int d = box.dim();
    std::vector<ClusterStats> stats(size_t(lab.component_count));
    for (auto& s : stats) {
        s.bbox_lo = Point::zero(d);
        s.bbox_hi = Point::zero(d);
    }

    for (size_t i = 0; i < lab.vertices.size(); ++i) {
        ClusterStats& s = stats[size_t(lab.label[i])];
        Point p = box.point_at(lab.vertices[i]);
        if (s.size_vertices == 0) {
            s.bbox_lo = s.bbox_hi = p;
            s.min_vertex = lab.vertices[i];  // vertices ascend, so the first is smallest
        } else {
            for (int k = 0; k < d; ++k) {
                s.bbox_lo.c[k] = std::min(s.bbox_lo.c[k], p.c[k]);
                s.bbox_hi.c[k] = std::max(s.bbox_hi.c[k], p.c[k]);
            }
        }
        ++s.size_vertices;
    }

    edges.for_each_occupied([&](int64_t slot) {
        int64_t base = slot / d;
        auto it = std::lower_bound(lab.vertices.begin(), lab.vertices.end(), base);
        ++stats[size_t(lab.label[size_t(it - lab.vertices.begin())])].size_edges;
    });

    for (auto& s : stats) s.bbox_diameter = bbox_diameter(s);

    // Largest and second largest by vertex count; ties go to the component
    // with the lexicographically smallest member (= smallest flat index).
    std::vector<int32_t> order(size_t(lab.component_count));
    for (int32_t i = 0; i < lab.component_count; ++i) order[size_t(i)] = i;
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        const ClusterStats& sa = stats[size_t(a)];
        const ClusterStats& sb = stats[size_t(b)];
        if (sa.size_vertices != sb.size_vertices) return sa.size_vertices > sb.size_vertices;
        return sa.min_vertex < sb.min_vertex;
    });
    report.largest = stats[size_t(order[0])];
    if (lab.component_count > 1) report.second = stats[size_t(order[1])];

    std::vector<int64_t> sizes;
    sizes.reserve(stats.size());
    for (const auto& s : stats) sizes.push_back(s.size_vertices);
    std::sort(sizes.begin(), sizes.end());
    for (size_t i = 0; i < sizes.size();) {
        size_t j = i;
        while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
        report.size_histogram.emplace_back(sizes[i], int64_t(j - i));
        i = j;
    }
    return report;
}

}  // namespace fri
