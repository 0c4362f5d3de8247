/*
 * Connected-component analytics over a sampled EdgeSet: component labeling by
 * union-find, per-component size/extent statistics, and the largest/second-
 * largest report that the phase diagrams are built from.
 *
 * "Size" is the vertex count of a component (edge counts are also kept so
 * either reading is available); "diameter" is the Euclidean length of the
 * bounding-box extent, the quantity the hill climb compares against
 * sqrt(3)*eps*N.  Ties between equal-size components are broken by the
 * lexicographically smallest member vertex so reports are deterministic.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fri/lattice.hpp"

namespace fri {

// Disjoint-set forest over dense indices 0..n-1 (path halving + union by size).
class UnionFind {
public:
    explicit UnionFind(int64_t n);

    int64_t find(int64_t v);
    // Returns true when the two roots were distinct (a real merge).
    bool unite(int64_t a, int64_t b);
    bool same(int64_t a, int64_t b) { return find(a) == find(b); }
    int64_t component_size(int64_t v) { return size_[size_t(find(v))]; }
    int64_t merge_count() const { return merges_; }

private:
    std::vector<int64_t> parent_;
    std::vector<int64_t> size_;
    int64_t merges_ = 0;
};

struct ComponentLabeling {
    // Flat indices of vertices incident to at least one occupied edge, ascending.
    std::vector<int64_t> vertices;
    // label[i] identifies the component of vertices[i]; labels are dense and
    // assigned in order of first appearance, so they are deterministic.
    std::vector<int32_t> label;
    int32_t component_count = 0;
    int64_t merge_count = 0;
};

ComponentLabeling connected_components(const EdgeSet& edges);

struct ClusterStats {
    int64_t size_vertices = 0;
    int64_t size_edges = 0;
    Point bbox_lo, bbox_hi;
    double bbox_diameter = 0.0;
    int64_t min_vertex = -1;  // lexicographically smallest member (flat index)
};

// Euclidean norm of the bounding-box extent vector (hi - lo).
double bbox_diameter(const ClusterStats& stats);

struct ClusterReport {
    int32_t component_count = 0;
    std::optional<ClusterStats> largest;
    std::optional<ClusterStats> second;
    // (component vertex count, number of components of that size), ascending size.
    std::vector<std::pair<int64_t, int64_t>> size_histogram;
};

ClusterReport cluster_report(const EdgeSet& edges);

}  // namespace fri
