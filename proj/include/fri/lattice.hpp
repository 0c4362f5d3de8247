/*
 * Lattice geometry: points of Z^d, axis-aligned boxes, canonical nearest-
 * neighbor edges, and the dense per-box edge occupancy set that every sampler
 * writes into and the cluster analysis reads from.
 *
 * Conventions
 *   - dimension d is carried by each Point (1 <= d <= kMaxDim; the model-level
 *     requirement d >= 3 is enforced where simulations are configured);
 *   - boxes are inclusive on both corners;
 *   - the flat vertex index of a box is row-major with axis 0 most
 *     significant, so flat order equals lexicographic order on coordinates;
 *   - an edge is identified by its smaller endpoint ("base") and a 1-based
 *     axis; only edges with both endpoints inside the box are representable.
 */
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fri {

constexpr int kMaxDim = 24;

struct Point {
    int16_t d = 0;
    std::array<int32_t, kMaxDim> c{};

    static Point zero(int dim);
    static Point of(std::initializer_list<int32_t> coords);

    // Unit move along 1-based axis; dir = +1 or -1.
    Point moved(int axis, int dir) const;

    bool operator==(const Point& o) const;
    bool operator!=(const Point& o) const { return !(*this == o); }
    // Lexicographic order (used for tie-breaking and set storage).
    bool operator<(const Point& o) const;
};

// L1 distance between points of equal dimension.
int64_t l1_distance(const Point& a, const Point& b);

struct EdgeId {
    Point base;
    int axis = 0;  // 1-based, in [1, d]

    bool operator==(const EdgeId& o) const { return axis == o.axis && base == o.base; }
};

// Orientation-free identifier of a nearest-neighbor edge; throws if the
// endpoints are not L1-adjacent.
EdgeId canonical_edge(const Point& a, const Point& b);

struct Box {
    Point lo, hi;

    int dim() const { return lo.d; }
    static Box cube(int d, int32_t lo, int32_t hi);
    static Box of(const Point& lo, const Point& hi);  // validates lo <= hi

    int64_t vertex_count() const;
    int64_t side(int axis0) const { return int64_t(hi.c[axis0]) - lo.c[axis0] + 1; }

    bool contains(const Point& p) const;
    bool contains(const int32_t* coords) const;  // raw d-vector, d = dim()

    // Row-major flat index (axis 0 most significant) and its inverse.
    int64_t index_of(const Point& p) const;
    int64_t index_of(const int32_t* coords) const;
    Point point_at(int64_t index) const;

    // L1 distance from x to the box (0 if inside); equals the graph distance,
    // so a walk of length < distance cannot touch the box.
    int64_t l1_distance_to(const int32_t* coords) const;

    bool operator==(const Box& o) const { return lo == o.lo && hi == o.hi; }
};

// Inner boundary (box vertices with a neighbor outside) and outer boundary
// (outside vertices with a neighbor inside); disjoint by construction.
struct BoundarySets {
    std::vector<Point> inner;
    std::vector<Point> outer;
};
BoundarySets boundary_sets(const Box& box);

// Small set of lattice points with fast membership tests against raw
// coordinate arrays (the walk inner loops never materialize Point values).
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> pts);

    int dim() const { return pts_.empty() ? 0 : pts_[0].d; }
    size_t size() const { return pts_.size(); }
    const std::vector<Point>& points() const { return pts_; }

    bool contains(const int32_t* coords) const;
    bool contains(const Point& p) const { return contains(p.c.data()); }

private:
    std::vector<Point> pts_;  // sorted lexicographically
};

/*
 * Dense edge-occupancy bitset over a box: slot = vertex_flat_index * d +
 * (axis - 1).  Slots whose base vertex sits on the upper face of its axis are
 * invalid and stay clear.  Multiplicities (number of traversing fibers) are
 * kept optionally in a parallel array.
 */
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(const Box& box, bool keep_multiplicity = false);

    const Box& box() const { return box_; }
    int dim() const { return box_.dim(); }
    int64_t slot_count() const { return slots_; }

    bool valid_slot(int64_t slot) const;
    int64_t slot_of(const EdgeId& e) const;        // -1 if not representable
    EdgeId edge_at(int64_t slot) const;

    void insert_slot(int64_t slot, uint32_t count = 1);
    // Record a traversal between two adjacent in-box vertices given by flat
    // vertex indices differing along axis0; no-op safety checks are the
    // caller's job (samplers only call this with verified endpoints).
    void insert(int64_t base_vertex_index, int axis0, uint32_t count = 1);
    bool insert_if_absent(int64_t base_vertex_index, int axis0);  // true if newly set

    bool test_slot(int64_t slot) const;
    bool test(const EdgeId& e) const;
    uint32_t multiplicity_slot(int64_t slot) const;

    bool keeps_multiplicity() const { return !mult_.empty(); }
    int64_t occupied_count() const;
    void clear();

    // Visit every occupied slot in increasing slot order.
    template <class F>
    void for_each_occupied(F&& f) const {
        for (size_t w = 0; w < bits_.size(); ++w) {
            uint64_t word = bits_[w];
            while (word) {
                int b = __builtin_ctzll(word);
                word &= word - 1;
                f(int64_t(w) * 64 + b);
            }
        }
    }

    // Flat vertex indices incident to at least one occupied edge, ascending.
    std::vector<int64_t> touched_vertices() const;

    bool same_occupancy(const EdgeSet& o) const;

private:
    Box box_;
    int64_t slots_ = 0;
    std::vector<uint64_t> bits_;
    std::vector<uint32_t> mult_;
};

}  // namespace fri
