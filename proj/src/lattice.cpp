#include "fri/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace fri {

Point Point::zero(int dim) {
    if (dim < 1 || dim > kMaxDim)
        throw std::invalid_argument("Point: dimension out of range");
    Point p;
    p.d = int16_t(dim);
    return p;
}

Point Point::of(std::initializer_list<int32_t> coords) {
    Point p = zero(int(coords.size()));
    int i = 0;
    for (int32_t v : coords) p.c[i++] = v;
    return p;
}

Point Point::moved(int axis, int dir) const {
    if (axis < 1 || axis > d) throw std::invalid_argument("Point::moved: axis out of range");
    Point p = *this;
    p.c[axis - 1] += dir;
    return p;
}

bool Point::operator==(const Point& o) const {
    if (d != o.d) return false;
    for (int i = 0; i < d; ++i)
        if (c[i] != o.c[i]) return false;
    return true;
}

bool Point::operator<(const Point& o) const {
    for (int i = 0; i < d; ++i) {
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    }
    return false;
}

int64_t l1_distance(const Point& a, const Point& b) {
    int64_t s = 0;
    for (int i = 0; i < a.d; ++i) s += std::abs(int64_t(a.c[i]) - b.c[i]);
    return s;
}

EdgeId canonical_edge(const Point& a, const Point& b) {
    if (a.d != b.d)
        throw std::invalid_argument("canonical_edge: dimension mismatch");
    int axis = 0;
    int dir = 0;
    for (int i = 0; i < a.d; ++i) {
        int64_t diff = int64_t(b.c[i]) - a.c[i];
        if (diff == 0) continue;
        if (axis != 0 || (diff != 1 && diff != -1))
            throw std::invalid_argument("canonical_edge: endpoints not nearest neighbors");
        axis = i + 1;
        dir = int(diff);
    }
    if (axis == 0)
        throw std::invalid_argument("canonical_edge: endpoints coincide");
    EdgeId e;
    e.base = (dir > 0) ? a : b;
    e.axis = axis;
    return e;
}

Box Box::cube(int d, int32_t lo, int32_t hi) {
    Point a = Point::zero(d), b = Point::zero(d);
    for (int i = 0; i < d; ++i) {
        a.c[i] = lo;
        b.c[i] = hi;
    }
    return of(a, b);
}

Box Box::of(const Point& lo, const Point& hi) {
    if (lo.d != hi.d)
        throw std::invalid_argument("Box: corner dimension mismatch");
    for (int i = 0; i < lo.d; ++i)
        if (lo.c[i] > hi.c[i])
            throw std::invalid_argument("Box: lo exceeds hi on axis " + std::to_string(i + 1));
    Box b;
    b.lo = lo;
    b.hi = hi;
    return b;
}

int64_t Box::vertex_count() const {
    int64_t n = 1;
    for (int i = 0; i < dim(); ++i) n *= side(i);
    return n;
}

bool Box::contains(const Point& p) const {
    return p.d == dim() && contains(p.c.data());
}

bool Box::contains(const int32_t* coords) const {
    for (int i = 0; i < dim(); ++i)
        if (coords[i] < lo.c[i] || coords[i] > hi.c[i]) return false;
    return true;
}

int64_t Box::index_of(const Point& p) const { return index_of(p.c.data()); }

int64_t Box::index_of(const int32_t* coords) const {
    int64_t idx = 0;
    for (int i = 0; i < dim(); ++i)
        idx = idx * side(i) + (coords[i] - lo.c[i]);
    return idx;
}

Point Box::point_at(int64_t index) const {
    Point p = Point::zero(dim());
    for (int i = dim() - 1; i >= 0; --i) {
        int64_t s = side(i);
        p.c[i] = lo.c[i] + int32_t(index % s);
        index /= s;
    }
    return p;
}

int64_t Box::l1_distance_to(const int32_t* coords) const {
    int64_t s = 0;
    for (int i = 0; i < dim(); ++i) {
        if (coords[i] < lo.c[i]) s += int64_t(lo.c[i]) - coords[i];
        else if (coords[i] > hi.c[i]) s += int64_t(coords[i]) - hi.c[i];
    }
    return s;
}

BoundarySets boundary_sets(const Box& box) {
    BoundarySets out;
    const int d = box.dim();
    const int64_t n = box.vertex_count();
    for (int64_t idx = 0; idx < n; ++idx) {
        Point p = box.point_at(idx);
        bool on_face = false;
        for (int i = 0; i < d; ++i)
            if (p.c[i] == box.lo.c[i] || p.c[i] == box.hi.c[i]) { on_face = true; break; }
        if (!on_face) continue;
        out.inner.push_back(p);
        for (int i = 0; i < d; ++i) {
            for (int dir : {-1, +1}) {
                Point q = p.moved(i + 1, dir);
                if (!box.contains(q)) out.outer.push_back(q);
            }
        }
    }
    std::sort(out.outer.begin(), out.outer.end());
    out.outer.erase(std::unique(out.outer.begin(), out.outer.end()), out.outer.end());
    return out;
}

PointSet::PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    for (const Point& p : pts_)
        if (p.d != pts_[0].d)
            throw std::invalid_argument("PointSet: mixed dimensions");
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

bool PointSet::contains(const int32_t* coords) const {
    const int d = dim();
    // Small sets (the typical A = {0, x1}) are scanned linearly.
    if (pts_.size() <= 8) {
        for (const Point& p : pts_) {
            bool eq = true;
            for (int i = 0; i < d; ++i)
                if (p.c[i] != coords[i]) { eq = false; break; }
            if (eq) return true;
        }
        return false;
    }
    auto cmp = [d](const Point& p, const int32_t* q) {
        for (int i = 0; i < d; ++i)
            if (p.c[i] != q[i]) return p.c[i] < q[i];
        return false;
    };
    auto it = std::lower_bound(pts_.begin(), pts_.end(), coords, cmp);
    if (it == pts_.end()) return false;
    for (int i = 0; i < d; ++i)
        if (it->c[i] != coords[i]) return false;
    return true;
}

EdgeSet::EdgeSet(const Box& box, bool keep_multiplicity) : box_(box) {
    slots_ = box.vertex_count() * box.dim();
    bits_.assign(size_t((slots_ + 63) / 64), 0);
    if (keep_multiplicity) mult_.assign(size_t(slots_), 0);
}

bool EdgeSet::valid_slot(int64_t slot) const {
    if (slot < 0 || slot >= slots_) return false;
    int axis0 = int(slot % box_.dim());
    Point base = box_.point_at(slot / box_.dim());
    return base.c[axis0] < box_.hi.c[axis0];
}

int64_t EdgeSet::slot_of(const EdgeId& e) const {
    if (e.axis < 1 || e.axis > box_.dim()) return -1;
    if (!box_.contains(e.base)) return -1;
    if (e.base.c[e.axis - 1] >= box_.hi.c[e.axis - 1]) return -1;  // upper endpoint outside
    return box_.index_of(e.base) * box_.dim() + (e.axis - 1);
}

EdgeId EdgeSet::edge_at(int64_t slot) const {
    EdgeId e;
    e.base = box_.point_at(slot / box_.dim());
    e.axis = int(slot % box_.dim()) + 1;
    return e;
}

void EdgeSet::insert_slot(int64_t slot, uint32_t count) {
    bits_[size_t(slot >> 6)] |= (1ull << (slot & 63));
    if (!mult_.empty()) mult_[size_t(slot)] += count;
}

void EdgeSet::insert(int64_t base_vertex_index, int axis0, uint32_t count) {
    insert_slot(base_vertex_index * box_.dim() + axis0, count);
}

bool EdgeSet::insert_if_absent(int64_t base_vertex_index, int axis0) {
    int64_t slot = base_vertex_index * box_.dim() + axis0;
    uint64_t& word = bits_[size_t(slot >> 6)];
    uint64_t mask = 1ull << (slot & 63);
    bool fresh = !(word & mask);
    word |= mask;
    if (!mult_.empty()) mult_[size_t(slot)] += 1;
    return fresh;
}

bool EdgeSet::test_slot(int64_t slot) const {
    return (bits_[size_t(slot >> 6)] >> (slot & 63)) & 1u;
}

bool EdgeSet::test(const EdgeId& e) const {
    int64_t slot = slot_of(e);
    return slot >= 0 && test_slot(slot);
}

uint32_t EdgeSet::multiplicity_slot(int64_t slot) const {
    return mult_.empty() ? (test_slot(slot) ? 1u : 0u) : mult_[size_t(slot)];
}

int64_t EdgeSet::occupied_count() const {
    int64_t n = 0;
    for (uint64_t w : bits_) n += __builtin_popcountll(w);
    return n;
}

void EdgeSet::clear() {
    std::fill(bits_.begin(), bits_.end(), 0);
    std::fill(mult_.begin(), mult_.end(), 0);
}

std::vector<int64_t> EdgeSet::touched_vertices() const {
    std::vector<int64_t> out;
    const int d = box_.dim();
    int64_t prev = -1;
    for_each_occupied([&](int64_t slot) {
        int64_t base = slot / d;
        int axis0 = int(slot % d);
        int64_t stride = 1;
        for (int i = axis0 + 1; i < d; ++i) stride *= box_.side(i);
        if (base != prev) { out.push_back(base); prev = base; }
        out.push_back(base + stride);
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool EdgeSet::same_occupancy(const EdgeSet& o) const {
    return box_ == o.box_ && bits_ == o.bits_;
}

}  // namespace fri
