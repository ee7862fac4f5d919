#include "veerkit/blowup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "veerkit/errors.hpp"

namespace veerkit {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

LeafInterval complement(const LeafInterval& s, int L) { return {mod(s.first + s.size, L), L - s.size}; }

LeafInterval shifted(const LeafInterval& s, int by, int L) { return {mod(s.first + by, L), s.size}; }

// Subset of [1, L-1] viewed as an ordinary interval.
bool nested_or_disjoint(const LeafInterval& a, const LeafInterval& b) {
    const int a1 = a.first + a.size, b1 = b.first + b.size;
    if (a1 <= b.first || b1 <= a.first) return true;
    return (a.first <= b.first && b1 <= a1) || (b.first <= a.first && a1 <= b1);
}

bool inside(const LeafInterval& inner, const LeafInterval& outer) {
    return outer.first <= inner.first && inner.first + inner.size <= outer.first + outer.size;
}

// x strictly inside the counterclockwise arc from s to e.
bool in_ccw_arc(const BoundaryPoint& x, const BoundaryPoint& s, const BoundaryPoint& e) {
    return s < e ? (s < x && x < e) : (x > s || x < e);
}

}  // namespace

bool LeafInterval::contains(int leaf, int num_leaves) const { return mod(leaf - first, num_leaves) < size; }

LeafInterval normalize_split(LeafInterval s, int L) {
    s.first = mod(s.first, L);
    return s.contains(0, L) ? complement(s, L) : s;
}

PseudoAnosovTree PseudoAnosovTree::star(int prongs) {
    if (prongs < 2) throw StructureError("a star needs at least 2 prongs");
    return from_splits(2 * prongs, {});
}

PseudoAnosovTree PseudoAnosovTree::from_splits(int L, std::vector<LeafInterval> splits) {
    if (L < 4 || L % 2) throw StructureError("leaf count must be even and at least 4");
    for (auto& s : splits) {
        if (s.size % 2 == 0 || s.size < 3 || s.size > L - 3)
            throw StructureError("split sizes must be odd and leave at least 3 leaves on each side");
        s = normalize_split(s, L);
    }
    std::sort(splits.begin(), splits.end());
    if (std::adjacent_find(splits.begin(), splits.end()) != splits.end()) throw StructureError("repeated split");
    for (size_t i = 0; i < splits.size(); ++i)
        for (size_t j = i + 1; j < splits.size(); ++j)
            if (!nested_or_disjoint(splits[i], splits[j])) throw StructureError("crossing splits");

    PseudoAnosovTree t;
    t.L_ = L;
    t.splits_ = splits;
    const int root = L, n = int(splits.size());
    t.adj_.assign(L + 1 + n, {});
    // Parent vertex of whatever occupies `iv`: the innermost split strictly containing it.
    auto parent = [&](const LeafInterval& iv, int self) {
        int best = -1;
        for (int j = 0; j < n; ++j)
            if (j != self && inside(iv, splits[j]) && (best < 0 || splits[j].size < splits[best].size)) best = j;
        return best < 0 ? root : L + 1 + best;
    };
    auto add = [&](int tail, int head, LeafInterval head_side) {
        const int id = int(t.edges_.size());
        t.edges_.push_back({tail, head, head_side, head_side.last(L), mod(head_side.first - 1, L)});
        t.adj_[tail].push_back(id);
        t.adj_[head].push_back(id);
    };
    for (int k = 0; k < L; ++k) {
        const int p = k == 0 ? root : parent({k, 1}, -1);
        if (t.leaf_sign(k) > 0)
            add(p, k, {k, 1});
        else
            add(k, p, {mod(k + 1, L), L - 1});
    }
    for (int i = 0; i < n; ++i) {
        const int p = parent(splits[i], i), v = L + 1 + i;
        if (t.leaf_sign(splits[i].first) > 0)
            add(p, v, splits[i]);
        else
            add(v, p, complement(splits[i], L));
    }
    for (int v = 0; v < t.num_vertices(); ++v)
        std::sort(t.adj_[v].begin(), t.adj_[v].end(),
                  [&](int a, int b) { return t.block(v, a).first < t.block(v, b).first; });
    return t;
}

LeafInterval PseudoAnosovTree::block(int v, int e) const {
    return edges_[e].tail == v ? edges_[e].head_side : complement(edges_[e].head_side, L_);
}

int PseudoAnosovTree::corner_after(int v, int e) const { return block(v, e).last(L_); }

std::vector<int> PseudoAnosovTree::region_edges(int region) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e)
        if (edges_[e].left_region == region || edges_[e].right_region == region) out.push_back(e);
    return out;
}

std::vector<int> PseudoAnosovTree::region_vertices(int region) const {
    std::set<int> vs;
    for (int e : region_edges(region)) {
        vs.insert(edges_[e].tail);
        vs.insert(edges_[e].head);
    }
    return {vs.begin(), vs.end()};
}

LeafInterval PseudoAnosovTree::edge_key(int e) const { return normalize_split(edges_[e].head_side, L_); }

int PseudoAnosovTree::find_edge(const LeafInterval& key) const {
    const LeafInterval k = normalize_split(key, L_);
    for (int e = 0; e < num_edges(); ++e)
        if (edge_key(e) == k) return e;
    return -1;
}

PseudoAnosovTree PseudoAnosovTree::rotated(int p) const {
    std::vector<LeafInterval> s;
    for (const auto& x : splits_) s.push_back(shifted(x, 2 * p, L_));
    return from_splits(L_, s);
}

int PseudoAnosovTree::rotate_edge(int e, int p) const { return find_edge(shifted(edge_key(e), 2 * p, L_)); }

PseudoAnosovTree PseudoAnosovTree::collapse_edge(int e) const {
    if (e < L_ || e >= num_edges()) throw StructureError("only interior edges can be collapsed");
    std::vector<LeafInterval> s = splits_;
    s.erase(s.begin() + (e - L_));
    return from_splits(L_, s);
}

bool PseudoAnosovTree::collapses_to(const PseudoAnosovTree& coarse) const {
    return L_ == coarse.L_ && std::includes(splits_.begin(), splits_.end(), coarse.splits_.begin(), coarse.splits_.end());
}

EvenFamily EvenFamily::from_counts(const std::vector<int>& counts) {
    if (counts.size() < 4 || counts.size() % 2) throw StructureError("region count must be even and at least 4");
    EvenFamily f;
    f.counts_ = counts;
    for (int r = 0; r < int(counts.size()); ++r) {
        if (counts[r] < 0) throw StructureError("negative point count");
        for (int k = 0; k < counts[r]; ++k) f.points_.push_back({r, k});
    }
    return f;
}

EvenFamily EvenFamily::from_regions(int num_leaves, const std::vector<int>& regions) {
    std::vector<int> counts(std::max(num_leaves, 0));
    for (int r : regions) {
        if (r < 0 || r >= num_leaves) throw StructureError("no region " + std::to_string(r));
        ++counts[r];
    }
    return from_counts(counts);
}

int EvenFamily::signed_sum() const {
    int s = 0;
    for (int r = 0; r < num_leaves(); ++r) s += counts_[r] * (r % 2 ? -1 : 1);
    return s;
}

bool EvenFamily::is_symmetric(int p) const {
    const int L = num_leaves();
    for (int r = 0; r < L; ++r)
        if (counts_[r] != counts_[mod(r + 2 * p, L)]) return false;
    return true;
}

bool EvenFamily::contains(const BoundaryPoint& pt) const {
    return pt.region >= 0 && pt.region < num_leaves() && pt.ordinal >= 0 && pt.ordinal < counts_[pt.region];
}

int point_sign(const BoundaryPoint& pt) { return pt.region % 2 ? -1 : 1; }

BoundaryPoint rotate_point(const BoundaryPoint& pt, int p, int L) { return {mod(pt.region + 2 * p, L), pt.ordinal}; }

PseudoAnosovTree regional_blowup(const PseudoAnosovTree& tree, int a, int b) {
    const int L = tree.num_leaves();
    if (a < 0 || a >= L || b < 0 || b >= L || a == b) throw NotAdjacentAtVertex("regions must be distinct and exist");
    auto ea = tree.region_edges(a), eb = tree.region_edges(b);
    std::vector<int> shared;
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(shared));
    if (!shared.empty()) throw NotAdjacentAtVertex("regions already share an edge");
    auto va = tree.region_vertices(a), vb = tree.region_vertices(b);
    std::vector<int> common;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
    if (common.empty()) throw NotAdjacentAtVertex("regions share no vertex");
    if ((a - b) % 2 == 0) throw SameOrientation("boundary intervals of both regions have the same orientation");
    std::vector<LeafInterval> s = tree.splits();
    s.push_back({mod(a + 1, L), mod(b - a, L)});
    return PseudoAnosovTree::from_splits(L, s);
}

namespace {

int orbit_size(const BoundaryPoint& pt, int p, int L) {
    int m = 1;
    for (BoundaryPoint x = rotate_point(pt, p, L); x != pt; x = rotate_point(x, p, L)) ++m;
    return m;
}

std::set<LeafInterval> incident_keys(const PseudoAnosovTree& t, int v) {
    std::set<LeafInterval> keys;
    for (int e : t.incident(v)) keys.insert(t.edge_key(e));
    return keys;
}

int vertex_with_keys(const PseudoAnosovTree& t, const std::set<LeafInterval>& keys) {
    for (int v = t.num_leaves(); v < t.num_vertices(); ++v)
        if (incident_keys(t, v) == keys) return v;
    throw std::logic_error("current vertex lost");
}

// Side of each vertex (1 = the side the coorientation points to), or empty when
// the crossings are inconsistent with a chord between the endpoints.
std::vector<char> segment_sides(const PseudoAnosovTree& t, const Segment& s) {
    const int L = t.num_leaves();
    std::vector<char> crossed(t.num_edges()), side(t.num_vertices(), -1);
    for (const auto& c : s.crossings) crossed[c.edge] = 1;
    std::vector<int> stack{mod(s.start.region + 1, L)};
    side[stack[0]] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : t.incident(v)) {
            const TreeEdge& te = t.edge(e);
            int w = te.tail == v ? te.head : te.tail;
            if (side[w] >= 0) continue;
            side[w] = crossed[e] ? char(1 - side[v]) : side[v];
            stack.push_back(w);
        }
    }
    const LeafInterval positive{mod(s.start.region + 1, L), mod(s.end.region - s.start.region, L)};
    for (int k = 0; k < L; ++k)
        if (side[k] != char(positive.contains(k, L))) return {};
    for (const auto& c : s.crossings)
        if (side[t.edge(c.edge).tail] != 0 || side[t.edge(c.edge).head] != 1) return {};
    return side;
}

bool disjoint(const Segment& a, const std::vector<char>& sa, const Segment& b, const std::vector<char>& sb) {
    const bool b_start = in_ccw_arc(b.start, a.start, a.end), b_end = in_ccw_arc(b.end, a.start, a.end);
    if (b_start != b_end) return false;
    const bool a_start = in_ccw_arc(a.start, b.start, b.end), a_end = in_ccw_arc(a.end, b.start, b.end);
    if (a_start != a_end) return false;
    // The side of each segment away from the other must not share a vertex.
    const char far_a = b_start ? 0 : 1, far_b = a_start ? 0 : 1;
    for (size_t v = 0; v < sa.size(); ++v)
        if (sa[v] == far_a && sb[v] == far_b) return false;
    return true;
}

Segment rotate_segment(const PseudoAnosovTree& t, const Segment& s, int p) {
    const int L = t.num_leaves();
    Segment r{rotate_point(s.start, p, L), rotate_point(s.end, p, L), {}};
    for (const auto& c : s.crossings)
        r.crossings.push_back({t.rotate_edge(c.edge, p), mod(c.from_region + 2 * p, L), mod(c.to_region + 2 * p, L)});
    return r;
}

std::string segment_defect(const PseudoAnosovTree& t, const Segment& s) {
    if (point_sign(s.start) != 1 || point_sign(s.end) != -1) return "segment must run from a + point to a - point";
    if (s.crossings.empty()) return "segment crosses no edge";
    std::set<int> edges, regions{s.start.region};
    int at = s.start.region;
    for (const auto& c : s.crossings) {
        if (c.edge < 0 || c.edge >= t.num_edges()) return "no edge " + std::to_string(c.edge);
        if (!edges.insert(c.edge).second) return "edge " + std::to_string(c.edge) + " crossed twice";
        if (c.from_region != at) return "crossings do not form a path of regions";
        const TreeEdge& e = t.edge(c.edge);
        if (c.from_region != e.right_region || c.to_region != e.left_region)
            return "coorientation disagrees with edge " + std::to_string(c.edge);
        if (!regions.insert(c.to_region).second) return "segment re-enters a region";
        at = c.to_region;
    }
    if (at != s.end.region) return "segment does not reach its end point";
    if (segment_sides(t, s).empty()) return "crossings do not bound a chord";
    return {};
}

}  // namespace

std::string filling_defect(const PseudoAnosovTree& tree, const EvenFamily& family, const Filling& filling, int rotation) {
    const int L = tree.num_leaves();
    if (family.num_leaves() != L) return "family and tree have different leaf counts";
    const int p = mod(rotation, tree.prongs());
    if (p != 0 && (!tree.is_symmetric(p) || !family.is_symmetric(p))) return "tree or family not symmetric";
    std::set<BoundaryPoint> used;
    for (const auto& s : filling.segments)
        for (const auto& pt : {s.start, s.end}) {
            if (!family.contains(pt)) return "endpoint outside the family";
            if (!used.insert(pt).second) return "endpoint used twice";
        }
    if (int(used.size()) != family.size()) return "some family point is not an endpoint";
    std::vector<std::vector<char>> sides;
    for (const auto& s : filling.segments) {
        if (auto d = segment_defect(tree, s); !d.empty()) return d;
        sides.push_back(segment_sides(tree, s));
    }
    for (size_t i = 0; i < sides.size(); ++i)
        for (size_t j = i + 1; j < sides.size(); ++j)
            if (!disjoint(filling.segments[i], sides[i], filling.segments[j], sides[j]))
                return "segments " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
    if (p != 0) {
        std::set<Segment> all(filling.segments.begin(), filling.segments.end());
        for (const auto& s : filling.segments)
            if (!all.count(rotate_segment(tree, s, p))) return "filling not symmetric";
    }
    return {};
}

FillResult fill_even_family(const PseudoAnosovTree& star, const EvenFamily& family, int rotation) {
    if (!star.is_star()) throw StructureError("filling starts from a star");
    const int L = star.num_leaves();
    if (family.num_leaves() != L) throw StructureError("family and star have different leaf counts");
    const int p = mod(rotation, star.prongs());
    if (!family.is_symmetric(p)) throw NotSymmetric("family is not invariant under the rotation");
    if (!family.is_even()) throw OddFamily("signed sum " + std::to_string(family.signed_sum()));

    FillResult res{star, {}, 0, 0};
    std::vector<LeafInterval> splits;
    std::vector<BoundaryPoint> rest = family.points();
    std::set<LeafInterval> vkeys = incident_keys(star, L);
    struct Pending {
        BoundaryPoint start, end;
        LeafInterval key;
    };
    std::vector<Pending> pending;
    while (!rest.empty()) {
        const PseudoAnosovTree& t = res.tree;
        const int v = vertex_with_keys(t, vkeys);
        const std::vector<int>& inc = t.incident(v);
        const int deg = int(inc.size()), n = int(rest.size());
        std::map<int, int> corner;
        for (int j = 0; j < deg; ++j) corner[t.corner_after(v, inc[j])] = j;
        const int m = orbit_size(rest[0], p, L);
        int pick = -1, k = 0;
        for (int i = 0; i < n && pick < 0; ++i) {
            const BoundaryPoint &a = rest[i], &b = rest[(i + 1) % n];
            if (point_sign(a) == point_sign(b)) continue;
            k = mod(corner.at(b.region) - corner.at(a.region), deg);
            if (k == 1 || deg - m * (k - 1) >= 4) pick = i;
        }
        if (pick < 0) throw std::logic_error("no admissible pair");
        BoundaryPoint a = rest[pick], b = rest[(pick + 1) % n];
        std::set<BoundaryPoint> done;
        for (int s = 0; s < m; ++s, a = rotate_point(a, p, L), b = rotate_point(b, p, L)) {
            const int ja = corner.at(a.region);
            LeafInterval key;
            if (k == 1) {
                key = t.edge_key(inc[(ja + 1) % deg]);
            } else {
                key = normalize_split({mod(a.region + 1, L), mod(b.region - a.region, L)}, L);
                splits.push_back(key);
                for (int j = 1; j <= k; ++j) vkeys.erase(t.edge_key(inc[(ja + j) % deg]));
                vkeys.insert(key);
                ++res.blowups;
            }
            const bool a_plus = point_sign(a) > 0;
            pending.push_back({a_plus ? a : b, a_plus ? b : a, key});
            done.insert(a);
            done.insert(b);
        }
        std::erase_if(rest, [&](const BoundaryPoint& x) { return done.count(x) > 0; });
        res.tree = PseudoAnosovTree::from_splits(L, splits);
        ++res.levels;
    }
    for (const auto& pd : pending) {
        const int e = res.tree.find_edge(pd.key);
        const TreeEdge& te = res.tree.edge(e);
        res.filling.segments.push_back({pd.start, pd.end, {{e, te.right_region, te.left_region}}});
    }
    std::sort(res.filling.segments.begin(), res.filling.segments.end());
    return res;
}

std::vector<PseudoAnosovTree> enumerate_blowups(const PseudoAnosovTree& star, int rotation) {
    const int L = star.num_leaves();
    const int p = mod(rotation, star.prongs());
    std::vector<LeafInterval> cand;
    for (int first = 1; first < L; ++first)
        for (int size = 3; size <= L - 3 && first + size <= L; size += 2) cand.push_back({first, size});
    std::vector<std::vector<LeafInterval>> families;
    std::vector<LeafInterval> cur;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == cand.size()) {
            families.push_back(cur);
            return;
        }
        rec(i + 1);
        for (const auto& s : cur)
            if (!nested_or_disjoint(s, cand[i])) return;
        cur.push_back(cand[i]);
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
    std::vector<PseudoAnosovTree> out;
    for (const auto& f : families) {
        auto t = PseudoAnosovTree::from_splits(L, f);
        if (p == 0 || t.is_symmetric(p)) out.push_back(std::move(t));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return x.splits().size() != y.splits().size() ? x.splits().size() < y.splits().size() : x.splits() < y.splits();
    });
    return out;
}

namespace {

// All chords from region a to region b, as simple directed paths right -> left.
std::vector<std::vector<Crossing>> chords(const PseudoAnosovTree& t, int a, int b) {
    std::vector<std::vector<Crossing>> out;
    std::vector<Crossing> path;
    std::vector<char> seen(t.num_leaves());
    std::function<void(int)> rec = [&](int r) {
        if (r == b) {
            out.push_back(path);
            return;
        }
        seen[r] = 1;
        for (int e = 0; e < t.num_edges(); ++e) {
            const TreeEdge& te = t.edge(e);
            if (te.right_region != r || seen[te.left_region]) continue;
            path.push_back({e, r, te.left_region});
            rec(te.left_region);
            path.pop_back();
        }
        seen[r] = 0;
    };
    rec(a);
    return out;
}

}  // namespace

std::optional<FillResult> brute_force_fill(const PseudoAnosovTree& star, const EvenFamily& family, int rotation) {
    if (!star.is_star()) throw StructureError("brute force starts from a star");
    if (star.prongs() > 4 || family.size() > 6) throw SizeGuard("brute force is limited to 4 prongs and 6 points");
    if (family.num_leaves() != star.num_leaves()) throw StructureError("family and star have different leaf counts");
    const int p = mod(rotation, star.prongs());
    const auto& pts = family.points();
    const int n = family.size();
    for (const auto& tree : enumerate_blowups(star, p)) {
        std::vector<char> matched(n);
        std::vector<Segment> segs;
        std::vector<std::vector<char>> sides;
        std::optional<Filling> found;
        std::function<void()> rec = [&]() {
            int x = 0;
            while (x < n && matched[x]) ++x;
            if (x == n) {
                Filling f{segs};
                std::sort(f.segments.begin(), f.segments.end());
                if (filling_defect(tree, family, f, p).empty()) found = f;
                return;
            }
            matched[x] = 1;
            for (int y = x + 1; y < n && !found; ++y) {
                if (matched[y] || point_sign(pts[x]) == point_sign(pts[y])) continue;
                const BoundaryPoint &plus = point_sign(pts[x]) > 0 ? pts[x] : pts[y],
                                    &minus = point_sign(pts[x]) > 0 ? pts[y] : pts[x];
                matched[y] = 1;
                for (auto& c : chords(tree, plus.region, minus.region)) {
                    Segment s{plus, minus, c};
                    auto sd = segment_sides(tree, s);
                    if (sd.empty()) continue;
                    bool ok = true;
                    for (size_t i = 0; i < segs.size() && ok; ++i) ok = disjoint(segs[i], sides[i], s, sd);
                    if (!ok) continue;
                    segs.push_back(s);
                    sides.push_back(sd);
                    rec();
                    segs.pop_back();
                    sides.pop_back();
                    if (found) break;
                }
                matched[y] = 0;
            }
            matched[x] = 0;
        };
        rec();
        if (found) return FillResult{tree, *found, int(tree.splits().size()), 0};
    }
    return std::nullopt;
}

}  // namespace veerkit
