#pragma once

#include <optional>
#include <string>
#include <vector>

namespace veerkit {

// Cyclic run of leaves first, first+1, ..., first+size-1 (mod the leaf count).
struct LeafInterval {
    int first = 0, size = 0;
    bool contains(int leaf, int num_leaves) const;
    int last(int num_leaves) const { return (first + size - 1) % num_leaves; }
    auto operator<=>(const LeafInterval&) const = default;
};

struct TreeEdge {
    int tail, head;
    LeafInterval head_side;  // leaves on the head side of the edge
    int left_region, right_region;  // as seen looking from tail to head
};

// Planar directed tree in a disk with leaves 0..L-1 in counterclockwise order on
// the boundary. Region r is the complementary region whose boundary interval runs
// from leaf r to leaf r+1. Leaf k is a sink for odd k and a source for even k, so
// even regions carry sign +1 and odd regions -1.
//
// A tree is stored as its set of interior edges, each given by the leaves on the
// side away from leaf 0; every interior vertex then alternates in/out with even
// degree at least 4. Vertices: leaves 0..L-1, then the vertex next to leaf 0,
// then one vertex per split in sorted order. Edges: leaf edge k is edge k, split
// i is edge L+i.
class PseudoAnosovTree {
public:
    static PseudoAnosovTree star(int prongs);
    // Throws StructureError unless the splits are odd, proper, distinct and non-crossing.
    static PseudoAnosovTree from_splits(int num_leaves, std::vector<LeafInterval> splits);

    int num_leaves() const { return L_; }
    int prongs() const { return L_ / 2; }
    int num_vertices() const { return int(adj_.size()); }
    int num_edges() const { return int(edges_.size()); }
    const TreeEdge& edge(int e) const { return edges_[e]; }
    const std::vector<TreeEdge>& edges() const { return edges_; }
    const std::vector<LeafInterval>& splits() const { return splits_; }
    bool is_star() const { return splits_.empty(); }
    bool is_leaf(int v) const { return v < L_; }

    int leaf_sign(int leaf) const { return leaf % 2 ? 1 : -1; }
    int region_sign(int region) const { return region % 2 ? -1 : 1; }
    // Incident edges in counterclockwise order, starting from the block holding the lowest leaf.
    const std::vector<int>& incident(int v) const { return adj_[v]; }
    // Leaves beyond edge e as seen from its endpoint v.
    LeafInterval block(int v, int e) const;
    // Region in the corner at v that follows incident edge e counterclockwise.
    int corner_after(int v, int e) const;
    std::vector<int> region_edges(int region) const;
    std::vector<int> region_vertices(int region) const;
    // Edge with the given side-away-from-leaf-0 (leaf edges have size 1, or L-1 for leaf 0), or -1.
    int find_edge(const LeafInterval& key) const;
    LeafInterval edge_key(int e) const;

    // Rotation by 2*pi*p/q, which moves leaf k to leaf k + 2p.
    PseudoAnosovTree rotated(int p) const;
    bool is_symmetric(int p) const { return rotated(p) == *this; }
    int rotate_edge(int e, int p) const;
    PseudoAnosovTree collapse_edge(int e) const;
    // True when collapsing some interior edges of this tree gives `coarse`.
    bool collapses_to(const PseudoAnosovTree& coarse) const;

    bool operator==(const PseudoAnosovTree& o) const { return L_ == o.L_ && splits_ == o.splits_; }

private:
    int L_ = 0;
    std::vector<LeafInterval> splits_;
    std::vector<TreeEdge> edges_;
    std::vector<std::vector<int>> adj_;
};

LeafInterval normalize_split(LeafInterval s, int num_leaves);

struct BoundaryPoint {
    int region = 0, ordinal = 0;  // ordinal increases counterclockwise within the region
    auto operator<=>(const BoundaryPoint&) const = default;
};

class EvenFamily {
public:
    EvenFamily() = default;
    // One point per entry, in the region given; ordinals follow the order of appearance.
    static EvenFamily from_regions(int num_leaves, const std::vector<int>& regions);
    static EvenFamily from_counts(const std::vector<int>& counts);

    int num_leaves() const { return int(counts_.size()); }
    const std::vector<BoundaryPoint>& points() const { return points_; }
    int size() const { return int(points_.size()); }
    bool empty() const { return points_.empty(); }
    int count(int region) const { return counts_[region]; }
    const std::vector<int>& counts() const { return counts_; }
    int signed_sum() const;
    bool is_even() const { return signed_sum() == 0; }
    bool is_symmetric(int p) const;
    bool contains(const BoundaryPoint& pt) const;

private:
    std::vector<int> counts_;
    std::vector<BoundaryPoint> points_;
};

int point_sign(const BoundaryPoint& pt);
BoundaryPoint rotate_point(const BoundaryPoint& pt, int p, int num_leaves);

struct Crossing {
    int edge, from_region, to_region;
    auto operator<=>(const Crossing&) const = default;
};

// A segment runs from a + point to a - point with its coorientation to the right;
// crossings are listed in order along the segment.
struct Segment {
    BoundaryPoint start, end;
    std::vector<Crossing> crossings;
    auto operator<=>(const Segment&) const = default;
};

struct Filling {
    std::vector<Segment> segments;
};

struct FillResult {
    PseudoAnosovTree tree;
    Filling filling;
    int blowups = 0;
    int levels = 0;
};

// Splits the vertex shared by regions a and b so that they meet along a new edge.
// Throws NotAdjacentAtVertex or SameOrientation.
PseudoAnosovTree regional_blowup(const PseudoAnosovTree& tree, int a, int b);

// Recursive filling over a dynamic blowup of the star. The pair at each level is the
// first circularly adjacent opposite-sign pair whose arc can be cut off at the
// current vertex; its rotation orbit is handled in one step. Throws NotSymmetric
// or OddFamily.
FillResult fill_even_family(const PseudoAnosovTree& star, const EvenFamily& family, int rotation = 0);

// Empty when the filling is valid, otherwise the first defect found.
std::string filling_defect(const PseudoAnosovTree& tree, const EvenFamily& family, const Filling& filling,
                           int rotation = 0);
inline bool validate_filling(const PseudoAnosovTree& tree, const EvenFamily& family, const Filling& filling,
                             int rotation = 0) {
    return filling_defect(tree, family, filling, rotation).empty();
}

// All dynamic blowups of the star invariant under the rotation, fewest edges first.
std::vector<PseudoAnosovTree> enumerate_blowups(const PseudoAnosovTree& star, int rotation = 0);

// Exhaustive search over symmetric blowups and segment systems. Limited to
// 4 prongs and 6 points; throws SizeGuard beyond that.
std::optional<FillResult> brute_force_fill(const PseudoAnosovTree& star, const EvenFamily& family,
                                           int rotation = 0);

}  // namespace veerkit
