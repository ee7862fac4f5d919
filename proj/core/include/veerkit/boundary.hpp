#pragma once

#include <array>
#include <vector>

#include "veerkit/linalg.hpp"
#include "veerkit/triangulation.hpp"

namespace veerkit {

enum class Kind { Upward, Downward };
const char* kind_name(Kind k);

// Side of the flat triangle at vertex `vertex` of `tet` lying on the face opposite `opp`.
struct FlatSide {
    int tet, vertex, opp;
    auto operator<=>(const FlatSide&) const = default;
};

struct FlatTriangle {
    int tet, vertex;
    Kind kind;
    int cusp;
    int pi_corner;                 // vertex of `tet` across the pi-edge from `vertex`
    std::array<int, 3> branches;   // indexed by position of the opposite vertex among the other three
    int ladder = -1;
};

// A branch of the boundary track: one side shared by two flat triangles.
struct TrackBranch {
    std::array<FlatSide, 2> sides;  // sides[0] is the lesser
    std::array<int, 2> triangles;
    int face;
    int right_switch, left_switch;  // oriented from right to left
    bool rung = false;
};

struct Ladderpole {
    std::vector<int> branches;  // cyclic order along the pole
    std::vector<int> switches;  // switches[i] is the start of branches[i] in walking order
    int length() const { return int(switches.size()); }
};

struct Ladder {
    int cusp;
    Kind kind;
    std::vector<int> triangles;  // starting at the least (tet, vertex)
    std::vector<int> rungs;
    std::array<Ladderpole, 2> poles;  // 0 = left, 1 = right
};

class BoundaryComplex {
public:
    const std::vector<FlatTriangle>& triangles() const { return triangles_; }
    const std::vector<TrackBranch>& branches() const { return branches_; }
    const std::vector<Ladder>& ladders() const { return ladders_; }
    int num_cusps() const { return num_cusps_; }
    int triangle_index(int tet, int vertex) const { return 4 * tet + vertex; }
    // Switch ids are 2*edge + end, as in Triangulation::switch_id.
    int switch_cusp(int sw) const { return switch_cusp_[sw]; }
    int num_switches() const { return int(switch_cusp_.size()); }

private:
    friend BoundaryComplex build_boundary(const VeeringTriangulation&);
    friend std::vector<Ladder> decompose_ladders(const BoundaryComplex&);
    std::vector<FlatTriangle> triangles_;
    std::vector<TrackBranch> branches_;
    std::vector<Ladder> ladders_;
    std::vector<int> switch_cusp_;
    int num_cusps_ = 0;
};

// Flat triangles, the boundary track with its orientation, and the ladder decomposition.
BoundaryComplex build_boundary(const VeeringTriangulation& tri);
// Recomputes the ladders of an already built complex; throws StructureError on non-annular pieces.
std::vector<Ladder> decompose_ladders(const BoundaryComplex& boundary);

struct VeeringRuleCheck {
    int ladder;
    int pole;  // 0 = left, 1 = right
    int switch_id;
    int edge;
    Colour predicted, actual;
};

struct VeeringRuleReport {
    std::vector<VeeringRuleCheck> checks;
    int failures = 0;
    bool pass() const { return failures == 0; }
};

// Left ladderpoles of upward ladders carry right-veering edges and right ladderpoles
// left-veering ones; downward ladders obey the mirror rule.
VeeringRuleReport check_veering_rule(const BoundaryComplex& boundary, const VeeringTriangulation& tri,
                                     bool upward_only = false);

// Per-switch balance of the boundary of a face-weight vector: weight entering
// equals weight leaving along the oriented branches.
bool boundary_positively_carried(const BoundaryComplex& boundary, const std::vector<Int>& weights);

}  // namespace veerkit
