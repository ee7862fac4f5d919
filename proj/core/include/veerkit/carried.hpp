#pragma once

#include <array>
#include <optional>
#include <vector>

#include "veerkit/cones.hpp"
#include "veerkit/homology.hpp"
#include "veerkit/stable_track.hpp"
#include "veerkit/triangulation.hpp"

namespace veerkit {

struct CarriedCone {
    RationalCone weights;                 // {w >= 0 : branch equations} in face coordinates
    RationalCone projected;               // image in H2 coordinates dual to the free H1 basis
    std::vector<ZVec> ray_projections;    // class of each weight-space extreme ray, in order
};
CarriedCone carried_cone(const VeeringTriangulation& tri, const H1Presentation& h);

bool is_flippable(const VeeringTriangulation& tri, const ZVec& w, int tetra);
// Moves one sheet from the bottom faces of `tetra` to its top faces; throws
// NotCarried or NotFlippable.
ZVec upward_flip(const VeeringTriangulation& tri, const H1Presentation& h, const ZVec& w, int tetra);

enum class FiberVerdict { Fiber, NotFiber, Empty };
const char* verdict_name(FiberVerdict v);

struct FlipCertificate {
    FiberVerdict verdict = FiberVerdict::Empty;
    ZVec start;
    // Fiber: flips from start to the first state of the cycle, then the cycle itself.
    std::vector<int> prefix, cycle;
    // NotFiber: flips from start to an unflippable vector, and a stable loop extracted from it.
    std::vector<int> to_terminal;
    ZVec terminal;
    std::optional<StableLoop> loop;
};
// Exhaustive search of the flip digraph from w, whose state space is finite
// because flips conserve total weight.
FlipCertificate is_fiber_class(const VeeringTriangulation& tri, const H1Presentation& h, const ZVec& w);
// Re-applies the recorded flips and checks each claim of the certificate.
bool replay(const VeeringTriangulation& tri, const H1Presentation& h, const FlipCertificate& cert);

// One sheet end at an edge: sheet `sheet` of `face`, through its face edge `face_edge`.
struct SheetEnd {
    int face, face_edge, sheet;
    bool operator==(const SheetEnd&) const = default;
};

class CarriedSurface {
public:
    const ZVec& weights() const { return w_; }
    int num_sheets() const { return int(sheet_face_.size()); }
    int sheet_id(int face, int sheet) const { return offset_[face] + sheet; }
    int sheet_face(int id) const { return sheet_face_[id]; }
    // Stack at one side of an edge, bottom to top: fan order, then sheet index.
    const std::vector<SheetEnd>& stack(int e, int side) const { return stacks_[e][side]; }
    // The sheet end glued to a given one across its edge.
    SheetEnd matched(const SheetEnd& end) const;
    bool is_large(const SheetEnd& end) const;
    // A matched pair of two Large ends, the large branches of St(S).
    bool has_large_branch() const;
    int num_components() const;
    // V - E + F of the truncated cell structure: one hexagon per sheet.
    int euler_characteristic() const;

private:
    friend CarriedSurface reconstruct_sheets(const VeeringTriangulation&, const H1Presentation&, const ZVec&);
    const VeeringTriangulation* tri_ = nullptr;
    ZVec w_;
    std::vector<int> offset_, sheet_face_;
    std::vector<std::array<std::vector<SheetEnd>, 2>> stacks_;
    std::vector<std::array<std::array<int, 2>, 3>> where_;  // per sheet id and face edge: side, index
};
// The triangulation must outlive the surface. Throws NotCarried.
CarriedSurface reconstruct_sheets(const VeeringTriangulation& tri, const H1Presentation& h, const ZVec& w);

// Follows large half-branches from `start_sheet` until the route closes up and
// returns the closed part as a stable loop. Throws Flippable when St(S) has a large branch.
StableLoop extract_stable_loop(const StableTrack& track, const CarriedSurface& surface, int start_sheet = 0);

}  // namespace veerkit
