#pragma once

#include <array>
#include <vector>

#include "veerkit/boundary.hpp"
#include "veerkit/triangulation.hpp"

namespace veerkit {

// Transition of the stable digraph: leave `from` through its Small slot at
// `edge` (face edge `face_edge`, fan `side`, position `pos`) and continue into
// the fan top `to` on the opposite side.
struct Arc {
    int id;
    int from;
    int face_edge;
    int edge;
    int side;
    int pos;
    int to;
};

// Cyclic sequence of arc ids; canonical form starts at the least arc id.
struct StableLoop {
    std::vector<int> arcs;
    auto operator<=>(const StableLoop&) const = default;
};

class StableTrack {
public:
    // The triangulation must outlive the track.
    explicit StableTrack(const VeeringTriangulation& tri);

    const VeeringTriangulation& triangulation() const { return *tri_; }
    int num_nodes() const { return tri_->num_faces(); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(int id) const { return arcs_[id]; }
    // The two arcs leaving a face, in increasing face-edge order.
    std::array<int, 2> out_arcs(int face) const { return {2 * face, 2 * face + 1}; }
    int large_slot(int face) const { return tri_->large_face_edge(face); }
    // Arc leaving `face` through face edge j, or -1 when j is the Large slot.
    int arc_at(int face, int j) const;

    bool is_closed(const StableLoop& loop) const;
    bool is_minimal(const StableLoop& loop) const;
    std::vector<int> faces(const StableLoop& loop) const;
    std::vector<int> edges(const StableLoop& loop) const;
    // Face edge of the target through which an arc enters; it is the target's Large slot.
    int entry_slot(int arc_id) const;

private:
    const VeeringTriangulation* tri_;
    std::vector<Arc> arcs_;
};

StableLoop canonical(StableLoop loop);

// All directed cycles visiting each face at most once, sorted. An edge may be
// crossed twice, once in each direction.
std::vector<StableLoop> enumerate_minimal_stable_loops(const StableTrack& track);

// Exhaustive check over all arc subsets; throws SizeGuard above 20 arcs.
std::vector<StableLoop> brute_force_minimal_loops(const StableTrack& track);

// Loop through the faces of a ladderpole, in pole order.
StableLoop ladderpole_stable_loop(const StableTrack& track, const BoundaryComplex& boundary, int ladder, int pole);

// Cut a closed route at repeated faces into minimal loops with the same arc multiset.
std::vector<StableLoop> decompose_stable_loop(const StableTrack& track, const StableLoop& loop);

}  // namespace veerkit
