#pragma once

#include "veerkit/linalg.hpp"
#include "veerkit/stable_track.hpp"
#include "veerkit/triangulation.hpp"

namespace veerkit {

// Chain complex of the dual spine: D1 maps face chains to tetrahedron chains
// (rows are tetrahedra), D2 maps edge chains to face chains (rows are faces).
struct DualSpine {
    IntMatrix D1;
    IntMatrix D2;
};
DualSpine dual_spine(const VeeringTriangulation& tri);

// H1 = ker D1 / im D2 presented through Smith normal forms.
struct H1Presentation {
    DualSpine spine;
    int free_rank = 0;
    ZVec torsion;             // invariant factors greater than 1
    IntMatrix projection;     // free_rank x faces: a face cycle to its free coordinates
    IntMatrix torsion_map;    // torsion.size() x faces, read modulo the matching factor
    IntMatrix cycle_basis;    // faces x free_rank: cycles dual to the free coordinates
};
H1Presentation homology_h1(const VeeringTriangulation& tri);

bool is_cycle(const H1Presentation& h, const ZVec& word);
// Free part of the class of a face cycle; throws NotACycle.
ZVec loop_class(const H1Presentation& h, const ZVec& word);
// Torsion coordinates of the class of a face cycle, each reduced modulo its factor.
ZVec torsion_class(const H1Presentation& h, const ZVec& word);

// Nonnegative face weights satisfying the branch equations.
bool is_carried(const H1Presentation& h, const QVec& w);
bool is_carried(const H1Presentation& h, const ZVec& w);
// Coordinates of a carried weight vector's class, dual to the free H1 basis.
QVec carried_class(const H1Presentation& h, const QVec& w);
ZVec carried_class(const H1Presentation& h, const ZVec& w);

// Closed positive transversal obtained by pushing each turn upward through its fan.
ZVec transversalize(const StableTrack& track, const StableLoop& loop);
// Faces crossed by a single turn.
std::vector<int> turn_crossings(const StableTrack& track, int arc_id);

// Intersection pairing of a carried weight vector with a face cycle; throws
// NotCarried or NotACycle.
Rat pairing(const H1Presentation& h, const QVec& w, const ZVec& word);
Int pairing(const H1Presentation& h, const ZVec& w, const ZVec& word);

}  // namespace veerkit
