#pragma once

#include <string>
#include <vector>

#include "veerkit/carried.hpp"
#include "veerkit/cones.hpp"
#include "veerkit/homology.hpp"
#include "veerkit/stable_track.hpp"
#include "veerkit/triangulation.hpp"

namespace veerkit {

enum class DualityVerdict { Equal, Fail, Informational };
const char* verdict_name(DualityVerdict v);

struct DualityWitness {
    enum class Kind { NoLoops, LoopOutsideDual, DualRayOutsideLoopCone };
    Kind kind;
    int loop = -1;   // LoopOutsideDual: index into the loop list
    int ray = -1;    // LoopOutsideDual: carried ray paired negatively
    ZVec vector;     // the offending class or dual generator
};
const char* witness_name(DualityWitness::Kind k);

// Comparison of cone(loop classes) with the dual of the carried cone, both in
// free H1 coordinates.
struct DualityComparison {
    RationalCone loop_cone, dual_cone;
    bool loops_in_dual = false;
    bool dual_in_loops = false;
    std::vector<DualityWitness> witnesses;
    bool equal() const { return loops_in_dual && dual_in_loops && witnesses.empty(); }
};
DualityComparison compare_duality(const RationalCone& carried, const std::vector<ZVec>& loop_classes);

// Fail without loops or when a layered input has unequal cones; Informational for
// inputs not known to be layered.
DualityVerdict duality_verdict(const DualityComparison& c, bool layered);

struct DualityReport {
    std::string id;
    bool layered = false;
    int num_tetrahedra = 0;
    int free_rank = 0;
    ZVec torsion;
    RationalCone carried;                    // projected carried cone, H2 coordinates
    std::vector<StableLoop> loops;           // minimal stable loops, canonical order
    std::vector<ZVec> loop_classes;          // free H1 coordinates, one per loop
    std::vector<std::vector<Int>> pairings;  // loops x extreme rays of the carried cone
    DualityComparison comparison;
    bool certificates_valid = false;
    DualityVerdict verdict = DualityVerdict::Fail;
};

// `layered` records whether the input is certified layered; otherwise the verdict
// is Informational whatever the comparison says.
DualityReport run_duality_check(const VeeringTriangulation& tri, const std::string& id, bool layered);

}  // namespace veerkit
