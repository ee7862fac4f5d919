#include "veerkit/duality.hpp"

namespace veerkit {

const char* verdict_name(DualityVerdict v) {
    switch (v) {
        case DualityVerdict::Equal: return "EQUAL";
        case DualityVerdict::Fail: return "FAIL";
        case DualityVerdict::Informational: return "INFORMATIONAL";
    }
    return "?";
}

const char* witness_name(DualityWitness::Kind k) {
    switch (k) {
        case DualityWitness::Kind::NoLoops: return "no_loops";
        case DualityWitness::Kind::LoopOutsideDual: return "loop_outside_dual";
        case DualityWitness::Kind::DualRayOutsideLoopCone: return "dual_ray_outside_loop_cone";
    }
    return "?";
}

DualityComparison compare_duality(const RationalCone& carried, const std::vector<ZVec>& loop_classes) {
    const int b = carried.dim();
    DualityComparison c{RationalCone::from_generators(b, loop_classes), carried.dual(), true, true, {}};
    if (loop_classes.empty()) c.witnesses.push_back({DualityWitness::Kind::NoLoops, -1, -1, {}});
    for (size_t i = 0; i < loop_classes.size(); ++i) {
        if (c.dual_cone.contains(loop_classes[i])) continue;
        c.loops_in_dual = false;
        DualityWitness w{DualityWitness::Kind::LoopOutsideDual, int(i), -1, loop_classes[i]};
        for (size_t r = 0; r < carried.extreme_rays().size() && w.ray < 0; ++r)
            if (dot(carried.extreme_rays()[r], loop_classes[i]) < 0) w.ray = int(r);
        c.witnesses.push_back(std::move(w));
    }
    for (const ZVec& g : c.dual_cone.generators()) {
        if (c.loop_cone.contains(g)) continue;
        c.dual_in_loops = false;
        c.witnesses.push_back({DualityWitness::Kind::DualRayOutsideLoopCone, -1, -1, g});
    }
    return c;
}

DualityVerdict duality_verdict(const DualityComparison& c, bool layered) {
    for (const auto& w : c.witnesses)
        if (w.kind == DualityWitness::Kind::NoLoops) return DualityVerdict::Fail;
    if (!layered) return DualityVerdict::Informational;
    return c.equal() ? DualityVerdict::Equal : DualityVerdict::Fail;
}

DualityReport run_duality_check(const VeeringTriangulation& tri, const std::string& id, bool layered) {
    DualityReport r;
    r.id = id;
    r.layered = layered;
    r.num_tetrahedra = tri.num_tetrahedra();
    const H1Presentation h = homology_h1(tri);
    r.free_rank = h.free_rank;
    r.torsion = h.torsion;
    const CarriedCone cc = carried_cone(tri, h);
    r.carried = cc.projected;
    const StableTrack track(tri);
    r.loops = enumerate_minimal_stable_loops(track);
    for (const auto& l : r.loops) {
        r.loop_classes.push_back(loop_class(h, transversalize(track, l)));
        std::vector<Int> row;
        for (const ZVec& ray : r.carried.extreme_rays()) row.push_back(dot(ray, r.loop_classes.back()));
        r.pairings.push_back(std::move(row));
    }
    r.comparison = compare_duality(r.carried, r.loop_classes);
    r.certificates_valid = cc.weights.certify().valid() && r.carried.certify().valid() &&
                           r.comparison.loop_cone.certify().valid() && r.comparison.dual_cone.certify().valid();
    r.verdict = duality_verdict(r.comparison, layered);
    return r;
}

}  // namespace veerkit
