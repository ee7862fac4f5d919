#include "veerkit/stable_track.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "veerkit/errors.hpp"

namespace veerkit {

StableTrack::StableTrack(const VeeringTriangulation& tri) : tri_(&tri) {
    for (int f = 0; f < tri.num_faces(); ++f) {
        for (int j = 0; j < 3; ++j) {
            if (j == tri.large_face_edge(f)) continue;
            const FanSlot& s = tri.fan_slot(f, j);
            Arc a{int(arcs_.size()), f, j, s.edge, s.side, s.pos, tri.fan(s.edge, 1 - s.side).back().face};
            arcs_.push_back(a);
        }
    }
}

int StableTrack::arc_at(int face, int j) const {
    for (int id : out_arcs(face))
        if (arcs_[id].face_edge == j) return id;
    return -1;
}

bool StableTrack::is_closed(const StableLoop& loop) const {
    if (loop.arcs.empty()) return false;
    for (size_t i = 0; i < loop.arcs.size(); ++i)
        if (arcs_[loop.arcs[i]].to != arcs_[loop.arcs[(i + 1) % loop.arcs.size()]].from) return false;
    return true;
}

std::vector<int> StableTrack::faces(const StableLoop& loop) const {
    std::vector<int> f;
    for (int a : loop.arcs) f.push_back(arcs_[a].from);
    return f;
}

std::vector<int> StableTrack::edges(const StableLoop& loop) const {
    std::vector<int> e;
    for (int a : loop.arcs) e.push_back(arcs_[a].edge);
    return e;
}

bool StableTrack::is_minimal(const StableLoop& loop) const {
    auto f = faces(loop);
    std::sort(f.begin(), f.end());
    return std::adjacent_find(f.begin(), f.end()) == f.end();
}

int StableTrack::entry_slot(int arc_id) const {
    const Arc& a = arcs_[arc_id];
    const auto& fan = tri_->fan(a.edge, 1 - a.side);
    return fan.back().face_edge;
}

StableLoop canonical(StableLoop loop) {
    if (loop.arcs.empty()) return loop;
    auto it = std::min_element(loop.arcs.begin(), loop.arcs.end());
    std::rotate(loop.arcs.begin(), it, loop.arcs.end());
    return loop;
}

std::vector<StableLoop> enumerate_minimal_stable_loops(const StableTrack& track) {
    const int nf = track.num_nodes();
    std::vector<StableLoop> out;
    std::vector<bool> face_used(nf);
    std::vector<int> path;
    for (int start = 0; start < nf; ++start) {
        // depth-first search over paths from `start` through faces greater than `start`
        auto dfs = [&](auto&& self, int face) -> void {
            for (int id : track.out_arcs(face)) {
                const Arc& a = track.arc(id);
                if (a.to == start) {
                    path.push_back(id);
                    out.push_back(canonical(StableLoop{path}));
                    path.pop_back();
                    continue;
                }
                if (a.to < start || face_used[a.to]) continue;
                face_used[a.to] = true;
                path.push_back(id);
                self(self, a.to);
                path.pop_back();
                face_used[a.to] = false;
            }
        };
        face_used[start] = true;
        dfs(dfs, start);
        face_used[start] = false;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<StableLoop> brute_force_minimal_loops(const StableTrack& track) {
    const int na = int(track.arcs().size());
    if (na > 20) throw SizeGuard("brute-force loop enumeration is limited to 20 arcs");
    std::vector<StableLoop> out;
    for (unsigned mask = 1; mask < (1u << na); ++mask) {
        std::map<int, int> succ;
        std::set<int> in_faces;
        bool ok = true;
        for (int id = 0; id < na && ok; ++id) {
            if (!(mask >> id & 1)) continue;
            const Arc& a = track.arc(id);
            ok = succ.emplace(a.from, id).second && in_faces.insert(a.to).second;
        }
        if (!ok) continue;
        std::set<int> out_faces;
        for (auto& [f, id] : succ) out_faces.insert(f);
        if (out_faces != in_faces) continue;
        // single cycle?
        StableLoop loop;
        int f = succ.begin()->first;
        do {
            int id = succ[f];
            loop.arcs.push_back(id);
            f = track.arc(id).to;
        } while (f != succ.begin()->first);
        if (loop.arcs.size() != succ.size()) continue;
        out.push_back(canonical(loop));
    }
    std::sort(out.begin(), out.end());
    return out;
}

StableLoop ladderpole_stable_loop(const StableTrack& track, const BoundaryComplex& bc, int ladder, int pole) {
    const VeeringTriangulation& tri = track.triangulation();
    const Ladderpole& lp = bc.ladders().at(ladder).poles.at(pole);
    const int k = lp.length();
    // Face edges of a pole branch's face that sit at a given switch.
    auto slots_at = [&](int branch, int sw) {
        std::vector<int> js;
        const FlatSide& s = bc.branches()[branch].sides[0];
        for (int y = 0; y < 4; ++y) {
            if (y == s.vertex || y == s.opp) continue;
            if (tri.switch_id(s.tet, s.vertex, y) == sw) js.push_back(tri.face_edge_index(s.tet, s.opp, s.vertex, y));
        }
        return js;
    };
    for (int dir : {1, -1}) {
        StableLoop loop;
        for (int i = 0; i < k; ++i) {
            int bi = dir > 0 ? i : (k - i) % k;
            int bn = dir > 0 ? (i + 1) % k : (k - i - 1) % k;
            // shared switch between consecutive branches in traversal order
            int sw = dir > 0 ? lp.switches[(i + 1) % k] : lp.switches[bi];
            int face = bc.branches()[lp.branches[bi]].face;
            int next_face = bc.branches()[lp.branches[bn]].face;
            int found = -1;
            for (int j : slots_at(lp.branches[bi], sw)) {
                int id = track.arc_at(face, j);
                if (id >= 0 && track.arc(id).to == next_face) found = id;
            }
            if (found < 0) break;
            loop.arcs.push_back(found);
        }
        if (int(loop.arcs.size()) == k && track.is_closed(loop)) return canonical(loop);
    }
    throw ConventionError("faces along ladderpole " + std::to_string(pole) + " of ladder " + std::to_string(ladder) +
                          " do not chain into a stable loop");
}

std::vector<StableLoop> decompose_stable_loop(const StableTrack& track, const StableLoop& loop) {
    if (!track.is_closed(loop)) throw ConventionError("route is not closed");
    std::vector<StableLoop> parts;
    std::vector<int> path;
    std::map<int, int> at;  // face -> index in path of the arc leaving it
    at[track.arc(loop.arcs[0]).from] = 0;
    for (int id : loop.arcs) {
        path.push_back(id);
        int f = track.arc(id).to;
        auto it = at.find(f);
        if (it == at.end()) {
            at[f] = int(path.size());
            continue;
        }
        int p = it->second;
        StableLoop part{std::vector<int>(path.begin() + p, path.end())};
        for (int a : part.arcs) at.erase(track.arc(a).from);
        path.resize(p);
        at[f] = p;
        parts.push_back(canonical(part));
    }
    if (!path.empty()) throw ConventionError("route does not decompose into closed loops");
    std::sort(parts.begin(), parts.end());
    return parts;
}

}  // namespace veerkit
