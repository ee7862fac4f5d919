#include "veerkit/carried.hpp"

#include <map>
#include <numeric>

#include "veerkit/errors.hpp"

namespace veerkit {

CarriedCone carried_cone(const VeeringTriangulation& tri, const H1Presentation& h) {
    const int nf = tri.num_faces();
    std::vector<ZVec> nonneg, branch;
    for (int f = 0; f < nf; ++f) {
        ZVec r(nf);
        r[f] = 1;
        nonneg.push_back(r);
    }
    for (int e = 0; e < h.spine.D2.cols(); ++e) branch.push_back(h.spine.D2.col(e));
    CarriedCone c{RationalCone::from_inequalities(nf, nonneg, branch), {}, {}};
    for (const ZVec& r : c.weights.extreme_rays()) c.ray_projections.push_back(carried_class(h, r));
    c.projected = RationalCone::from_generators(h.free_rank, c.ray_projections);
    return c;
}

bool is_flippable(const VeeringTriangulation& tri, const ZVec& w, int tetra) {
    for (int f : tri.bottom_faces(tetra))
        if (w[f] < 1) return false;
    return true;
}

namespace {

ZVec flip_unchecked(const VeeringTriangulation& tri, ZVec w, int tetra) {
    for (int f : tri.bottom_faces(tetra)) w[f] -= 1;
    for (int f : tri.top_faces(tetra)) w[f] += 1;
    return w;
}

bool is_integral_carried(const H1Presentation& h, const ZVec& w) { return is_carried(h, w); }

}  // namespace

ZVec upward_flip(const VeeringTriangulation& tri, const H1Presentation& h, const ZVec& w, int tetra) {
    if (int(w.size()) != tri.num_faces() || !is_integral_carried(h, w))
        throw NotCarried("weight vector is not carried");
    if (tetra < 0 || tetra >= tri.num_tetrahedra()) throw NotFlippable("no tetrahedron " + std::to_string(tetra));
    if (!is_flippable(tri, w, tetra))
        throw NotFlippable("a bottom face of tetrahedron " + std::to_string(tetra) + " has weight 0");
    return flip_unchecked(tri, w, tetra);
}

const char* verdict_name(FiberVerdict v) {
    switch (v) {
        case FiberVerdict::Fiber: return "fiber";
        case FiberVerdict::NotFiber: return "not_fiber";
        case FiberVerdict::Empty: return "empty";
    }
    return "?";
}

FlipCertificate is_fiber_class(const VeeringTriangulation& tri, const H1Presentation& h, const ZVec& w) {
    if (int(w.size()) != tri.num_faces() || !is_integral_carried(h, w))
        throw NotCarried("weight vector is not carried");
    FlipCertificate cert;
    cert.start = w;
    if (is_zero(w)) return cert;
    const int n = tri.num_tetrahedra();

    // Iterative depth-first search; state 1 = on the stack, 2 = finished.
    std::map<ZVec, int> state;
    struct Frame {
        ZVec w;
        int next;
        int via;  // flip that led here
    };
    std::vector<Frame> stack{{w, 0, -1}};
    state[w] = 1;
    std::optional<std::vector<int>> terminal_path;
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next == 0 && !terminal_path) {
            bool any = false;
            for (int t = 0; t < n && !any; ++t) any = is_flippable(tri, top.w, t);
            if (!any) {
                std::vector<int> path;
                for (size_t i = 1; i < stack.size(); ++i) path.push_back(stack[i].via);
                terminal_path = path;
                cert.terminal = top.w;
            }
        }
        int t = top.next;
        while (t < n && !is_flippable(tri, top.w, t)) ++t;
        if (t == n) {
            state[top.w] = 2;
            stack.pop_back();
            continue;
        }
        top.next = t + 1;
        ZVec nw = flip_unchecked(tri, top.w, t);
        auto it = state.find(nw);
        if (it == state.end()) {
            state[nw] = 1;
            stack.push_back({std::move(nw), 0, t});
            continue;
        }
        if (it->second == 1) {
            size_t k = 0;
            while (stack[k].w != nw) ++k;
            cert.verdict = FiberVerdict::Fiber;
            for (size_t i = 1; i <= k; ++i) cert.prefix.push_back(stack[i].via);
            for (size_t i = k + 1; i < stack.size(); ++i) cert.cycle.push_back(stack[i].via);
            cert.cycle.push_back(t);
            return cert;
        }
    }
    cert.verdict = FiberVerdict::NotFiber;
    cert.to_terminal = *terminal_path;
    StableTrack track(tri);
    cert.loop = extract_stable_loop(track, reconstruct_sheets(tri, h, cert.terminal));
    return cert;
}

bool replay(const VeeringTriangulation& tri, const H1Presentation& h, const FlipCertificate& cert) {
    if (!is_carried(h, cert.start)) return false;
    auto apply = [&](ZVec w, const std::vector<int>& flips, bool& ok) {
        for (int t : flips) {
            if (!ok || t < 0 || t >= tri.num_tetrahedra() || !is_flippable(tri, w, t)) {
                ok = false;
                return w;
            }
            w = flip_unchecked(tri, w, t);
        }
        return w;
    };
    bool ok = true;
    switch (cert.verdict) {
        case FiberVerdict::Empty: return is_zero(cert.start);
        case FiberVerdict::Fiber: {
            ZVec entry = apply(cert.start, cert.prefix, ok);
            ZVec back = apply(entry, cert.cycle, ok);
            return ok && !cert.cycle.empty() && back == entry;
        }
        case FiberVerdict::NotFiber: {
            ZVec end = apply(cert.start, cert.to_terminal, ok);
            if (!ok || end != cert.terminal) return false;
            for (int t = 0; t < tri.num_tetrahedra(); ++t)
                if (is_flippable(tri, end, t)) return false;
            if (!cert.loop) return false;
            StableTrack track(tri);
            return track.is_closed(*cert.loop);
        }
    }
    return false;
}

CarriedSurface reconstruct_sheets(const VeeringTriangulation& tri, const H1Presentation& h, const ZVec& w) {
    if (int(w.size()) != tri.num_faces() || !is_carried(h, w)) throw NotCarried("weight vector is not carried");
    CarriedSurface s;
    s.tri_ = &tri;
    s.w_ = w;
    const int nf = tri.num_faces(), ne = tri.num_edges();
    s.offset_.resize(nf + 1);
    for (int f = 0; f < nf; ++f) {
        s.offset_[f + 1] = s.offset_[f] + int(w[f].get_si());
        for (int k = 0; k < w[f]; ++k) s.sheet_face_.push_back(f);
    }
    s.where_.resize(s.sheet_face_.size());
    s.stacks_.resize(ne);
    for (int e = 0; e < ne; ++e)
        for (int side = 0; side < 2; ++side)
            for (const FaceInc& fi : tri.fan(e, side))
                for (int k = 0; k < w[fi.face]; ++k) {
                    s.where_[s.offset_[fi.face] + k][fi.face_edge] = {side, int(s.stacks_[e][side].size())};
                    s.stacks_[e][side].push_back({fi.face, fi.face_edge, k});
                }
    for (int e = 0; e < ne; ++e)
        if (s.stacks_[e][0].size() != s.stacks_[e][1].size())
            throw NotCarried("stack heights differ at edge " + std::to_string(e));
    return s;
}

SheetEnd CarriedSurface::matched(const SheetEnd& end) const {
    const auto [side, idx] = where_[sheet_id(end.face, end.sheet)][end.face_edge];
    const int e = tri_->fan_slot(end.face, end.face_edge).edge;
    return stacks_[e][1 - side][idx];
}

bool CarriedSurface::is_large(const SheetEnd& end) const { return tri_->large_face_edge(end.face) == end.face_edge; }

bool CarriedSurface::has_large_branch() const {
    for (const auto& st : stacks_)
        for (size_t i = 0; i < st[0].size(); ++i)
            if (is_large(st[0][i]) && is_large(st[1][i])) return true;
    return false;
}

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
    int classes() {
        int c = 0;
        for (int i = 0; i < int(p.size()); ++i) c += find(i) == i;
        return c;
    }
};

}  // namespace

int CarriedSurface::num_components() const {
    UnionFind uf(num_sheets());
    for (const auto& st : stacks_)
        for (size_t i = 0; i < st[0].size(); ++i)
            uf.unite(sheet_id(st[0][i].face, st[0][i].sheet), sheet_id(st[1][i].face, st[1][i].sheet));
    return uf.classes();
}

int CarriedSurface::euler_characteristic() const {
    // Hexagon corners: (sheet, face edge, end of the edge class), 6 per sheet.
    const int F = num_sheets();
    UnionFind uf(6 * F);
    auto corner = [&](const SheetEnd& s, int end) { return 6 * sheet_id(s.face, s.sheet) + 2 * s.face_edge + end; };
    int glued = 0;
    for (const auto& st : stacks_)
        for (size_t i = 0; i < st[0].size(); ++i) {
            ++glued;
            for (int end = 0; end < 2; ++end) uf.unite(corner(st[0][i], end), corner(st[1][i], end));
        }
    // Corners are indexed by edge-class end, so glued pairs line up directly.
    const int V = uf.classes();
    const int E = glued + 3 * F;  // glued edges plus boundary arcs at the truncated corners
    return V - E + F;
}

StableLoop extract_stable_loop(const StableTrack& track, const CarriedSurface& surface, int start_sheet) {
    if (surface.has_large_branch()) throw Flippable("St(S) has a large branch");
    if (start_sheet < 0 || start_sheet >= surface.num_sheets()) throw NotCarried("no sheet " + std::to_string(start_sheet));
    const VeeringTriangulation& tri = track.triangulation();
    std::map<int, int> seen;  // sheet id -> step index
    std::vector<int> arcs;    // arcs in route order, each oriented back along the route
    int cur = start_sheet;
    while (!seen.count(cur)) {
        seen[cur] = int(arcs.size());
        const int f = surface.sheet_face(cur);
        SheetEnd out{f, tri.large_face_edge(f), cur - surface.sheet_id(f, 0)};
        SheetEnd in = surface.matched(out);
        int id = track.arc_at(in.face, in.face_edge);
        if (id < 0) throw Flippable("matched end is Large");
        arcs.push_back(id);
        cur = surface.sheet_id(in.face, in.sheet);
    }
    StableLoop loop{std::vector<int>(arcs.rbegin(), arcs.rend() - seen[cur])};
    return canonical(loop);
}

}  // namespace veerkit
