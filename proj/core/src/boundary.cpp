#include "veerkit/boundary.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "veerkit/errors.hpp"

namespace veerkit {

namespace {

using Vec3 = std::array<long, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 scale(long k, const Vec3& a) { return {k * a[0], k * a[1], k * a[2]}; }

long det(const Vec3& a, const Vec3& b, const Vec3& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Model of a taut tetrahedron: the top pi-edge runs north-south above the
// bottom pi-edge, which runs east-west; handedness follows the orientation.
std::array<Vec3, 4> model_positions(const VeeringTriangulation& tri, int t) {
    const Vec3 N{0, 1, 1}, S{0, -1, 1}, E{1, 0, 0}, W{-1, 0, 0};
    auto top = kEdgeVertices[tri.top_pi(t)];
    auto bot = kEdgeVertices[tri.bottom_pi(t)];
    std::array<Vec3, 4> p;
    p[top[0]] = N;
    p[top[1]] = S;
    p[bot[0]] = E;
    p[bot[1]] = W;
    long d = det(sub(p[1], p[0]), sub(p[2], p[0]), sub(p[3], p[0]));
    if ((d > 0 ? 1 : -1) != -tri.orientation(t)) std::swap(p[bot[0]], p[bot[1]]);
    return p;
}

std::array<int, 3> others(int v) {
    std::array<int, 3> o{};
    int k = 0;
    for (int x = 0; x < 4; ++x)
        if (x != v) o[k++] = x;
    return o;
}

int index_in(const std::array<int, 3>& o, int x) {
    for (int k = 0; k < 3; ++k)
        if (o[k] == x) return k;
    return -1;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

const char* kind_name(Kind k) { return k == Kind::Upward ? "upward" : "downward"; }

BoundaryComplex build_boundary(const VeeringTriangulation& tri) {
    const int n = tri.num_tetrahedra();
    BoundaryComplex bc;
    bc.num_cusps_ = tri.num_cusps();
    bc.switch_cusp_.assign(2 * tri.num_edges(), -1);

    std::vector<std::array<Vec3, 4>> pos(n);
    for (int t = 0; t < n; ++t) pos[t] = model_positions(tri, t);

    for (int t = 0; t < n; ++t) {
        auto top = kEdgeVertices[tri.top_pi(t)];
        auto bot = kEdgeVertices[tri.bottom_pi(t)];
        for (int v = 0; v < 4; ++v) {
            FlatTriangle ft;
            ft.tet = t;
            ft.vertex = v;
            bool up = v == top[0] || v == top[1];
            ft.kind = up ? Kind::Upward : Kind::Downward;
            ft.cusp = tri.cusp_of(t, v);
            const auto& e = up ? top : bot;
            ft.pi_corner = e[0] == v ? e[1] : e[0];
            ft.branches = {-1, -1, -1};
            bc.triangles_.push_back(ft);
            for (int x : others(v)) bc.switch_cusp_[tri.switch_id(t, v, x)] = ft.cusp;
        }
    }

    for (int t = 0; t < n; ++t) {
        for (int v = 0; v < 4; ++v) {
            auto ov = others(v);
            for (int x : ov) {
                if (bc.triangles_[4 * t + v].branches[index_in(ov, x)] >= 0) continue;
                const Gluing& g = tri.gluing(t, x);
                FlatSide s0{t, v, x}, s1{g.tet, g.perm[v], g.perm[x]};
                TrackBranch br;
                br.sides = {std::min(s0, s1), std::max(s0, s1)};
                br.triangles = {4 * br.sides[0].tet + br.sides[0].vertex, 4 * br.sides[1].tet + br.sides[1].vertex};
                br.face = tri.face_of(t, x);
                // orientation, computed independently on both sides
                std::array<std::pair<int, int>, 2> rl;
                for (int k = 0; k < 2; ++k) {
                    const FlatSide& s = br.sides[k];
                    const auto& P = pos[s.tet];
                    int y = -1, z = -1;
                    for (int w : others(s.vertex))
                        if (w != s.opp) (y < 0 ? y : z) = w;
                    Vec3 ux = sub(P[s.opp], P[s.vertex]), uy = sub(P[y], P[s.vertex]), uz = sub(P[z], P[s.vertex]);
                    Vec3 n_in = add(add(ux, uy), uz);
                    Vec3 c = sub(add(uy, uz), scale(2, ux));
                    if (!tri.is_top_face(s.tet, s.opp)) c = scale(-1, c);
                    long d = det(sub(uy, uz), c, n_in);
                    if (d == 0) throw ConventionError("degenerate flat-triangle model");
                    int r = d > 0 ? y : z, l = d > 0 ? z : y;
                    rl[k] = {tri.switch_id(s.tet, s.vertex, r), tri.switch_id(s.tet, s.vertex, l)};
                }
                if (rl[0] != rl[1])
                    throw ConventionError("boundary branch orientation disagrees across face " + std::to_string(br.face));
                br.right_switch = rl[0].first;
                br.left_switch = rl[0].second;
                br.rung = bc.triangles_[br.triangles[0]].kind == bc.triangles_[br.triangles[1]].kind;
                int id = int(bc.branches_.size());
                bc.branches_.push_back(br);
                for (const FlatSide& s : br.sides)
                    bc.triangles_[4 * s.tet + s.vertex].branches[index_in(others(s.vertex), s.opp)] = id;
            }
        }
    }

    bc.ladders_ = decompose_ladders(bc);
    for (size_t l = 0; l < bc.ladders_.size(); ++l)
        for (int tr : bc.ladders_[l].triangles) bc.triangles_[tr].ladder = int(l);
    return bc;
}

std::vector<Ladder> decompose_ladders(const BoundaryComplex& bc) {
    const auto& tris = bc.triangles();
    const auto& brs = bc.branches();
    const int nt = int(tris.size());

    for (int i = 0; i < nt; ++i) {
        int poles = 0;
        for (int b : tris[i].branches) poles += !brs[b].rung;
        if (poles != 1)
            throw StructureError("flat triangle (" + std::to_string(tris[i].tet) + "," + std::to_string(tris[i].vertex) +
                                 ") has " + std::to_string(poles) + " ladderpole sides");
    }

    UnionFind uf(nt);
    for (const TrackBranch& b : brs)
        if (b.rung) uf.unite(b.triangles[0], b.triangles[1]);

    std::vector<Ladder> ladders;
    std::vector<bool> seen(nt, false);
    for (int start = 0; start < nt; ++start) {
        if (seen[start]) continue;
        Ladder lad;
        lad.cusp = tris[start].cusp;
        lad.kind = tris[start].kind;
        // walk across rungs; at the start take the rung with the lesser id
        int prev_branch = -1, cur = start;
        do {
            if (seen[cur]) throw StructureError("ladder is not an annulus");
            seen[cur] = true;
            lad.triangles.push_back(cur);
            int next_branch = -1;
            for (int b : tris[cur].branches)
                if (brs[b].rung && b != prev_branch && (next_branch < 0 || b < next_branch)) next_branch = b;
            if (next_branch < 0) next_branch = prev_branch;  // both rung sides form one branch
            const TrackBranch& nb = brs[next_branch];
            cur = nb.triangles[0] == cur ? nb.triangles[1] : nb.triangles[0];
            prev_branch = next_branch;
        } while (cur != start);
        int comp_size = 0;
        for (int i = 0; i < nt; ++i) comp_size += uf.find(i) == uf.find(start);
        if (comp_size != int(lad.triangles.size())) throw StructureError("ladder is not an annulus");
        for (size_t b = 0; b < brs.size(); ++b)
            if (brs[b].rung && uf.find(brs[b].triangles[0]) == uf.find(start)) lad.rungs.push_back(int(b));

        // ladderpoles
        std::vector<int> pole_branches;
        for (int tr : lad.triangles)
            for (int b : tris[tr].branches)
                if (!brs[b].rung) pole_branches.push_back(b);
        std::map<int, int> sw_index;
        for (int b : pole_branches)
            for (int s : {brs[b].right_switch, brs[b].left_switch}) sw_index.emplace(s, int(sw_index.size()));
        UnionFind puf(int(sw_index.size()));
        for (int b : pole_branches) puf.unite(sw_index[brs[b].right_switch], sw_index[brs[b].left_switch]);
        std::vector<int> classes;
        for (auto& [s, i] : sw_index)
            if (std::find(classes.begin(), classes.end(), puf.find(i)) == classes.end()) classes.push_back(puf.find(i));
        if (classes.size() != 2)
            throw StructureError("ladder has " + std::to_string(classes.size()) + " ladderpoles, expected 2");
        int left_class = -1, right_class = -1;
        for (int r : lad.rungs) {
            auto lc = sw_index.find(brs[r].left_switch), rc = sw_index.find(brs[r].right_switch);
            if (lc == sw_index.end() || rc == sw_index.end()) throw StructureError("rung does not end on ladderpoles");
            int l = puf.find(lc->second), rr = puf.find(rc->second);
            if (l == rr) throw StructureError("rung does not traverse its ladder");
            if (left_class < 0) left_class = l, right_class = rr;
            if (l != left_class || rr != right_class) throw ConventionError("rungs of a ladder are not coherently oriented");
        }
        for (int p = 0; p < 2; ++p) {
            int cls = p == 0 ? left_class : right_class;
            std::vector<int> mine;
            for (int b : pole_branches)
                if (puf.find(sw_index[brs[b].right_switch]) == cls) mine.push_back(b);
            std::sort(mine.begin(), mine.end());
            Ladderpole pole;
            std::vector<bool> used(mine.size(), false);
            int idx = 0, at = brs[mine[0]].right_switch;
            while (true) {
                used[idx] = true;
                const TrackBranch& b = brs[mine[idx]];
                pole.branches.push_back(mine[idx]);
                pole.switches.push_back(at);
                int far = b.right_switch == at ? b.left_switch : b.right_switch;
                int nxt = -1;
                for (size_t j = 0; j < mine.size(); ++j)
                    if (!used[j] && (brs[mine[j]].right_switch == far || brs[mine[j]].left_switch == far)) {
                        nxt = int(j);
                        break;
                    }
                if (nxt < 0) break;
                idx = nxt;
                at = far;
            }
            if (pole.branches.size() != mine.size()) throw StructureError("ladderpole is not a circle");
            lad.poles[p] = std::move(pole);
        }
        ladders.push_back(std::move(lad));
    }
    return ladders;
}

VeeringRuleReport check_veering_rule(const BoundaryComplex& bc, const VeeringTriangulation& tri, bool upward_only) {
    VeeringRuleReport rep;
    for (size_t l = 0; l < bc.ladders().size(); ++l) {
        const Ladder& lad = bc.ladders()[l];
        if (upward_only && lad.kind != Kind::Upward) continue;
        for (int p = 0; p < 2; ++p) {
            bool predict_right = (p == 0) == (lad.kind == Kind::Upward);
            for (int sw : lad.poles[p].switches) {
                VeeringRuleCheck c{int(l), p, sw, sw / 2, predict_right ? Colour::Right : Colour::Left, tri.colour(sw / 2)};
                if (c.predicted != c.actual) ++rep.failures;
                rep.checks.push_back(c);
            }
        }
    }
    return rep;
}

bool boundary_positively_carried(const BoundaryComplex& bc, const std::vector<Int>& weights) {
    std::vector<Int> balance(bc.num_switches());
    for (const TrackBranch& b : bc.branches()) {
        const Int& w = weights[b.face];
        if (w < 0) return false;
        balance[b.left_switch] += w;
        balance[b.right_switch] -= w;
    }
    return std::all_of(balance.begin(), balance.end(), [](const Int& x) { return x == 0; });
}

}  // namespace veerkit
