#include "veerkit/triangulation.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "veerkit/errors.hpp"

namespace veerkit {

namespace {

std::array<Perm4, 24> make_s4() {
    std::array<Perm4, 24> out;
    std::array<int, 4> p{0, 1, 2, 3};
    int k = 0;
    do {
        out[k++] = Perm4(p[0], p[1], p[2], p[3]);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

const std::array<Perm4, 24>& s4() {
    static const std::array<Perm4, 24> table = make_s4();
    return table;
}

std::array<int, 2> other_two(int a, int b) {
    std::array<int, 2> r{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != a && v != b) r[k++] = v;
    return r;
}

int pair_of_slot(int slot) { return std::min(slot, 5 - slot); }

bool slot_contains(int slot, int v) {
    return kEdgeVertices[slot][0] == v || kEdgeVertices[slot][1] == v;
}

}  // namespace

int Perm4::lex_index() const {
    const auto& t = s4();
    for (int k = 0; k < 24; ++k)
        if (t[k] == *this) return k;
    return -1;
}

Perm4 Perm4::from_lex_index(int k) { return s4().at(k); }

const char* colour_name(Colour c) { return c == Colour::Left ? "L" : "R"; }

Triangulation Triangulation::from_raw(const RawTriangulation& raw) {
    const int n = raw.size();
    if (n == 0) throw SchemaError("triangulation has no tetrahedra");
    if (int(raw.pi_pair.size()) != n)
        throw SchemaError("pi_pair has " + std::to_string(raw.pi_pair.size()) + " entries for " +
                          std::to_string(n) + " tetrahedra");
    for (int t = 0; t < n; ++t)
        if (raw.pi_pair[t] < 0 || raw.pi_pair[t] > 2)
            throw SchemaError("pi_pair entry out of range at tetrahedron " + std::to_string(t));

    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = raw.gluings[t][f];
            std::string where = "face " + std::to_string(f) + " of tetrahedron " + std::to_string(t);
            if (g.tet < 0) throw GluingError(where + " is unglued");
            if (g.tet >= n) throw GluingError(where + " names a missing tetrahedron");
            if (!g.perm.is_valid()) throw GluingError(where + " has an invalid permutation");
            if (g.tet == t && g.perm[f] == f) throw GluingError(where + " is glued to itself");
            const Gluing& back = raw.gluings[g.tet][g.perm[f]];
            if (back.tet != t || !(back.perm == g.perm.inverse()))
                throw GluingError(where + " is not glued back by the inverse permutation");
        }
    }

    Triangulation tri;
    tri.raw_ = raw;
    tri.orient_.assign(n, 0);
    for (int s = 0; s < n; ++s) {
        if (tri.orient_[s] != 0) continue;
        tri.orient_[s] = 1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int t = q.front();
            q.pop();
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = raw.gluings[t][f];
                int want = -g.perm.sign() * tri.orient_[t];
                if (tri.orient_[g.tet] == 0) {
                    tri.orient_[g.tet] = want;
                    q.push(g.tet);
                } else if (tri.orient_[g.tet] != want) {
                    throw GluingError("triangulation is not orientable");
                }
            }
        }
    }

    tri.face_of_.assign(n, {-1, -1, -1, -1});
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            if (tri.face_of_[t][f] >= 0) continue;
            const Gluing& g = raw.gluings[t][f];
            FaceClass fc;
            fc.tet = {t, g.tet};
            fc.slot = {f, g.perm[f]};
            fc.perm = g.perm;
            int k = 0;
            for (int v = 0; v < 4; ++v)
                if (v != f) fc.rep0_verts[k++] = v;
            int id = int(tri.faces_.size());
            tri.faces_.push_back(fc);
            tri.face_of_[t][f] = id;
            tri.face_of_[g.tet][g.perm[f]] = id;
        }
    }

    tri.edge_of_.assign(n, {-1, -1, -1, -1, -1, -1});
    tri.end0_.assign(n, {-1, -1, -1, -1, -1, -1});
    for (int t0 = 0; t0 < n; ++t0) {
        for (int k0 = 0; k0 < 6; ++k0) {
            if (tri.edge_of_[t0][k0] >= 0) continue;
            const int e = int(tri.edges_.size());
            EdgeClass ec;
            int a0 = kEdgeVertices[k0][0], b0 = kEdgeVertices[k0][1];
            auto cd = other_two(a0, b0);
            int t = t0, a = a0, b = b0, c = cd[0], d = cd[1];
            while (true) {
                int slot = edge_slot(a, b);
                if (tri.edge_of_[t][slot] >= 0)
                    throw GluingError("edge class " + std::to_string(e) + " is identified with itself in reverse");
                tri.edge_of_[t][slot] = e;
                tri.end0_[t][slot] = a;
                ec.corners.push_back({t, slot, a, pair_of_slot(slot) == raw.pi_pair[t]});
                const Gluing& g = raw.gluings[t][d];
                int nt = g.tet, na = g.perm[a], nb = g.perm[b], nc = g.perm[d], nd = g.perm[c];
                ec.link_faces.push_back({tri.face_of_[t][d], tri.face_edge_index(t, d, a, b)});
                t = nt, a = na, b = nb, c = nc, d = nd;
                if (t == t0 && a == a0 && b == b0) {
                    if (c != cd[0] || d != cd[1])
                        throw GluingError("edge link of class " + std::to_string(e) + " does not close up");
                    break;
                }
            }
            tri.edges_.push_back(std::move(ec));
        }
    }

    for (auto& fc : tri.faces_) {
        for (int j = 0; j < 3; ++j) {
            auto vs = tri.face_edge_vertices(int(&fc - tri.faces_.data()), 0, j);
            fc.edge[j] = tri.edge_of_[fc.tet[0]][edge_slot(vs[0], vs[1])];
        }
    }
    std::vector<int> parent(4 * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = raw.gluings[t][f];
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                int x = find(4 * t + v), y = find(4 * g.tet + g.perm[v]);
                if (x != y) parent[std::max(x, y)] = std::min(x, y);
            }
        }
    tri.cusp_of_.assign(n, {-1, -1, -1, -1});
    std::vector<int> label(4 * n, -1);
    for (int x = 0; x < 4 * n; ++x) {
        int r = find(x);
        if (label[r] < 0) label[r] = tri.num_cusps_++;
        tri.cusp_of_[x / 4][x % 4] = label[r];
    }
    return tri;
}

int Triangulation::face_edge_index(int t, int f, int a, int b) const {
    int w = -1;
    for (int v = 0; v < 4; ++v)
        if (v != f && v != a && v != b) w = v;
    const FaceClass& fc = faces_[face_of_[t][f]];
    int w0 = w;
    if (!(fc.tet[0] == t && fc.slot[0] == f)) w0 = fc.perm.inverse()[w];
    for (int j = 0; j < 3; ++j)
        if (fc.rep0_verts[j] == w0) return j;
    return -1;
}

std::array<int, 2> Triangulation::face_edge_vertices(int face, int rep, int j) const {
    const FaceClass& fc = faces_[face];
    std::array<int, 2> vs{};
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != j) vs[k++] = fc.rep0_verts[i];
    if (rep == 1) vs = {fc.perm[vs[0]], fc.perm[vs[1]]};
    return vs;
}

bool Triangulation::slot_is_pi(int t, int slot) const { return pair_of_slot(slot) == raw_.pi_pair[t]; }

Colour Triangulation::corner_colour(int t, int slot) const {
    int d = raw_.pi_pair[t];
    int left_pair = orient_[t] > 0 ? (d + 1) % 3 : (d + 2) % 3;
    return pair_of_slot(slot) == left_pair ? Colour::Left : Colour::Right;
}

int Triangulation::switch_id(int t, int v, int x) const {
    int k = edge_slot(v, x);
    return 2 * edge_of_[t][k] + (v == end0_[t][k] ? 0 : 1);
}

TautReport validate_taut(const Triangulation& tri) {
    TautReport rep;
    for (int e = 0; e < tri.num_edges(); ++e) {
        const EdgeClass& ec = tri.edge(e);
        EdgeTautCheck c{e, ec.degree(), 0, false};
        for (int i = 0; i < ec.degree(); ++i) {
            if (ec.corners[i].pi) ++c.pi_count;
            if (ec.degree() > 1 && ec.corners[i].pi && ec.corners[(i + 1) % ec.degree()].pi) c.pi_adjacent = true;
        }
        std::string name = "edge " + std::to_string(e);
        if (c.pi_count != 2) {
            rep.pass = false;
            rep.problems.push_back(name + " has angle sum " + std::to_string(c.pi_count) + "pi, expected 2pi");
        }
        if (c.pi_adjacent) {
            rep.pass = false;
            rep.problems.push_back(name + " has adjacent pi angles");
        }
        if (c.degree < 4) {
            rep.pass = false;
            rep.problems.push_back(name + " has degree " + std::to_string(c.degree) + ", expected degree >= 4");
        }
        rep.edges.push_back(c);
    }
    return rep;
}

std::vector<Colour> validate_veering(const Triangulation& tri) {
    std::vector<Colour> out(tri.num_edges(), Colour::Left);
    for (int e = 0; e < tri.num_edges(); ++e) {
        std::optional<Colour> seen;
        for (const LinkCorner& lc : tri.edge(e).corners) {
            if (lc.pi) continue;
            Colour c = tri.corner_colour(lc.tet, lc.slot);
            if (seen && *seen != c) throw VeeringError("edge " + std::to_string(e) + " sees both L and R tetrahedra");
            seen = c;
        }
        if (!seen) throw VeeringError("edge " + std::to_string(e) + " has no 0-angle corners");
        out[e] = *seen;
    }
    return out;
}

bool VeeringTriangulation::is_top_face(int t, int f) const { return is_top_[t][f]; }

std::array<int, 2> VeeringTriangulation::top_faces(int t) const {
    std::array<int, 2> r{};
    int k = 0;
    for (int f = 0; f < 4; ++f)
        if (is_top_[t][f]) r[k++] = face_of(t, f);
    return r;
}

std::array<int, 2> VeeringTriangulation::bottom_faces(int t) const {
    std::array<int, 2> r{};
    int k = 0;
    for (int f = 0; f < 4; ++f)
        if (!is_top_[t][f]) r[k++] = face_of(t, f);
    return r;
}

int VeeringTriangulation::large_edge(int face) const { return faces_[face].edge[large_j_[face]]; }

VeeringTriangulation VeeringTriangulation::build(const RawTriangulation& raw, const BuildOptions& opts) {
    return build(Triangulation::from_raw(raw), opts);
}

VeeringTriangulation VeeringTriangulation::build(const Triangulation& tri, const BuildOptions& opts) {
    TautReport taut = validate_taut(tri);
    if (!taut.pass) throw TautnessError(taut.problems.front());

    const int n = tri.num_tetrahedra();
    VeeringTriangulation vt;
    static_cast<Triangulation&>(vt) = tri;

    auto top_verts_ok = [&](int t, int slot) {
        int d = tri.pi_pair(t);
        return slot == d || slot == 5 - d;
    };
    auto face_is_top = [](int top_slot, int f) { return !slot_contains(top_slot, f); };

    vt.top_pi_.assign(n, -1);
    if (opts.top_pi) {
        if (int(opts.top_pi->size()) != n) throw SchemaError("coorientation vector has the wrong length");
        for (int t = 0; t < n; ++t) {
            if (!top_verts_ok(t, (*opts.top_pi)[t]))
                throw TautnessError("top pi-edge of tetrahedron " + std::to_string(t) + " is not a pi-edge");
            vt.top_pi_[t] = (*opts.top_pi)[t];
        }
    } else {
        for (int s = 0; s < n; ++s) {
            if (vt.top_pi_[s] >= 0) continue;
            vt.top_pi_[s] = 5 - tri.pi_pair(s);  // makes face slot 0 a top face
            std::queue<int> q;
            q.push(s);
            while (!q.empty()) {
                int t = q.front();
                q.pop();
                for (int f = 0; f < 4; ++f) {
                    const Gluing& g = tri.gluing(t, f);
                    int fp = g.perm[f];
                    bool want_top = !face_is_top(vt.top_pi_[t], f);
                    int d = tri.pi_pair(g.tet);
                    int choice = (face_is_top(d, fp) == want_top) ? d : 5 - d;
                    if (vt.top_pi_[g.tet] < 0) {
                        vt.top_pi_[g.tet] = choice;
                        q.push(g.tet);
                    } else if (vt.top_pi_[g.tet] != choice) {
                        throw NoCoorientation("coorientations cannot be propagated consistently (tetrahedron " +
                                              std::to_string(g.tet) + ")");
                    }
                }
            }
        }
    }

    vt.is_top_.assign(n, {});
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) vt.is_top_[t][f] = face_is_top(vt.top_pi_[t], f);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = tri.gluing(t, f);
            if (vt.is_top_[t][f] == vt.is_top_[g.tet][g.perm[f]])
                throw NoCoorientation("face " + std::to_string(tri.face_of(t, f)) +
                                      " has conflicting coorientations");
        }

    const int nf = tri.num_faces(), ne = tri.num_edges();
    vt.above_.assign(nf, -1);
    vt.below_.assign(nf, -1);
    for (int F = 0; F < nf; ++F) {
        const FaceClass& fc = tri.face(F);
        for (int r = 0; r < 2; ++r) {
            if (vt.is_top_[fc.tet[r]][fc.slot[r]])
                vt.below_[F] = fc.tet[r];
            else
                vt.above_[F] = fc.tet[r];
        }
    }

    vt.top_tetra_.assign(ne, -1);
    vt.bottom_tetra_.assign(ne, -1);
    for (int t = 0; t < n; ++t) {
        int eb = tri.edge_of(t, vt.top_pi_[t]);
        int et = tri.edge_of(t, 5 - vt.top_pi_[t]);
        if (vt.bottom_tetra_[eb] >= 0)
            throw TautnessError("edge " + std::to_string(eb) + " is the top pi-edge of two tetrahedra");
        if (vt.top_tetra_[et] >= 0)
            throw TautnessError("edge " + std::to_string(et) + " is the bottom pi-edge of two tetrahedra");
        vt.bottom_tetra_[eb] = t;
        vt.top_tetra_[et] = t;
    }

    vt.swap_ = opts.swap_sides;
    vt.swap_.resize(ne, false);
    vt.fans_.assign(ne, {});
    vt.fan_slot_.assign(nf, {});
    for (int e = 0; e < ne; ++e) {
        const EdgeClass& ec = tri.edge(e);
        const int deg = ec.degree();
        int ib = -1, it = -1;
        for (int i = 0; i < deg; ++i) {
            const LinkCorner& lc = ec.corners[i];
            if (lc.tet == vt.bottom_tetra_[e] && lc.slot == vt.top_pi_[lc.tet]) ib = i;
            if (lc.tet == vt.top_tetra_[e] && lc.slot == 5 - vt.top_pi_[lc.tet]) it = i;
        }
        std::array<std::vector<FaceInc>, 2> sides;
        for (int i = ib;; i = (i + 1) % deg) {
            sides[0].push_back(ec.link_faces[i]);
            if ((i + 1) % deg == it) break;
        }
        for (int i = (ib - 1 + deg) % deg;; i = (i - 1 + deg) % deg) {
            sides[1].push_back(ec.link_faces[i]);
            if (i == it) break;
        }
        // Each interior corner must have its lower fan face as a bottom face and
        // its upper fan face as a top face.
        for (int s = 0; s < 2; ++s) {
            const auto& fan = sides[s];
            for (size_t p = 0; p < fan.size(); ++p) {
                int F = fan[p].face;
                bool first = p == 0, last = p + 1 == fan.size();
                if (first && vt.below_[F] != vt.bottom_tetra_[e])
                    throw TautnessError("edge " + std::to_string(e) + " fan does not start at its bottom tetrahedron");
                if (last && vt.above_[F] != vt.top_tetra_[e])
                    throw TautnessError("edge " + std::to_string(e) + " fan does not end at its top tetrahedron");
                if (!last && vt.above_[F] != vt.below_[fan[p + 1].face])
                    throw TautnessError("edge " + std::to_string(e) + " fan is not monotone");
            }
        }
        if (vt.swap_[e]) std::swap(sides[0], sides[1]);
        for (int s = 0; s < 2; ++s)
            for (size_t p = 0; p < sides[s].size(); ++p) {
                const FaceInc& fi = sides[s][p];
                vt.fan_slot_[fi.face][fi.face_edge] = {e, s, int(p)};
            }
        vt.fans_[e] = std::move(sides);
    }
    for (int F = 0; F < nf; ++F)
        for (int j = 0; j < 3; ++j)
            if (vt.fan_slot_[F][j].edge < 0)
                throw StructureError("face " + std::to_string(F) + " edge " + std::to_string(j) + " missing from links");

    vt.large_j_.assign(nf, -1);
    for (int F = 0; F < nf; ++F) {
        const FaceClass& fc = tri.face(F);
        int r = (fc.tet[0] == vt.above_[F] && !vt.is_top_[fc.tet[0]][fc.slot[0]]) ? 0 : 1;
        int t = fc.tet[r], f = fc.slot[r];
        int bp = 5 - vt.top_pi_[t];
        vt.large_j_[F] = tri.face_edge_index(t, f, kEdgeVertices[bp][0], kEdgeVertices[bp][1]);
    }

    vt.colour_ = validate_veering(tri);
    return vt;
}

VeeringTriangulation VeeringTriangulation::reversed() const {
    BuildOptions opts;
    std::vector<int> flipped(top_pi_.size());
    for (size_t t = 0; t < top_pi_.size(); ++t) flipped[t] = 5 - top_pi_[t];
    opts.top_pi = flipped;
    opts.swap_sides = swap_;
    return build(static_cast<const Triangulation&>(*this), opts);
}

VeeringTriangulation VeeringTriangulation::with_swapped_sides(const std::vector<bool>& mask) const {
    BuildOptions opts;
    opts.top_pi = top_pi_;
    opts.swap_sides = swap_;
    for (size_t e = 0; e < mask.size() && e < opts.swap_sides.size(); ++e)
        opts.swap_sides[e] = opts.swap_sides[e] != mask[e];
    return build(static_cast<const Triangulation&>(*this), opts);
}

RawTriangulation relabel(const RawTriangulation& raw, const std::vector<int>& tet_perm,
                         const std::vector<Perm4>& vertex_perms) {
    const int n = raw.size();
    RawTriangulation out;
    out.gluings.assign(n, {});
    out.pi_pair.assign(n, 0);
    for (int t = 0; t < n; ++t) {
        const Perm4& rho = vertex_perms[t];
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = raw.gluings[t][f];
            Gluing ng;
            if (g.tet >= 0) {
                ng.tet = tet_perm[g.tet];
                ng.perm = vertex_perms[g.tet] * g.perm * rho.inverse();
            }
            out.gluings[tet_perm[t]][rho[f]] = ng;
        }
        int d = raw.pi_pair[t];
        int s = edge_slot(rho[kEdgeVertices[d][0]], rho[kEdgeVertices[d][1]]);
        out.pi_pair[tet_perm[t]] = pair_of_slot(s);
    }
    return out;
}

namespace {

std::vector<int> component_code(const RawTriangulation& raw, int start, const Perm4& rho0, std::vector<int>* members) {
    const int n = raw.size();
    std::vector<int> newidx(n, -1);
    std::vector<Perm4> rho(n);
    std::vector<int> order;
    newidx[start] = 0;
    rho[start] = rho0;
    order.push_back(start);
    std::vector<int> code;
    for (size_t i = 0; i < order.size(); ++i) {
        int t = order[i];
        Perm4 inv = rho[t].inverse();
        for (int F = 0; F < 4; ++F) {
            int f = inv[F];
            const Gluing& g = raw.gluings[t][f];
            if (g.tet < 0) {
                code.push_back(-1);
                code.push_back(-1);
                continue;
            }
            if (newidx[g.tet] < 0) {
                newidx[g.tet] = int(order.size());
                order.push_back(g.tet);
                // choose the labels of the new tetrahedron so this gluing reads as the identity
                rho[g.tet] = rho[t] * g.perm.inverse();
            }
            Perm4 np = rho[g.tet] * g.perm * inv;
            code.push_back(newidx[g.tet]);
            code.push_back(np.lex_index());
        }
    }
    for (int t : order) {
        int d = raw.pi_pair.empty() ? 0 : raw.pi_pair[t];
        int s = edge_slot(rho[t][kEdgeVertices[d][0]], rho[t][kEdgeVertices[d][1]]);
        code.push_back(pair_of_slot(s));
    }
    if (members) *members = order;
    return code;
}

}  // namespace

std::vector<int> canonical_code(const RawTriangulation& raw) {
    const int n = raw.size();
    std::vector<bool> done(n, false);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (done[s]) continue;
        std::vector<int> members;
        component_code(raw, s, Perm4(), &members);
        std::vector<int> best;
        for (int t : members) {
            done[t] = true;
            for (const Perm4& p : s4()) {
                auto c = component_code(raw, t, p, nullptr);
                if (best.empty() || c < best) best = std::move(c);
            }
        }
        best.insert(best.begin(), int(members.size()));
        comps.push_back(std::move(best));
    }
    std::sort(comps.begin(), comps.end());
    std::vector<int> out;
    for (auto& c : comps) out.insert(out.end(), c.begin(), c.end());
    return out;
}

bool isomorphic(const RawTriangulation& a, const RawTriangulation& b) {
    return a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

RawTriangulation disjoint_union(const RawTriangulation& a, const RawTriangulation& b) {
    RawTriangulation out = a;
    const int off = a.size();
    for (int t = 0; t < b.size(); ++t) {
        auto row = b.gluings[t];
        for (auto& g : row)
            if (g.tet >= 0) g.tet += off;
        out.gluings.push_back(row);
        out.pi_pair.push_back(b.pi_pair[t]);
    }
    return out;
}

}  // namespace veerkit
