#include "veerkit/homology.hpp"

#include "veerkit/errors.hpp"

namespace veerkit {

DualSpine dual_spine(const VeeringTriangulation& tri) {
    const int n = tri.num_tetrahedra(), nf = tri.num_faces(), ne = tri.num_edges();
    DualSpine s{IntMatrix(n, nf), IntMatrix(nf, ne)};
    for (int f = 0; f < nf; ++f) {
        s.D1(tri.tetra_above(f), f) += 1;
        s.D1(tri.tetra_below(f), f) -= 1;
    }
    for (int e = 0; e < ne; ++e)
        for (int side = 0; side < 2; ++side)
            for (const FaceInc& fi : tri.fan(e, side)) s.D2(fi.face, e) += side == 0 ? 1 : -1;
    return s;
}

H1Presentation homology_h1(const VeeringTriangulation& tri) {
    H1Presentation h;
    h.spine = dual_spine(tri);
    const int nf = tri.num_faces();
    SmithForm s1 = smith_normal_form(h.spine.D1);
    const int r1 = s1.rank, k = nf - r1;
    IntMatrix K = s1.V.block(0, nf, r1, nf);            // kernel basis of D1
    IntMatrix K_plus = s1.V_inv.block(r1, nf, 0, nf);   // left inverse on the kernel
    IntMatrix A = K_plus * h.spine.D2;                  // D2 = K * A
    SmithForm s2 = smith_normal_form(A);
    const int r2 = s2.rank;
    h.free_rank = k - r2;
    IntMatrix UK = s2.U * K_plus;
    h.projection = UK.block(r2, k, 0, nf);
    h.cycle_basis = K * s2.U_inv.block(0, k, r2, k);
    std::vector<ZVec> rows;
    for (int i = 0; i < r2; ++i) {
        if (s2.diagonal[i] > 1) {
            h.torsion.push_back(s2.diagonal[i]);
            rows.push_back(UK.row(i));
        }
    }
    h.torsion_map = IntMatrix::from_rows(rows, nf);
    return h;
}

bool is_cycle(const H1Presentation& h, const ZVec& word) { return is_zero(h.spine.D1 * word); }

ZVec loop_class(const H1Presentation& h, const ZVec& word) {
    if (!is_cycle(h, word)) throw NotACycle("face word is not a cycle");
    return h.projection * word;
}

ZVec torsion_class(const H1Presentation& h, const ZVec& word) {
    if (!is_cycle(h, word)) throw NotACycle("face word is not a cycle");
    ZVec t = h.torsion_map * word;
    for (size_t i = 0; i < t.size(); ++i) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), t[i].get_mpz_t(), h.torsion[i].get_mpz_t());
        t[i] = r;
    }
    return t;
}

bool is_carried(const H1Presentation& h, const QVec& w) {
    for (const Rat& x : w)
        if (x < 0) return false;
    const IntMatrix& D2 = h.spine.D2;
    for (int e = 0; e < D2.cols(); ++e) {
        Rat s = 0;
        for (int f = 0; f < D2.rows(); ++f) s += D2(f, e) * w[f];
        if (s != 0) return false;
    }
    return true;
}

bool is_carried(const H1Presentation& h, const ZVec& w) { return is_carried(h, to_rational(w)); }

QVec carried_class(const H1Presentation& h, const QVec& w) {
    QVec x(h.free_rank);
    for (int i = 0; i < h.free_rank; ++i)
        for (int f = 0; f < h.cycle_basis.rows(); ++f) x[i] += w[f] * h.cycle_basis(f, i);
    return x;
}

ZVec carried_class(const H1Presentation& h, const ZVec& w) { return h.cycle_basis.transpose() * w; }

std::vector<int> turn_crossings(const StableTrack& track, int arc_id) {
    const Arc& a = track.arc(arc_id);
    const auto& fan = track.triangulation().fan(a.edge, a.side);
    std::vector<int> out;
    for (size_t p = a.pos + 1; p < fan.size(); ++p) out.push_back(fan[p].face);
    if (out.empty()) throw ConventionError("turn at edge " + std::to_string(a.edge) + " crosses no face");
    return out;
}

ZVec transversalize(const StableTrack& track, const StableLoop& loop) {
    ZVec word(track.num_nodes());
    for (int id : loop.arcs)
        for (int f : turn_crossings(track, id)) word[f] += 1;
    return word;
}

Rat pairing(const H1Presentation& h, const QVec& w, const ZVec& word) {
    if (!is_carried(h, w)) throw NotCarried("weight vector violates the branch equations or is negative");
    if (!is_cycle(h, word)) throw NotACycle("face word is not a cycle");
    return dot(w, word);
}

Int pairing(const H1Presentation& h, const ZVec& w, const ZVec& word) {
    if (!is_carried(h, w)) throw NotCarried("weight vector violates the branch equations or is negative");
    if (!is_cycle(h, word)) throw NotACycle("face word is not a cycle");
    return dot(w, word);
}

}  // namespace veerkit
