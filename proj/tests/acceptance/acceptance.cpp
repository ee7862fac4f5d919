#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "veerkit/blowup.hpp"
#include "veerkit/boundary.hpp"
#include "veerkit/carried.hpp"
#include "veerkit/duality.hpp"
#include "veerkit/errors.hpp"
#include "veerkit/homology.hpp"
#include "veerkit/stable_track.hpp"

using namespace veerkit;
using namespace veerkit::testing;

namespace {

// Collects failed checks; a criterion passes when none were recorded.
struct Check {
    std::vector<std::string> failures;
    std::string summary;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

ZVec sum_of(const std::vector<ZVec>& vs, int n) {
    ZVec s(n);
    for (const auto& v : vs)
        for (int i = 0; i < n; ++i) s[i] += v[i];
    return s;
}

Int total(const ZVec& w) { return std::accumulate(w.begin(), w.end(), Int(0)); }

std::vector<ZVec> loop_classes(const StableTrack& st, const H1Presentation& h, const std::vector<StableLoop>& loops) {
    std::vector<ZVec> out;
    for (const auto& l : loops) out.push_back(loop_class(h, transversalize(st, l)));
    return out;
}

StableLoop starting_at_face(const StableTrack& st, const StableLoop& l, int face) {
    StableLoop r = l;
    for (size_t k = 0; k < l.arcs.size(); ++k)
        if (st.arc(l.arcs[k]).from == face) {
            std::rotate(r.arcs.begin(), r.arcs.begin() + long(k), r.arcs.end());
            break;
        }
    return r;
}

// Weight-space extreme ray of least total weight projecting onto `ray`.
ZVec lightest_over(const CarriedCone& cc, const ZVec& ray) {
    ZVec best;
    for (size_t i = 0; i < cc.weights.extreme_rays().size(); ++i) {
        if (primitive(cc.ray_projections[i]) != ray) continue;
        const ZVec& w = cc.weights.extreme_rays()[i];
        if (best.empty() || total(w) < total(best)) best = w;
    }
    return best;
}

void figure_eight(Check& c) {
    const auto vt = parse_taut_signature(kFigureEight);
    c.expect(vt.num_tetrahedra() == 2, "tetrahedra");
    c.expect(vt.num_faces() == 4, "faces");
    c.expect(vt.num_edges() == 2, "edges");
    for (int e = 0; e < vt.num_edges(); ++e) c.expect(vt.edge(e).degree() == 6, "edge degree");
    c.expect(vt.num_cusps() == 1, "cusps");
    const auto bc = build_boundary(vt);
    int up = 0, down = 0;
    for (const auto& l : bc.ladders()) (l.kind == Kind::Upward ? up : down)++;
    c.expect(up == 2 && down == 2, "ladders");
    const auto h = homology_h1(vt);
    c.expect(h.free_rank == 1 && h.torsion.empty(), "H1 = Z");
    const auto cc = carried_cone(vt, h);
    c.expect(cc.projected.extreme_rays().size() == 1 && cc.projected.is_pointed(), "single carried ray");
    const StableTrack st(vt);
    const auto classes = loop_classes(st, h, enumerate_minimal_stable_loops(st));
    const auto cmp = compare_duality(cc.projected, classes);
    c.expect(cmp.equal(), "loop classes generate the dual ray");
    c.expect(cmp.dual_cone.extreme_rays().size() == 1, "dual is a ray");
    c.summary = std::to_string(classes.size()) + " minimal loops, carried ray " +
                to_string(cc.projected.extreme_rays()[0]);
}

void duality_sweep(Check& c) {
    const auto fixtures = layered_up_to(10);
    c.expect(fixtures.size() >= 20, "at least 20 layered fixtures");
    int equal = 0;
    for (const auto& f : fixtures) {
        const auto r = run_duality_check(parse_taut_signature(f.sig), f.sig, true);
        c.expect(r.verdict == DualityVerdict::Equal, f.sig + " " + verdict_name(r.verdict));
        c.expect(r.certificates_valid, f.sig + " certificates");
        equal += r.verdict == DualityVerdict::Equal;
    }
    c.summary = std::to_string(equal) + "/" + std::to_string(fixtures.size()) + " EQUAL";
}

void pairing_positivity(Check& c) {
    long pairs = 0, arcs = 0;
    for (const auto& f : all_fixtures()) {
        const auto vt = parse_taut_signature(f.sig);
        const auto h = homology_h1(vt);
        const auto cc = carried_cone(vt, h);
        const StableTrack st(vt);
        const auto& rays = cc.projected.extreme_rays();
        const ZVec ray_sum = sum_of(rays, cc.projected.dim());
        for (const ZVec& cls : loop_classes(st, h, enumerate_minimal_stable_loops(st))) {
            for (const ZVec& r : rays) {
                c.expect(dot(r, cls) >= 0, f.sig + " negative pairing");
                ++pairs;
            }
            if (!rays.empty()) c.expect(dot(ray_sum, cls) > 0, f.sig + " zero pairing with the ray sum");
        }
        for (const Arc& a : st.arcs()) {
            c.expect(!turn_crossings(st, a.id).empty(), f.sig + " turn without crossing");
            ++arcs;
        }
    }
    c.summary = std::to_string(pairs) + " loop/ray pairings, " + std::to_string(arcs) + " turns";
}

void flip_invariants(Check& c) {
    std::mt19937 rng(2024);
    int flips = 0;
    std::vector<Fixture> pool;
    for (const auto& f : all_fixtures()) pool.push_back(f);
    for (size_t round = 0; flips < 1000; ++round) {
        const auto& f = pool[round % pool.size()];
        const auto vt = parse_taut_signature(f.sig);
        const auto h = homology_h1(vt);
        const auto cc = carried_cone(vt, h);
        const auto& rays = cc.weights.extreme_rays();
        if (rays.empty()) continue;
        const int nf = vt.num_faces();
        ZVec w(nf);
        for (const ZVec& r : rays) {
            const Int k = 1 + int(rng() % 3);
            for (int i = 0; i < nf; ++i) w[i] += k * r[i];
        }
        std::vector<ZVec> cycles;
        for (int k = 0; k < 100; ++k) {
            ZVec z(nf);
            for (int j = 0; j < h.free_rank; ++j) {
                const Int a = int(rng() % 7) - 3;
                for (int i = 0; i < nf; ++i) z[i] += a * h.cycle_basis(i, j);
            }
            for (int e = 0; e < vt.num_edges(); ++e) {
                const Int b = int(rng() % 5) - 2;
                for (int i = 0; i < nf; ++i) z[i] += b * h.spine.D2(i, e);
            }
            c.expect(is_cycle(h, z), f.sig + " random cycle");
            cycles.push_back(std::move(z));
        }
        std::vector<Int> before;
        for (const ZVec& z : cycles) before.push_back(pairing(h, w, z));
        const ZVec cls = carried_class(h, w);
        const Int weight = total(w);
        for (int step = 0; step < 25 && flips < 1000; ++step) {
            std::vector<int> options;
            for (int t = 0; t < vt.num_tetrahedra(); ++t)
                if (is_flippable(vt, w, t)) options.push_back(t);
            if (options.empty()) break;
            w = upward_flip(vt, h, w, options[rng() % options.size()]);
            ++flips;
            c.expect(total(w) == weight, f.sig + " total weight");
            c.expect(carried_class(h, w) == cls, f.sig + " class");
            for (size_t k = 0; k < cycles.size(); ++k) c.expect(pairing(h, w, cycles[k]) == before[k], f.sig + " pairing");
        }
    }
    c.summary = std::to_string(flips) + " flips, 100 random cycles per start";
}

void fiber_detection(Check& c) {
    int fibers = 0, empties = 0, rays_checked = 0;
    for (const auto& f : all_fixtures()) {
        const auto vt = parse_taut_signature(f.sig);
        const auto h = homology_h1(vt);
        const auto cc = carried_cone(vt, h);
        const ZVec w = sum_of(cc.weights.extreme_rays(), vt.num_faces());
        const auto cert = is_fiber_class(vt, h, w);
        c.expect(replay(vt, h, cert), f.sig + " replay");
        if (cc.weights.extreme_rays().empty()) {
            c.expect(!f.layered && cert.verdict == FiberVerdict::Empty, f.sig + " empty cone");
            ++empties;
            continue;
        }
        c.expect(cert.verdict == FiberVerdict::Fiber, f.sig + " interior point is not a fiber");
        fibers += cert.verdict == FiberVerdict::Fiber;
        if (vt.num_cusps() != 2 || cc.projected.cone_dimension() != 2) continue;
        const StableTrack st(vt);
        for (const ZVec& ray : cc.projected.extreme_rays()) {
            const ZVec wr = lightest_over(cc, ray);
            const auto nc = is_fiber_class(vt, h, wr);
            ++rays_checked;
            c.expect(nc.verdict == FiberVerdict::NotFiber, f.sig + " ray point is a fiber");
            c.expect(replay(vt, h, nc), f.sig + " ray replay");
            if (!nc.loop) {
                c.expect(false, f.sig + " no loop");
                continue;
            }
            c.expect(st.is_closed(*nc.loop), f.sig + " loop not closed");
            c.expect(dot(ray, loop_class(h, transversalize(st, *nc.loop))) == 0, f.sig + " loop pairs nonzero");
        }
    }
    c.expect(rays_checked > 0, "some 2-cusped fixture");
    c.summary = std::to_string(fibers) + " fiber certificates, " + std::to_string(rays_checked) +
                " boundary-ray certificates, " + std::to_string(empties) + " zero cones";
}

void stable_loop_structure(Check& c) {
    int brute = 0, poles = 0, decompositions = 0;
    for (const auto& f : all_fixtures()) {
        const auto vt = parse_taut_signature(f.sig);
        const StableTrack st(vt);
        const auto h = homology_h1(vt);
        const auto loops = enumerate_minimal_stable_loops(st);
        if (vt.num_tetrahedra() <= 4) {
            c.expect(loops == brute_force_minimal_loops(st), f.sig + " brute force");
            ++brute;
        }
        const std::set<StableLoop> known(loops.begin(), loops.end());
        const auto bc = build_boundary(vt);
        for (int l = 0; l < int(bc.ladders().size()); ++l) {
            if (bc.ladders()[l].kind != Kind::Upward) continue;
            for (int p = 0; p < 2; ++p) {
                c.expect(known.count(ladderpole_stable_loop(st, bc, l, p)) == 1, f.sig + " ladderpole loop");
                ++poles;
            }
        }
        std::vector<StableLoop> inputs;
        for (const auto& l : loops) {
            StableLoop twice = l;
            twice.arcs.insert(twice.arcs.end(), l.arcs.begin(), l.arcs.end());
            inputs.push_back(twice);
        }
        for (size_t i = 0; i < loops.size() && inputs.size() < 2 * loops.size() + 20; ++i)
            for (size_t j = i + 1; j < loops.size(); ++j) {
                const auto fi = st.faces(loops[i]), fj = st.faces(loops[j]);
                const auto shared = std::find_first_of(fi.begin(), fi.end(), fj.begin(), fj.end());
                if (shared == fi.end()) continue;
                StableLoop route = starting_at_face(st, loops[i], *shared);
                const StableLoop b = starting_at_face(st, loops[j], *shared);
                route.arcs.insert(route.arcs.end(), b.arcs.begin(), b.arcs.end());
                inputs.push_back(route);
            }
        for (const auto& in : inputs) {
            const auto parts = decompose_stable_loop(st, in);
            ZVec sum(h.free_rank);
            for (const auto& p : parts) {
                c.expect(st.is_minimal(p), f.sig + " non-minimal part");
                const ZVec pc = loop_class(h, transversalize(st, p));
                for (int k = 0; k < h.free_rank; ++k) sum[k] += pc[k];
            }
            c.expect(sum == loop_class(h, transversalize(st, in)), f.sig + " decomposition class");
            ++decompositions;
        }
    }
    c.summary = std::to_string(brute) + " brute-force matches, " + std::to_string(poles) + " ladderpoles, " +
                std::to_string(decompositions) + " decompositions";
}

void veering_rule(Check& c) {
    long switches = 0;
    for (const auto& f : all_fixtures()) {
        const auto vt = parse_taut_signature(f.sig);
        const auto rep = check_veering_rule(build_boundary(vt), vt);
        c.expect(!rep.checks.empty(), f.sig + " no switches");
        c.expect(rep.pass(), f.sig + " " + std::to_string(rep.failures) + " failures");
        switches += long(rep.checks.size());
    }
    c.summary = std::to_string(switches) + " ladderpole switches";
}

void blowup_equivalence(Check& c) {
    long instances = 0, even = 0;
    for (int q = 2; q <= 4; ++q)
        for (int p = 0; p < q; ++p) {
            const auto star = PseudoAnosovTree::star(q);
            std::vector<int> counts(2 * q);
            std::function<void(int, int)> rec = [&](int i, int left) {
                if (i == 2 * q) {
                    const auto fam = EvenFamily::from_counts(counts);
                    if (!fam.is_symmetric(p)) return;
                    ++instances;
                    even += fam.is_even();
                    const auto bf = brute_force_fill(star, fam, p);
                    std::optional<FillResult> fr;
                    try {
                        fr = fill_even_family(star, fam, p);
                    } catch (const Error&) {
                    }
                    std::ostringstream id;
                    id << "q=" << q << " p=" << p << " counts=";
                    for (int x : counts) id << x;
                    c.expect(fr.has_value() == bf.has_value(), id.str() + " disagreement");
                    if (fr) c.expect(validate_filling(fr->tree, fam, fr->filling, p), id.str() + " filler output");
                    if (bf) c.expect(validate_filling(bf->tree, fam, bf->filling, p), id.str() + " brute output");
                    return;
                }
                for (int k = 0; k <= left; ++k) {
                    counts[i] = k;
                    rec(i + 1, left - k);
                }
                counts[i] = 0;
            };
            rec(0, 6);
        }
    const auto f2 = EvenFamily::from_regions(6, {0, 3});
    const auto r2 = fill_even_family(PseudoAnosovTree::star(3), f2, 0);
    c.expect(r2.filling.segments.size() == 1 && validate_filling(r2.tree, f2, r2.filling, 0), "size-2 instance");
    const auto f4 = EvenFamily::from_regions(8, {0, 3, 4, 7});
    const auto r4 = fill_even_family(PseudoAnosovTree::star(4), f4, 2);
    c.expect(r4.filling.segments.size() == 2 && validate_filling(r4.tree, f4, r4.filling, 2), "size-4 instance");
    c.expect(r4.tree.is_symmetric(2), "size-4 tree half-turn symmetric");
    c.summary = std::to_string(instances) + " symmetric instances, " + std::to_string(even) + " even";
}

// Basis-free data of one cooriented triangulation.
struct Invariants {
    std::string verdict, fiber;
    int rank, cone_dim, carried_rays, loops;
    ZVec torsion;
    std::vector<Int> pairings;  // sorted multiset of loop/ray pairings
    std::array<std::vector<int>, 2> poles;  // sorted pole lengths of upward and downward ladders
    bool operator==(const Invariants&) const = default;
};

Invariants invariants(const VeeringTriangulation& vt, bool layered) {
    Invariants inv;
    const auto r = run_duality_check(vt, "", layered);
    inv.verdict = verdict_name(r.verdict);
    inv.rank = r.free_rank;
    inv.torsion = r.torsion;
    inv.cone_dim = r.carried.cone_dimension();
    inv.carried_rays = int(r.carried.extreme_rays().size());
    inv.loops = int(r.loops.size());
    for (const auto& row : r.pairings) inv.pairings.insert(inv.pairings.end(), row.begin(), row.end());
    std::sort(inv.pairings.begin(), inv.pairings.end());
    const auto h = homology_h1(vt);
    const auto cc = carried_cone(vt, h);
    inv.fiber = verdict_name(is_fiber_class(vt, h, sum_of(cc.weights.extreme_rays(), vt.num_faces())).verdict);
    const auto bc = build_boundary(vt);
    for (const auto& l : bc.ladders())
        for (const auto& pole : l.poles) inv.poles[l.kind == Kind::Upward ? 0 : 1].push_back(pole.length());
    for (auto& v : inv.poles) std::sort(v.begin(), v.end());
    return inv;
}

void convention_robustness(Check& c) {
    std::mt19937 rng(99);
    int variants = 0;
    for (const auto& f : all_fixtures()) {
        const auto raw = parse_taut_signature_raw(f.sig);
        const auto vt = VeeringTriangulation::build(raw);
        const Invariants base = invariants(vt, f.layered);
        for (int trial = 0; trial < 2; ++trial) {
            std::vector<int> perm(raw.size());
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<Perm4> vp;
            for (int t = 0; t < raw.size(); ++t) vp.push_back(Perm4::from_lex_index(int(rng() % 24)));
            auto other = VeeringTriangulation::build(relabel(raw, perm, vp));
            // The relabeled seed may pick the opposite coorientation.
            if (invariants(other, f.layered) != base) other = other.reversed();
            c.expect(invariants(other, f.layered) == base, f.sig + " relabeling");
            ++variants;
        }
        std::vector<bool> mask(vt.num_edges());
        for (int e = 0; e < vt.num_edges(); ++e) mask[e] = rng() % 2;
        c.expect(invariants(vt.with_swapped_sides(mask), f.layered) == base, f.sig + " side swap");
        ++variants;
        const auto rev = vt.reversed();
        const Invariants ri = invariants(rev, f.layered);
        c.expect(ri.verdict == base.verdict && ri.fiber == base.fiber, f.sig + " reversal verdicts");
        c.expect(ri.rank == base.rank && ri.torsion == base.torsion && ri.cone_dim == base.cone_dim &&
                     ri.carried_rays == base.carried_rays,
                 f.sig + " reversal cone");
        c.expect(ri.poles[0] == base.poles[1] && ri.poles[1] == base.poles[0], f.sig + " reversal ladders");
        c.expect(check_veering_rule(build_boundary(rev), rev).pass(), f.sig + " reversal veering rule");
        c.expect(invariants(rev.reversed(), f.layered) == base, f.sig + " double reversal");
        ++variants;
    }
    c.summary = std::to_string(variants) + " relabeled, side-swapped or reversed variants";
}

void cone_algebra(Check& c) {
    std::mt19937 rng(7);
    int cones = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 1 + trial % 5;
        const int count = 1 + int(rng() % (dim + 4));
        std::uniform_int_distribution<int> d(-4, 4);
        std::vector<ZVec> gens;
        for (int i = 0; i < count; ++i) {
            ZVec v(dim);
            for (auto& x : v) x = d(rng);
            gens.push_back(v);
        }
        const auto cone = RationalCone::from_generators(dim, gens);
        const auto dual = cone.dual();
        c.expect(dual.dual().equals(cone), "double dual, trial " + std::to_string(trial));
        c.expect(cone.certify().valid() && dual.certify().valid(), "random cone certificate");
        cones += 2;
    }
    for (const auto& f : all_fixtures()) {
        const auto vt = parse_taut_signature(f.sig);
        const auto h = homology_h1(vt);
        const auto cc = carried_cone(vt, h);
        const auto r = run_duality_check(vt, f.sig, f.layered);
        for (const RationalCone* k :
             {&cc.weights, &cc.projected, &r.comparison.loop_cone, &r.comparison.dual_cone}) {
            c.expect(k->certify().valid(), f.sig + " pipeline certificate");
            ++cones;
        }
        c.expect(r.comparison.dual_cone.dual().equals(r.carried), f.sig + " carried double dual");
    }
    c.summary = std::to_string(cones) + " certified cones";
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*run)(Check&);
        double budget_seconds;
    };
    const Criterion criteria[] = {
        {"figure-eight pipeline", figure_eight, 1},
        {"duality sweep over layered fixtures", duality_sweep, 60},
        {"pairing positivity", pairing_positivity, 0},
        {"flip invariants", flip_invariants, 0},
        {"fiber detection", fiber_detection, 0},
        {"stable-loop structure", stable_loop_structure, 0},
        {"veering rule on ladderpoles", veering_rule, 0},
        {"blowup equivalence", blowup_equivalence, 60},
        {"convention robustness", convention_robustness, 0},
        {"cone algebra", cone_algebra, 0},
    };
    int failed = 0, index = 0;
    for (const auto& cr : criteria) {
        ++index;
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.budget_seconds > 0 && secs > cr.budget_seconds)
            c.failures.push_back("took " + std::to_string(secs) + " s");
        const bool pass = c.failures.empty();
        failed += !pass;
        std::printf("%s %2d %s (%.2f s): %s\n", pass ? "PASS" : "FAIL", index, cr.name, secs, c.summary.c_str());
        for (size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("       %s\n", c.failures[i].c_str());
        if (c.failures.size() > 10) std::printf("       ... %zu more\n", c.failures.size() - 10);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
