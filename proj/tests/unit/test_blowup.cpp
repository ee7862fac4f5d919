#include <functional>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "veerkit/blowup.hpp"
#include "veerkit/errors.hpp"

using namespace veerkit;

namespace {

bool alternates(const PseudoAnosovTree& t, int v) {
    const auto& inc = t.incident(v);
    for (size_t j = 0; j < inc.size(); ++j) {
        const bool in_j = t.edge(inc[j]).head == v, in_next = t.edge(inc[(j + 1) % inc.size()]).head == v;
        if (in_j == in_next) return false;
    }
    return true;
}

void expect_pseudo_anosov(const PseudoAnosovTree& t) {
    for (int v = t.num_leaves(); v < t.num_vertices(); ++v) {
        EXPECT_GE(t.incident(v).size(), 4u);
        EXPECT_EQ(t.incident(v).size() % 2, 0u);
        EXPECT_TRUE(alternates(t, v)) << "vertex " << v;
    }
    EXPECT_EQ(t.num_edges(), t.num_vertices() - 1);
}

// Pairs of regions that meet at a vertex but share no edge.
std::vector<std::pair<int, int>> vertex_incident_pairs(const PseudoAnosovTree& t) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < t.num_leaves(); ++a)
        for (int b = a + 1; b < t.num_leaves(); ++b) {
            auto ea = t.region_edges(a), eb = t.region_edges(b);
            std::vector<int> se;
            std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(se));
            auto va = t.region_vertices(a), vb = t.region_vertices(b);
            std::vector<int> sv;
            std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(sv));
            if (se.empty() && !sv.empty()) out.push_back({a, b});
        }
    return out;
}

bool share_edge(const PseudoAnosovTree& t, int a, int b) {
    for (int e : t.region_edges(a))
        if (t.edge(e).left_region == b || t.edge(e).right_region == b) return true;
    return false;
}

// Adds one point to a random + orbit and one to a random - orbit per step, so
// the family stays balanced and invariant under the rotation.
EvenFamily random_symmetric_family(std::mt19937& rng, int q, int p, int max_points) {
    const int L = 2 * q;
    std::vector<int> counts(L);
    std::vector<int> orbit_reps[2];
    std::vector<char> seen(L);
    int orbit = 0;
    for (int r = 0; r < L; ++r) {
        if (seen[r]) continue;
        orbit_reps[r % 2].push_back(r);
        orbit = 0;
        for (int x = r; !seen[x]; x = (x + 2 * p) % L, ++orbit) seen[x] = 1;
    }
    const int most = max_points / (2 * orbit);
    const int steps = most > 0 ? 1 + int(rng() % most) : 0;
    for (int s = 0; s < steps; ++s)
        for (const auto& reps : orbit_reps) {
            const int r = reps[rng() % reps.size()];
            for (int x = r, k = 0; k < orbit; x = (x + 2 * p) % L, ++k) ++counts[x];
        }
    return EvenFamily::from_counts(counts);
}

}  // namespace

TEST(Star, ThreeProngs) {
    auto s = PseudoAnosovTree::star(3);
    EXPECT_EQ(s.num_edges(), 6);
    EXPECT_EQ(s.num_vertices(), 7);
    expect_pseudo_anosov(s);
    for (int k = 0; k < 6; ++k) {
        EXPECT_EQ(s.leaf_sign(k), k % 2 ? 1 : -1);
        EXPECT_EQ(s.region_edges(k).size(), 2u);
        EXPECT_EQ(s.region_sign(k), -s.region_sign((k + 1) % 6));
    }
    EXPECT_THROW(PseudoAnosovTree::star(1), StructureError);
}

TEST(Star, RegionBoundaryIsDirectedFromMinusToPlus) {
    for (int q = 2; q <= 6; ++q) {
        auto s = PseudoAnosovTree::star(q);
        for (int r = 0; r < s.num_leaves(); ++r) {
            // the leaf with sign -1 is a source, the one with +1 a sink
            const int lo = r, hi = (r + 1) % s.num_leaves();
            EXPECT_EQ(s.leaf_sign(lo) == -1, s.region_sign(r) == 1);
            EXPECT_EQ(s.leaf_sign(hi), -s.leaf_sign(lo));
        }
    }
}

TEST(Trees, RejectsInvalidSplits) {
    EXPECT_THROW(PseudoAnosovTree::from_splits(6, {{1, 2}}), StructureError);
    EXPECT_THROW(PseudoAnosovTree::from_splits(6, {{1, 1}}), StructureError);
    EXPECT_THROW(PseudoAnosovTree::from_splits(8, {{1, 3}, {2, 3}}), StructureError);
    EXPECT_THROW(PseudoAnosovTree::from_splits(8, {{1, 3}, {4, 5}}), StructureError);
    EXPECT_NO_THROW(PseudoAnosovTree::from_splits(8, {{1, 3}, {5, 3}}));
}

TEST(RegionalBlowup, ThreeProngStarGainsOneEdge) {
    auto s = PseudoAnosovTree::star(3);
    auto t = regional_blowup(s, 0, 3);
    EXPECT_EQ(t.num_edges(), 7);
    expect_pseudo_anosov(t);
    EXPECT_TRUE(share_edge(t, 0, 3));
    EXPECT_FALSE(share_edge(s, 0, 3));
    ASSERT_EQ(t.splits().size(), 1u);
    EXPECT_EQ(t.collapse_edge(t.num_leaves()), s);
    EXPECT_TRUE(t.collapses_to(s));
    EXPECT_FALSE(s.collapses_to(t));
}

TEST(RegionalBlowup, Errors) {
    auto s = PseudoAnosovTree::star(3);
    EXPECT_THROW(regional_blowup(s, 0, 2), SameOrientation);
    EXPECT_THROW(regional_blowup(s, 0, 1), NotAdjacentAtVertex);
    EXPECT_THROW(regional_blowup(s, 0, 0), NotAdjacentAtVertex);
    auto t = regional_blowup(s, 0, 3);
    // regions 1 and 4 lie on different sides of the new edge
    EXPECT_THROW(regional_blowup(t, 1, 4), NotAdjacentAtVertex);
}

TEST(RegionalBlowup, UniqueAmongOneEdgeBlowups) {
    for (int q = 3; q <= 5; ++q) {
        auto s = PseudoAnosovTree::star(q);
        for (const auto& t : enumerate_blowups(s)) {
            for (auto [a, b] : vertex_incident_pairs(t)) {
                if ((a - b) % 2 == 0) {
                    EXPECT_THROW(regional_blowup(t, a, b), SameOrientation);
                    continue;
                }
                auto blown = regional_blowup(t, a, b);
                int matches = 0;
                for (const auto& u : enumerate_blowups(s))
                    if (u.splits().size() == t.splits().size() + 1 && u.collapses_to(t) && share_edge(u, a, b)) {
                        ++matches;
                        EXPECT_EQ(u, blown);
                    }
                EXPECT_EQ(matches, 1) << "q=" << q << " regions " << a << "," << b;
            }
        }
    }
}

TEST(Families, SignsAndSymmetry) {
    auto f = EvenFamily::from_regions(8, {0, 3, 4, 7});
    EXPECT_EQ(f.size(), 4);
    EXPECT_TRUE(f.is_even());
    EXPECT_TRUE(f.is_symmetric(2));
    EXPECT_FALSE(f.is_symmetric(1));
    auto odd = EvenFamily::from_regions(6, {0, 2});
    EXPECT_EQ(odd.signed_sum(), 2);
    EXPECT_THROW(EvenFamily::from_regions(6, {6}), StructureError);
}

TEST(Fill, SizeTwoFamilyOverThreeProngStar) {
    auto s = PseudoAnosovTree::star(3);
    auto f = EvenFamily::from_regions(6, {0, 3});
    auto r = fill_even_family(s, f);
    EXPECT_EQ(r.blowups, 1);
    EXPECT_EQ(r.tree.num_edges(), 7);
    ASSERT_EQ(r.filling.segments.size(), 1u);
    EXPECT_EQ(r.filling.segments[0].crossings.size(), 1u);
    EXPECT_TRUE(validate_filling(r.tree, f, r.filling));
}

TEST(Fill, SizeFourFamilyHalfTurnSymmetric) {
    auto s = PseudoAnosovTree::star(4);
    auto f = EvenFamily::from_regions(8, {0, 3, 4, 7});
    auto r = fill_even_family(s, f, 2);
    EXPECT_EQ(r.filling.segments.size(), 2u);
    EXPECT_EQ(r.blowups, 2);
    EXPECT_TRUE(r.tree.is_symmetric(2));
    EXPECT_EQ(filling_defect(r.tree, f, r.filling, 2), "");
}

TEST(Fill, EmptyFamily) {
    auto s = PseudoAnosovTree::star(3);
    EvenFamily f = EvenFamily::from_counts(std::vector<int>(6));
    auto r = fill_even_family(s, f);
    EXPECT_EQ(r.tree, s);
    EXPECT_TRUE(r.filling.segments.empty());
    EXPECT_TRUE(validate_filling(s, f, r.filling));
}

TEST(Fill, Errors) {
    auto s = PseudoAnosovTree::star(4);
    EXPECT_THROW(fill_even_family(s, EvenFamily::from_regions(8, {0, 2})), OddFamily);
    EXPECT_THROW(fill_even_family(s, EvenFamily::from_regions(8, {0, 3}), 2), NotSymmetric);
    EXPECT_THROW(fill_even_family(regional_blowup(s, 0, 3), EvenFamily::from_regions(8, {0, 3})), StructureError);
}

TEST(Validate, RejectsTamperedFillings) {
    auto s = PseudoAnosovTree::star(4);
    auto f = EvenFamily::from_regions(8, {0, 3, 4, 7});
    auto r = fill_even_family(s, f, 2);
    ASSERT_TRUE(validate_filling(r.tree, f, r.filling, 2));

    auto reversed = r.filling;
    std::swap(reversed.segments[0].crossings[0].from_region, reversed.segments[0].crossings[0].to_region);
    EXPECT_FALSE(validate_filling(r.tree, f, reversed, 2));

    auto swapped = r.filling;
    std::swap(swapped.segments[0].start, swapped.segments[0].end);
    EXPECT_FALSE(validate_filling(r.tree, f, swapped, 2));

    auto dropped = r.filling;
    dropped.segments.pop_back();
    EXPECT_FALSE(validate_filling(r.tree, f, dropped, 2));

    // the same segments over the star no longer cross a real edge
    EXPECT_FALSE(validate_filling(s, f, r.filling));
}

TEST(Validate, RejectsLinkedAndAsymmetricSegments) {
    // + points in regions 0 and 2, - points in 1 and 3 of a 2-prong star
    auto s = PseudoAnosovTree::star(2);
    auto f = EvenFamily::from_regions(4, {0, 1, 2, 3});
    auto seg = [&](int a, int b) {
        int e = -1;
        for (int x = 0; x < s.num_edges(); ++x)
            if (s.edge(x).right_region == a && s.edge(x).left_region == b) e = x;
        return Segment{{a, 0}, {b, 0}, {{e, a, b}}};
    };
    Filling good{{seg(0, 1), seg(2, 3)}};
    EXPECT_TRUE(validate_filling(s, f, good));
    EXPECT_TRUE(validate_filling(s, f, good, 1));
    Filling other{{seg(0, 3), seg(2, 1)}};
    EXPECT_TRUE(validate_filling(s, f, other));
    // two points in region 0
    auto f6 = EvenFamily::from_regions(4, {0, 1, 0, 3});
    Filling mixed{{seg(0, 1), Segment{{0, 1}, {3, 0}, seg(0, 3).crossings}}};
    EXPECT_FALSE(validate_filling(s, f6, mixed));  // the chords link
    Filling unlinked{{Segment{{0, 1}, {1, 0}, seg(0, 1).crossings}, Segment{{0, 0}, {3, 0}, seg(0, 3).crossings}}};
    EXPECT_TRUE(validate_filling(s, f6, unlinked));
    EXPECT_FALSE(validate_filling(s, f6, unlinked, 1));  // the family is not half-turn symmetric
    // a single rotated image is missing
    Filling lopsided{{seg(0, 1), seg(2, 1)}};
    auto f2 = EvenFamily::from_regions(4, {0, 1, 2, 1});
    EXPECT_FALSE(validate_filling(s, f2, lopsided, 1));
}

TEST(BruteForce, GuardsAndParity) {
    EXPECT_THROW(brute_force_fill(PseudoAnosovTree::star(5), EvenFamily::from_regions(10, {0, 1})), SizeGuard);
    EXPECT_THROW(brute_force_fill(PseudoAnosovTree::star(3), EvenFamily::from_regions(6, {0, 1, 0, 1, 0, 1, 0, 1})),
                 SizeGuard);
    EXPECT_FALSE(brute_force_fill(PseudoAnosovTree::star(3), EvenFamily::from_regions(6, {0, 2})).has_value());
}

TEST(BruteForce, AgreesOnThreeProngGrid) {
    auto s = PseudoAnosovTree::star(3);
    std::vector<int> c(6);
    int checked = 0;
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == 6) {
            auto f = EvenFamily::from_counts(c);
            for (int p = 0; p < 3; ++p) {
                if (!f.is_symmetric(p)) continue;
                auto bf = brute_force_fill(s, f, p);
                EXPECT_EQ(bf.has_value(), f.is_even());
                if (bf) EXPECT_TRUE(validate_filling(bf->tree, f, bf->filling, p));
                if (f.is_even()) {
                    auto r = fill_even_family(s, f, p);
                    EXPECT_TRUE(validate_filling(r.tree, f, r.filling, p));
                }
                ++checked;
            }
            return;
        }
        for (int k = 0; k <= left; ++k) {
            c[i] = k;
            rec(i + 1, left - k);
        }
        c[i] = 0;
    };
    rec(0, 4);
    EXPECT_GT(checked, 200);
}

TEST(Fill, RandomSymmetricInstances) {
    std::mt19937 rng(5);
    int nonempty = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int q = 2 + int(rng() % 7);
        const int p = int(rng() % q);
        auto f = random_symmetric_family(rng, q, p, 10);
        ASSERT_TRUE(f.is_even());
        ASSERT_TRUE(f.is_symmetric(p));
        ASSERT_LE(f.size(), 10);
        auto s = PseudoAnosovTree::star(q);
        auto r = fill_even_family(s, f, p);
        EXPECT_EQ(filling_defect(r.tree, f, r.filling, p), "") << "q=" << q << " p=" << p;
        EXPECT_EQ(r.tree.num_edges() - s.num_edges(), r.blowups);
        EXPECT_EQ(int(r.filling.segments.size()) * 2, f.size());
        EXPECT_LE(r.levels, f.size() / 2);
        EXPECT_TRUE(r.tree.collapses_to(s));
        if (p) EXPECT_TRUE(r.tree.is_symmetric(p));
        expect_pseudo_anosov(r.tree);
        nonempty += !f.empty();
    }
    EXPECT_GT(nonempty, 100);
}
