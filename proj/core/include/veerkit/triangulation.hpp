#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "veerkit/perm.hpp"

namespace veerkit {

struct Gluing {
    int tet = -1;  // -1 marks an unglued face slot
    Perm4 perm;
    bool operator==(const Gluing&) const = default;
};

// Gluing table plus taut angle digits, exactly as read from input.
struct RawTriangulation {
    std::vector<std::array<Gluing, 4>> gluings;
    std::vector<int> pi_pair;
    int size() const { return int(gluings.size()); }
};

enum class Colour { Left, Right };
const char* colour_name(Colour c);

struct LinkCorner {
    int tet;
    int slot;
    int end0;  // vertex label in `tet` sitting at end 0 of the edge class
    bool pi;
};

// One appearance of a face in an edge link. face_edge indexes the three
// edges of the face relative to its canonical representative.
struct FaceInc {
    int face;
    int face_edge;
    bool operator==(const FaceInc&) const = default;
    auto operator<=>(const FaceInc&) const = default;
};

struct EdgeClass {
    std::vector<LinkCorner> corners;  // cyclic, starting at the least (tet, slot)
    std::vector<FaceInc> link_faces;  // link_faces[i] sits between corners[i] and corners[i+1]
    int degree() const { return int(corners.size()); }
};

struct FaceClass {
    std::array<int, 2> tet{};
    std::array<int, 2> slot{};
    Perm4 perm;                      // vertex map from rep 0 to rep 1
    std::array<int, 3> rep0_verts{};  // face vertices of rep 0, increasing; face edge j is opposite rep0_verts[j]
    std::array<int, 3> edge{};        // edge class of each face edge
};

struct EdgeTautCheck {
    int edge;
    int degree;
    int pi_count;
    bool pi_adjacent;
};

struct TautReport {
    bool pass = true;
    std::vector<EdgeTautCheck> edges;
    std::vector<std::string> problems;
};

// Combinatorial quotient structure of a closed-up gluing table: edge links,
// face classes, cusps and tetrahedron orientations. Taut data is recorded but
// not yet validated.
class Triangulation {
public:
    static Triangulation from_raw(const RawTriangulation& raw);

    const RawTriangulation& raw() const { return raw_; }
    int num_tetrahedra() const { return raw_.size(); }
    int num_edges() const { return int(edges_.size()); }
    int num_faces() const { return int(faces_.size()); }
    int num_cusps() const { return num_cusps_; }

    const Gluing& gluing(int t, int f) const { return raw_.gluings[t][f]; }
    int pi_pair(int t) const { return raw_.pi_pair[t]; }
    int orientation(int t) const { return orient_[t]; }
    int edge_of(int t, int slot) const { return edge_of_[t][slot]; }
    int face_of(int t, int f) const { return face_of_[t][f]; }
    int cusp_of(int t, int v) const { return cusp_of_[t][v]; }
    int end0_vertex(int t, int slot) const { return end0_[t][slot]; }

    const EdgeClass& edge(int e) const { return edges_[e]; }
    const FaceClass& face(int f) const { return faces_[f]; }

    // Face-edge index of the edge {a,b} (labels of tet t) inside face slot f of t.
    int face_edge_index(int t, int f, int a, int b) const;
    // Vertices {a,b} (labels of the given representative) of face edge j.
    std::array<int, 2> face_edge_vertices(int face, int rep, int j) const;

    bool slot_is_pi(int t, int slot) const;
    Colour corner_colour(int t, int slot) const;

    // Switch id 2*edge + end for the end of edge slot {v,x} of t sitting at vertex v.
    int switch_id(int t, int v, int x) const;

protected:
    RawTriangulation raw_;
    std::vector<std::array<int, 6>> edge_of_;
    std::vector<std::array<int, 6>> end0_;
    std::vector<std::array<int, 4>> face_of_;
    std::vector<std::array<int, 4>> cusp_of_;
    std::vector<int> orient_;
    std::vector<EdgeClass> edges_;
    std::vector<FaceClass> faces_;
    int num_cusps_ = 0;
};

TautReport validate_taut(const Triangulation& tri);

// Per-edge colours; throws VeeringError naming the first edge with mixed types.
std::vector<Colour> validate_veering(const Triangulation& tri);

struct FanSlot {
    int edge = -1;
    int side = -1;
    int pos = -1;
};

struct BuildOptions {
    // Slot of the top pi-edge per tetrahedron; propagated from the seed when absent.
    std::optional<std::vector<int>> top_pi;
    // Per-edge exchange of the SideA/SideB labels.
    std::vector<bool> swap_sides;
};

// Taut, cooriented, veering triangulation with all derived structure.
class VeeringTriangulation : public Triangulation {
public:
    static VeeringTriangulation build(const RawTriangulation& raw, const BuildOptions& opts = {});
    static VeeringTriangulation build(const Triangulation& tri, const BuildOptions& opts = {});

    int top_pi(int t) const { return top_pi_[t]; }
    int bottom_pi(int t) const { return 5 - top_pi_[t]; }
    bool is_top_face(int t, int f) const;
    std::array<int, 2> top_faces(int t) const;     // face classes
    std::array<int, 2> bottom_faces(int t) const;  // face classes

    int tetra_above(int face) const { return above_[face]; }
    int tetra_below(int face) const { return below_[face]; }
    int top_tetra(int e) const { return top_tetra_[e]; }
    int bottom_tetra(int e) const { return bottom_tetra_[e]; }
    Colour colour(int e) const { return colour_[e]; }
    const std::vector<Colour>& colours() const { return colour_; }

    // Fan of one side of an edge, bottom to top.
    const std::vector<FaceInc>& fan(int e, int side) const { return fans_[e][side]; }
    const FanSlot& fan_slot(int face, int j) const { return fan_slot_[face][j]; }
    // Edge carrying the large slot of a face, and its face-edge index.
    int large_edge(int face) const;
    int large_face_edge(int face) const { return large_j_[face]; }

    // The same triangulation with every coorientation reversed.
    VeeringTriangulation reversed() const;
    // The same triangulation with SideA/SideB exchanged on the marked edges.
    VeeringTriangulation with_swapped_sides(const std::vector<bool>& mask) const;

    const std::vector<int>& top_pi_all() const { return top_pi_; }
    const std::vector<bool>& swapped_sides() const { return swap_; }

private:
    std::vector<int> top_pi_;
    std::vector<std::array<bool, 4>> is_top_;
    std::vector<int> above_, below_;
    std::vector<int> top_tetra_, bottom_tetra_;
    std::vector<Colour> colour_;
    std::vector<std::array<std::vector<FaceInc>, 2>> fans_;
    std::vector<std::array<FanSlot, 3>> fan_slot_;
    std::vector<int> large_j_;
    std::vector<bool> swap_;
};

// Parsing and serialization.
RawTriangulation parse_explicit_raw(const std::string& json_text);
VeeringTriangulation parse_explicit(const std::string& json_text);
std::string to_json(const RawTriangulation& raw);

RawTriangulation decode_isosig(const std::string& sig);
RawTriangulation parse_taut_signature_raw(const std::string& text);
VeeringTriangulation parse_taut_signature(const std::string& text);

// Census files: one taut signature per line, '#' comments; trailing tokens are metadata.
struct CensusEntry {
    int line = 0;
    std::string signature;
    std::vector<std::string> meta;
    bool layered() const;  // census depth field "F0"
};
std::vector<CensusEntry> read_census(const std::string& text);

// Isomorphism machinery.
RawTriangulation relabel(const RawTriangulation& raw, const std::vector<int>& tet_perm,
                         const std::vector<Perm4>& vertex_perms);
std::vector<int> canonical_code(const RawTriangulation& raw);
bool isomorphic(const RawTriangulation& a, const RawTriangulation& b);
RawTriangulation disjoint_union(const RawTriangulation& a, const RawTriangulation& b);

}  // namespace veerkit
