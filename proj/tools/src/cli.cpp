#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "veerkit/boundary.hpp"
#include "veerkit/errors.hpp"
#include "veerkit/homology.hpp"
#include "veerkit/stable_track.hpp"
#include "veerkit/triangulation.hpp"

namespace veerkit::cli {

json to_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

json to_json(const ZVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(to_json(x));
    return a;
}

json to_json(const std::vector<ZVec>& vs) {
    json a = json::array();
    for (const ZVec& v : vs) a.push_back(to_json(v));
    return a;
}

namespace {

json matrix_json(const IntMatrix& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
    return a;
}

json ints(const std::vector<int>& v) { return json(v); }

json error_json(const std::string& kind, const std::string& message) {
    return {{"kind", kind}, {"message", message}};
}

void emit(std::ostream& out, const json& j, bool pretty) { out << j.dump(pretty ? 2 : -1) << "\n"; }

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A taut signature, or a file holding either canonical JSON or a signature.
VeeringTriangulation load(const std::string& input) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(input, ec)) return parse_taut_signature(input);
    const std::string text = read_text(input);
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text[start] == '{') return parse_explicit(text);
    std::istringstream ss(text);
    std::string sig;
    ss >> sig;
    return parse_taut_signature(sig);
}

ZVec interior_point(const CarriedCone& cc, int faces) {
    ZVec w(faces);
    for (const ZVec& r : cc.weights.extreme_rays())
        for (int f = 0; f < faces; ++f) w[f] += r[f];
    return w;
}

json loop_json(const StableTrack& track, const H1Presentation& h, const StableLoop& l) {
    return {{"arcs", ints(l.arcs)},
            {"faces", ints(track.faces(l))},
            {"class", to_json(loop_class(h, transversalize(track, l)))}};
}

}  // namespace

json to_json(const RationalCone& c) {
    const ConeCertificate cert = c.certify();
    return {{"dim", c.dim()},
            {"rays", to_json(c.extreme_rays())},
            {"lineality", to_json(c.lineality())},
            {"facets", to_json(c.facets())},
            {"equations", to_json(c.equations())},
            {"certificate",
             {{"pairings_nonnegative", cert.pairings_nonnegative}, {"facets_supported", cert.facets_supported}}}};
}

json to_json(const FlipCertificate& c) {
    json j = {{"verdict", verdict_name(c.verdict)}, {"start", to_json(c.start)}};
    if (c.verdict == FiberVerdict::Fiber) {
        j["prefix"] = ints(c.prefix);
        j["cycle"] = ints(c.cycle);
    } else if (c.verdict == FiberVerdict::NotFiber) {
        j["to_terminal"] = ints(c.to_terminal);
        j["terminal"] = to_json(c.terminal);
        if (c.loop) j["loop"] = ints(c.loop->arcs);
    }
    return j;
}

json to_json(const DualityReport& r) {
    json loops = json::array();
    for (size_t i = 0; i < r.loops.size(); ++i) {
        json p = json::array();
        for (const Int& x : r.pairings[i]) p.push_back(to_json(x));
        loops.push_back({{"arcs", ints(r.loops[i].arcs)}, {"class", to_json(r.loop_classes[i])}, {"pairings", p}});
    }
    json witnesses = json::array();
    for (const auto& w : r.comparison.witnesses) {
        json j = {{"kind", witness_name(w.kind)}, {"vector", to_json(w.vector)}};
        if (w.loop >= 0) j["loop"] = w.loop;
        if (w.ray >= 0) j["ray"] = w.ray;
        witnesses.push_back(j);
    }
    auto gens = [](const RationalCone& c) {
        return json{{"rays", to_json(c.extreme_rays())}, {"lineality", to_json(c.lineality())}};
    };
    return {{"id", r.id},
            {"layered", r.layered},
            {"tetrahedra", r.num_tetrahedra},
            {"h1", {{"rank", r.free_rank}, {"torsion", to_json(r.torsion)}}},
            {"carried_cone", gens(r.carried)},
            {"loops", loops},
            {"loop_cone", gens(r.comparison.loop_cone)},
            {"dual_cone", gens(r.comparison.dual_cone)},
            {"loops_in_dual", r.comparison.loops_in_dual},
            {"dual_in_loops", r.comparison.dual_in_loops},
            {"cones_equal", r.comparison.equal()},
            {"certificates_valid", r.certificates_valid},
            {"verdict", verdict_name(r.verdict)},
            {"witnesses", witnesses}};
}

json to_json(const PseudoAnosovTree& t) {
    json edges = json::array();
    for (int e = 0; e < t.num_edges(); ++e) {
        const TreeEdge& te = t.edge(e);
        edges.push_back({{"id", e},
                         {"tail", te.tail},
                         {"head", te.head},
                         {"head_side", {te.head_side.first, te.head_side.size}},
                         {"left_region", te.left_region},
                         {"right_region", te.right_region}});
    }
    json splits = json::array();
    for (const auto& s : t.splits()) splits.push_back({s.first, s.size});
    return {{"leaves", t.num_leaves()}, {"vertices", t.num_vertices()}, {"edges", edges}, {"splits", splits}};
}

json to_json(const Filling& f) {
    json segs = json::array();
    for (const auto& s : f.segments) {
        json cs = json::array();
        for (const auto& c : s.crossings) cs.push_back({{"edge", c.edge}, {"from", c.from_region}, {"to", c.to_region}});
        segs.push_back({{"start", {s.start.region, s.start.ordinal}},
                        {"end", {s.end.region, s.end.ordinal}},
                        {"crossings", cs}});
    }
    return segs;
}

ZVec parse_weights(const std::string& text) {
    ZVec w;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Int x;
        if (tok.empty() || x.set_str(tok, 10) != 0) throw SchemaError("bad weight '" + tok + "'");
        w.push_back(x);
    }
    return w;
}

EvenFamily parse_family(int num_leaves, const std::string& text) {
    std::vector<int> regions;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto colon = tok.find(':');
        const std::string reg = tok.substr(0, colon);
        int r = 0;
        try {
            size_t used = 0;
            r = std::stoi(reg, &used);
            if (used != reg.size()) throw std::invalid_argument(reg);
        } catch (const std::exception&) {
            throw SchemaError("bad family entry '" + tok + "'");
        }
        if (colon != std::string::npos) {
            const std::string sign = tok.substr(colon + 1);
            if (sign != "+" && sign != "-") throw SchemaError("bad sign in '" + tok + "'");
            if ((sign == "+") != (point_sign({r, 0}) > 0))
                throw StructureError("region " + std::to_string(r) + " has sign " + (point_sign({r, 0}) > 0 ? "+" : "-"));
        }
        regions.push_back(r);
    }
    return EvenFamily::from_regions(num_leaves, regions);
}

BatchSummary run_batch(const std::string& census_text, bool assume_layered, bool pretty, std::ostream& out) {
    BatchSummary s;
    for (const CensusEntry& e : read_census(census_text)) {
        ++s.entries;
        const bool layered = assume_layered || e.layered();
        try {
            auto tri = parse_taut_signature(e.signature);
            auto report = run_duality_check(tri, e.signature, layered);
            json j = to_json(report);
            j["line"] = e.line;
            emit(out, j, pretty);
            if (report.verdict == DualityVerdict::Fail) ++s.failures;
        } catch (const Error& err) {
            ++s.errors;
            emit(out, {{"line", e.line}, {"signature", e.signature}, {"error", error_json(err.kind(), err.what())}},
                 pretty);
        } catch (const std::exception& err) {
            ++s.errors;
            emit(out, {{"line", e.line}, {"signature", e.signature}, {"error", error_json("InternalError", err.what())}},
                 pretty);
        }
    }
    return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Veering triangulation toolkit"};
    app.require_subcommand(1);
    bool pretty = false;
    std::string input;
    auto with_input = [&](CLI::App* sub) {
        sub->add_option("triangulation", input, "taut signature, or a file with canonical JSON or a signature")
            ->required();
        sub->add_flag("--pretty", pretty, "indented output");
        return sub;
    };

    auto* validate = with_input(app.add_subcommand("validate", "check tautness and veering"));
    auto* info = with_input(app.add_subcommand("info", "summary of the triangulation"));
    auto* ladders = with_input(app.add_subcommand("ladders", "ladder decomposition of the cusp tori"));
    bool minimal = false, unstable = false;
    auto* loops = with_input(app.add_subcommand("stable-loops", "ladderpole or minimal stable loops"));
    loops->add_flag("--minimal", minimal, "all minimal stable loops instead of the ladderpole loops");
    loops->add_flag("--unstable", unstable, "use the unstable track (the reversed coorientation)");
    auto* homology = with_input(app.add_subcommand("homology", "H1 with the dual spine boundary maps"));
    auto* carried = with_input(app.add_subcommand("carried-cone", "cone of carried weight vectors"));
    int tetra = -1;
    std::string weights;
    auto* flip = with_input(app.add_subcommand("flip", "one upward flip"));
    flip->add_option("--tetra", tetra, "tetrahedron to flip through")->required();
    flip->add_option("--weights", weights, "comma separated face weights (default: sum of the extreme rays)");
    auto* fiber = with_input(app.add_subcommand("is-fiber", "fiber certificate for a carried weight vector"));
    fiber->add_option("--weights", weights, "comma separated face weights (default: sum of the extreme rays)");
    bool assume_layered = false;
    auto* dual = with_input(app.add_subcommand("dual-check", "compare the loop cone with the dual carried cone"));
    dual->add_flag("--assume-layered", assume_layered, "treat the input as certified layered");

    int prongs = 0, rotation = 0;
    std::string family;
    bool brute = false;
    auto* blowup = app.add_subcommand("blowup", "fill an even family over a dynamic blowup of a star");
    blowup->add_option("--prongs", prongs, "star with 2q edges")->required();
    blowup->add_option("--rotation", rotation, "symmetry by 2 pi p / q");
    blowup->add_option("--family", family, "comma separated region[:sign] entries");
    blowup->add_flag("--brute", brute, "also run the exhaustive search");
    blowup->add_flag("--pretty", pretty, "indented output");

    std::string batch_file;
    auto* batch = app.add_subcommand("batch", "dual-check every entry of a census file");
    batch->add_option("file", batch_file, "census file, or - for standard input")->required();
    batch->add_flag("--assume-layered", assume_layered, "treat every entry as certified layered");
    batch->add_flag("--pretty", pretty, "indented output");

    std::vector<std::string> argv_store{"veerkit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*batch) return run_batch(read_text(batch_file), assume_layered, pretty, out).exit_code();

        if (*blowup) {
            const auto star = PseudoAnosovTree::star(prongs);
            const auto fam = parse_family(star.num_leaves(), family);
            const auto res = fill_even_family(star, fam, rotation);
            json pts = json::array();
            for (const auto& p : fam.points())
                pts.push_back({{"region", p.region}, {"ordinal", p.ordinal}, {"sign", point_sign(p)}});
            json j = {{"prongs", prongs},
                      {"rotation", rotation},
                      {"family", pts},
                      {"tree", to_json(res.tree)},
                      {"filling", to_json(res.filling)},
                      {"blowups", res.blowups},
                      {"levels", res.levels},
                      {"valid", validate_filling(res.tree, fam, res.filling, rotation)}};
            if (brute) {
                const auto bf = brute_force_fill(star, fam, rotation);
                j["brute_force"] = bf ? json{{"tree", to_json(bf->tree)}, {"filling", to_json(bf->filling)}} : json();
            }
            emit(out, j, pretty);
            return 0;
        }

        if (*validate) {
            try {
                const auto tri = load(input);
                json colours = json::array();
                for (Colour c : tri.colours()) colours.push_back(colour_name(c));
                emit(out, {{"id", input}, {"valid", true}, {"tetrahedra", tri.num_tetrahedra()}, {"colours", colours}},
                     pretty);
                return 0;
            } catch (const Error& e) {
                emit(out, {{"id", input}, {"valid", false}, {"error", error_json(e.kind(), e.what())}}, pretty);
                return 1;
            }
        }

        const VeeringTriangulation tri = load(input);
        const H1Presentation h = homology_h1(tri);
        json j = {{"id", input}};

        if (*info) {
            json edges = json::array();
            for (int e = 0; e < tri.num_edges(); ++e)
                edges.push_back({{"degree", tri.edge(e).degree()}, {"colour", colour_name(tri.colour(e))}});
            const auto bc = build_boundary(tri);
            j["tetrahedra"] = tri.num_tetrahedra();
            j["faces"] = tri.num_faces();
            j["edges"] = edges;
            j["cusps"] = tri.num_cusps();
            j["ladders"] = bc.ladders().size();
            j["h1"] = {{"rank", h.free_rank}, {"torsion", to_json(h.torsion)}};
            j["stable_track"] = {{"nodes", tri.num_faces()}, {"arcs", 2 * tri.num_faces()}};
        } else if (*ladders) {
            const auto bc = build_boundary(tri);
            std::vector<int> per_cusp(bc.num_cusps());
            json ls = json::array();
            for (const auto& l : bc.ladders()) {
                ++per_cusp[l.cusp];
                ls.push_back({{"cusp", l.cusp},
                              {"kind", kind_name(l.kind)},
                              {"triangles", l.triangles.size()},
                              {"rungs", l.rungs.size()},
                              {"left_pole", l.poles[0].length()},
                              {"right_pole", l.poles[1].length()}});
            }
            const auto rule = check_veering_rule(bc, tri);
            j["ladders_per_cusp"] = per_cusp;
            j["ladders"] = ls;
            j["veering_rule"] = {{"checks", rule.checks.size()}, {"failures", rule.failures}};
        } else if (*loops) {
            const VeeringTriangulation t = unstable ? tri.reversed() : tri;
            const H1Presentation ht = unstable ? homology_h1(t) : h;
            const StableTrack track(t);
            std::vector<StableLoop> found;
            if (minimal) {
                found = enumerate_minimal_stable_loops(track);
            } else {
                const auto bc = build_boundary(t);
                std::set<StableLoop> uniq;
                for (int l = 0; l < int(bc.ladders().size()); ++l)
                    if (bc.ladders()[l].kind == Kind::Upward)
                        for (int p = 0; p < 2; ++p) uniq.insert(ladderpole_stable_loop(track, bc, l, p));
                found.assign(uniq.begin(), uniq.end());
            }
            json ls = json::array();
            for (const auto& l : found) ls.push_back(loop_json(track, ht, l));
            j["track"] = unstable ? "unstable" : "stable";
            j["kind"] = minimal ? "minimal" : "ladderpole";
            j["loops"] = ls;
        } else if (*homology) {
            j["rank"] = h.free_rank;
            j["torsion"] = to_json(h.torsion);
            j["D1"] = matrix_json(h.spine.D1);
            j["D2"] = matrix_json(h.spine.D2);
        } else if (*carried) {
            const auto cc = carried_cone(tri, h);
            j["weights"] = to_json(cc.weights);
            j["projected"] = to_json(cc.projected);
            j["ray_projections"] = to_json(cc.ray_projections);
        } else if (*flip) {
            const auto cc = carried_cone(tri, h);
            const ZVec w = weights.empty() ? interior_point(cc, tri.num_faces()) : parse_weights(weights);
            const ZVec after = upward_flip(tri, h, w, tetra);
            std::vector<int> next;
            for (int t = 0; t < tri.num_tetrahedra(); ++t)
                if (is_flippable(tri, after, t)) next.push_back(t);
            j["tetra"] = tetra;
            j["before"] = to_json(w);
            j["after"] = to_json(after);
            j["flippable_after"] = next;
        } else if (*fiber) {
            const auto cc = carried_cone(tri, h);
            const ZVec w = weights.empty() ? interior_point(cc, tri.num_faces()) : parse_weights(weights);
            const auto cert = is_fiber_class(tri, h, w);
            j["certificate"] = to_json(cert);
            j["replay"] = replay(tri, h, cert);
        } else if (*dual) {
            const auto report = run_duality_check(tri, input, assume_layered);
            emit(out, to_json(report), pretty);
            return report.verdict == DualityVerdict::Fail ? 1 : 0;
        }
        emit(out, j, pretty);
        return 0;
    } catch (const Error& e) {
        emit(out, {{"error", error_json(e.kind(), e.what())}}, pretty);
        return 1;
    } catch (const std::exception& e) {
        emit(out, {{"error", error_json("InternalError", e.what())}}, pretty);
        return 1;
    }
}

}  // namespace veerkit::cli
