#include <cctype>
#include <sstream>

#include <json.hpp>

#include "veerkit/errors.hpp"
#include "veerkit/triangulation.hpp"

namespace veerkit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int sig_value(char c) {
    if (c >= 'a' && c <= 'z') return c - 'a';
    if (c >= 'A' && c <= 'Z') return c - 'A' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '-') return 63;
    throw SignatureError(std::string("invalid signature character '") + c + "'");
}

class SigReader {
public:
    explicit SigReader(const std::string& s) : s_(s) {}
    int next() {
        if (pos_ >= s_.size()) throw SignatureError("signature ends prematurely");
        return sig_value(s_[pos_++]);
    }
    long read_int(int chars) {
        long v = 0;
        for (int i = 0; i < chars; ++i) v |= long(next()) << (6 * i);
        return v;
    }
    bool done() const { return pos_ == s_.size(); }

private:
    const std::string& s_;
    size_t pos_ = 0;
};

Perm4 parse_perm(const std::string& s, const std::string& where) {
    if (s.size() != 4) throw SchemaError(where + ": permutation must have 4 characters");
    Perm4 p;
    for (int i = 0; i < 4; ++i) {
        if (s[i] < '0' || s[i] > '3') throw SchemaError(where + ": permutation characters must be 0-3");
        p.img[i] = std::uint8_t(s[i] - '0');
    }
    if (!p.is_valid()) throw SchemaError(where + ": permutation is not a bijection");
    return p;
}

}  // namespace

RawTriangulation decode_isosig(const std::string& sig) {
    if (sig.empty()) throw SignatureError("empty signature");
    SigReader rd(sig);
    long n = rd.next();
    int chars = 1;
    if (n == 63) {
        chars = rd.next();
        n = rd.read_int(chars);
    }
    if (n == 0) throw SignatureError("signature encodes an empty triangulation");

    std::vector<int> actions;
    long facets = 0, joins = 0;
    while (facets < 4 * n) {
        int v = rd.next();
        for (int k = 0; k < 3; ++k) {
            int a = (v >> (2 * k)) & 3;
            if (facets >= 4 * n) {
                if (a != 0) throw SignatureError("trailing facet actions");
                continue;
            }
            if (a == 3) throw SignatureError("invalid facet action");
            actions.push_back(a);
            facets += a == 0 ? 1 : 2;
            if (a == 2) ++joins;
        }
    }
    if (facets != 4 * n) throw SignatureError("facet actions overrun the facet count");
    std::vector<long> dest(joins);
    for (auto& d : dest) d = rd.read_int(chars);
    std::vector<int> gl(joins);
    for (auto& g : gl) {
        g = rd.next();
        if (g >= 24) throw SignatureError("invalid gluing permutation index");
    }
    if (!rd.done()) throw SignatureError("trailing characters after signature");

    RawTriangulation raw;
    raw.gluings.assign(n, {});
    long next_unused = 1;
    size_t act = 0, join = 0;
    for (long t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            if (raw.gluings[t][f].tet >= 0) continue;
            if (act >= actions.size()) throw SignatureError("facet actions exhausted");
            int a = actions[act++];
            if (a == 0) continue;  // boundary face, rejected downstream
            if (a == 1) {
                if (next_unused >= n) throw SignatureError("too many new tetrahedra");
                raw.gluings[t][f] = {int(next_unused), Perm4()};
                raw.gluings[next_unused][f] = {int(t), Perm4()};
                ++next_unused;
            } else {
                long d = dest[join];
                Perm4 p = Perm4::from_lex_index(gl[join]);
                ++join;
                if (d >= next_unused) throw SignatureError("join to an unreached tetrahedron");
                if (raw.gluings[d][p[f]].tet >= 0 || (d == t && p[f] == f))
                    throw SignatureError("join to an occupied face");
                raw.gluings[t][f] = {int(d), p};
                raw.gluings[d][p[f]] = {int(t), p.inverse()};
            }
        }
        if (next_unused <= t + 1 && t + 1 < n) throw SignatureError("signature is disconnected");
    }
    raw.pi_pair.assign(n, 0);
    return raw;
}

RawTriangulation parse_taut_signature_raw(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto us = s.rfind('_');
    if (us == std::string::npos) throw SignatureError("signature lacks the '_angles' suffix");
    std::string iso = s.substr(0, us), digits = s.substr(us + 1);
    RawTriangulation raw = decode_isosig(iso);
    if (int(digits.size()) != raw.size())
        throw SignatureError("expected " + std::to_string(raw.size()) + " angle digits, found " +
                             std::to_string(digits.size()));
    for (int t = 0; t < raw.size(); ++t) {
        if (digits[t] < '0' || digits[t] > '2') throw SignatureError("angle digits must be 0, 1 or 2");
        raw.pi_pair[t] = digits[t] - '0';
    }
    return raw;
}

VeeringTriangulation parse_taut_signature(const std::string& text) {
    return VeeringTriangulation::build(parse_taut_signature_raw(text));
}

RawTriangulation parse_explicit_raw(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("document must be a JSON object");
    for (const char* key : {"num_tetrahedra", "gluings", "pi_pair"})
        if (!doc.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
    if (!doc["num_tetrahedra"].is_number_integer()) throw SchemaError("num_tetrahedra must be an integer");
    long n = doc["num_tetrahedra"].get<long>();
    if (n < 1) throw SchemaError("num_tetrahedra must be positive");
    const json& g = doc["gluings"];
    const json& pi = doc["pi_pair"];
    if (!g.is_array() || long(g.size()) != n) throw SchemaError("gluings must list num_tetrahedra rows");
    if (!pi.is_array() || long(pi.size()) != n) throw SchemaError("pi_pair must list num_tetrahedra digits");

    RawTriangulation raw;
    raw.gluings.resize(n);
    raw.pi_pair.resize(n);
    for (long t = 0; t < n; ++t) {
        const json& row = g[t];
        if (!row.is_array() || row.size() != 4) throw SchemaError("gluing row " + std::to_string(t) + " must have 4 entries");
        for (int f = 0; f < 4; ++f) {
            std::string where = "gluing " + std::to_string(t) + "." + std::to_string(f);
            const json& item = row[f];
            if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_string())
                throw SchemaError(where + " must be [tetrahedron, \"perm\"]");
            raw.gluings[t][f] = {item[0].get<int>(), parse_perm(item[1].get<std::string>(), where)};
        }
        if (!pi[t].is_number_integer()) throw SchemaError("pi_pair entries must be integers");
        raw.pi_pair[t] = pi[t].get<int>();
    }
    return raw;
}

VeeringTriangulation parse_explicit(const std::string& text) {
    return VeeringTriangulation::build(parse_explicit_raw(text));
}

std::string to_json(const RawTriangulation& raw) {
    ordered_json doc;
    doc["num_tetrahedra"] = raw.size();
    ordered_json rows = ordered_json::array();
    for (const auto& row : raw.gluings) {
        ordered_json r = ordered_json::array();
        for (const Gluing& g : row) r.push_back(ordered_json::array({g.tet, g.perm.str()}));
        rows.push_back(r);
    }
    doc["gluings"] = rows;
    doc["pi_pair"] = raw.pi_pair;
    return doc.dump();
}

bool CensusEntry::layered() const { return !meta.empty() && meta[0] == "F0"; }

std::vector<CensusEntry> read_census(const std::string& text) {
    std::vector<CensusEntry> out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        CensusEntry e;
        e.line = no;
        if (!(ls >> e.signature)) continue;
        std::string tok;
        while (ls >> tok) e.meta.push_back(tok);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace veerkit
