#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace veerkit::testing {

std::string data_path(const std::string& name) { return std::string(VEERKIT_TEST_DATA) + "/" + name; }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::vector<int> parse_int_list(const std::string& tok) {
    std::vector<int> out;
    std::string cur;
    for (char c : tok) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        } else if (!cur.empty()) {
            out.push_back(std::stoi(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::stoi(cur));
    return out;
}

std::vector<Fixture> load(const std::string& name) {
    std::vector<Fixture> out;
    for (const CensusEntry& e : read_census(read_file(data_path(name)))) {
        Fixture f;
        f.sig = e.signature;
        f.layered = e.layered();
        if (e.meta.size() > 1) f.cusps = std::stoi(e.meta[1]);
        if (e.meta.size() > 2) f.ladders = parse_int_list(e.meta[2]);
        f.tetrahedra = int(f.sig.size() - f.sig.rfind('_') - 1);
        out.push_back(f);
    }
    return out;
}

}  // namespace

const std::vector<Fixture>& layered_fixtures() {
    static const std::vector<Fixture> v = load("layered_fixtures.txt");
    return v;
}

const std::vector<Fixture>& nonlayered_fixtures() {
    static const std::vector<Fixture> v = load("nonlayered_fixtures.txt");
    return v;
}

std::vector<Fixture> all_fixtures() {
    std::vector<Fixture> v = layered_fixtures();
    const auto& nl = nonlayered_fixtures();
    v.insert(v.end(), nl.begin(), nl.end());
    return v;
}

std::vector<Fixture> layered_up_to(int max_tetrahedra) {
    std::vector<Fixture> v;
    for (const Fixture& f : layered_fixtures())
        if (f.tetrahedra <= max_tetrahedra) v.push_back(f);
    return v;
}

const nlohmann::json& oracle() {
    static const nlohmann::json j = nlohmann::json::parse(read_file(data_path("oracle.json")));
    return j;
}

const nlohmann::json& oracle_entry(const std::string& sig) {
    for (const auto& e : oracle())
        if (e["sig"] == sig) return e;
    throw std::runtime_error("no oracle entry for " + sig);
}

RawTriangulation raw_from_table(const nlohmann::json& gluings, const nlohmann::json& pi_pair) {
    nlohmann::json doc;
    doc["num_tetrahedra"] = gluings.size();
    doc["gluings"] = gluings;
    doc["pi_pair"] = pi_pair;
    return parse_explicit_raw(doc.dump());
}

std::vector<std::string> signatures(const std::vector<Fixture>& fixtures) {
    std::vector<std::string> v;
    for (const auto& f : fixtures) v.push_back(f.sig);
    return v;
}

const Fixture& fixture(const std::string& sig) {
    for (const auto* list : {&layered_fixtures(), &nonlayered_fixtures()})
        for (const auto& f : *list)
            if (f.sig == sig) return f;
    throw std::out_of_range("unknown fixture " + sig);
}

}  // namespace veerkit::testing
