#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "veerkit/triangulation.hpp"

namespace veerkit::testing {

inline constexpr const char* kFigureEight = "cPcbbbiht_12";

struct Fixture {
    std::string sig;
    bool layered = false;
    int cusps = 0;
    std::vector<int> ladders;  // ladder count per cusp, as listed in the census
    int tetrahedra = 0;
};

std::string data_path(const std::string& name);
std::string read_file(const std::string& path);

const std::vector<Fixture>& layered_fixtures();
const std::vector<Fixture>& nonlayered_fixtures();
std::vector<Fixture> all_fixtures();
// Layered fixtures up to the given size.
std::vector<Fixture> layered_up_to(int max_tetrahedra);
std::vector<std::string> signatures(const std::vector<Fixture>& fixtures);
const Fixture& fixture(const std::string& sig);

const nlohmann::json& oracle();
const nlohmann::json& oracle_entry(const std::string& sig);

RawTriangulation raw_from_table(const nlohmann::json& gluings, const nlohmann::json& pi_pair);

}  // namespace veerkit::testing
