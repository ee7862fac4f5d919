#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "veerkit/blowup.hpp"
#include "veerkit/carried.hpp"
#include "veerkit/duality.hpp"

namespace veerkit::cli {

using nlohmann::json;

json to_json(const Int& x);
json to_json(const ZVec& v);
json to_json(const std::vector<ZVec>& vs);
json to_json(const RationalCone& c);
json to_json(const FlipCertificate& c);
json to_json(const DualityReport& r);
json to_json(const PseudoAnosovTree& t);
json to_json(const Filling& f);

// Comma separated integers.
ZVec parse_weights(const std::string& text);
// Comma separated entries "r" or "r:+" / "r:-"; a given sign must match the region's sign.
EvenFamily parse_family(int num_leaves, const std::string& text);

struct BatchSummary {
    int entries = 0, errors = 0, failures = 0;
    int exit_code() const { return errors || failures ? 1 : 0; }
};
// One dual-check record or error record per census entry, in input order.
BatchSummary run_batch(const std::string& census_text, bool assume_layered, bool pretty, std::ostream& out);

// Entry point shared by the executable and the tests; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace veerkit::cli
