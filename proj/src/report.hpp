#pragma once

#include <json.hpp>

#include <string>

#include "bounds.hpp"
#include "fermatlab.hpp"
#include "heights.hpp"
#include "integrality.hpp"
#include "padic.hpp"
#include "ratmap.hpp"

namespace arithdyn {

using Json = nlohmann::json;

// {"num": ["a0", ...], "den": ["b0", ...]}; entries are decimal strings "p/q" or integers.
RationalMap map_from_json(const Json& j);
Json map_to_json(const RationalMap& phi);

Rational rational_from_json(const Json& j, const std::string& key);
Integer integer_from_json(const Json& j, const std::string& key);

Json to_json(const ProjPoint& x);
Json to_json(const LogNumber& x);  // {"value": double, "log_of": "p/q"}
Json to_json(const HeightValue& h);
Json to_json(const Witness& w);
Json to_json(const OrbitScanReport& r);
Json to_json(const QuasiScanReport& r);
Json to_json(const CanonicalHeightInterval& c);
Json to_json(const HeightDropConstants& c);
Json to_json(const SweepResult& r);
Json to_json(const SolutionTriple& t);
Json to_json(const BoundReport& b);
Json to_json(const ExplicitZ2Params& p);

// Columns: n, x0, x1, height, integral, witnesses (';'-separated), flags.
std::string to_csv(const OrbitScanReport& r);
// Columns: n, in_gamma, skipped.
std::string to_csv(const QuasiScanReport& r);

}  // namespace arithdyn
