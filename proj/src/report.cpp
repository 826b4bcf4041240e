#include "report.hpp"

#include <sstream>

namespace arithdyn {

namespace {

Rational rational_value(const Json& v, const std::string& what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
  fail(ErrorCode::InvalidArgument, what + " must be an integer or a decimal string \"p/q\"");
}

std::vector<Rational> coefficient_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    fail(ErrorCode::InvalidArgument, std::string("map needs an array \"") + key + "\"");
  }
  std::vector<Rational> out;
  for (const auto& c : j.at(key)) out.push_back(rational_value(c, std::string("map coefficient in ") + key));
  return out;
}

}  // namespace

RationalMap map_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidArgument, "map must be an object {\"num\": [...], \"den\": [...]}");
  for (const auto& [key, value] : j.items()) {
    if (key != "num" && key != "den") fail(ErrorCode::InvalidArgument, "unknown map key \"" + key + "\"");
  }
  return RationalMap::build(coefficient_list(j, "num"), coefficient_list(j, "den"));
}

Json map_to_json(const RationalMap& phi) {
  Json num = Json::array(), den = Json::array();
  for (const auto& c : phi.num()) num.push_back(c.get_str());
  for (const auto& c : phi.den()) den.push_back(c.get_str());
  return {{"num", num}, {"den", den}, {"degree", phi.degree()}, {"resultant", phi.resultant().get_str()},
          {"text", phi.to_string()}};
}

Rational rational_from_json(const Json& j, const std::string& key) { return rational_value(j.at(key), key); }

Integer integer_from_json(const Json& j, const std::string& key) {
  const Json& v = j.at(key);
  if (v.is_string()) return parse_integer(v.get<std::string>());
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  fail(ErrorCode::InvalidArgument, key + " must be an integer");
}

Json to_json(const ProjPoint& x) { return Json::array({x.x0().get_str(), x.x1().get_str()}); }

Json to_json(const LogNumber& x) { return {{"value", x.to_double()}, {"log_of", to_string(x.argument())}}; }

Json to_json(const HeightValue& h) { return to_json(h.exact); }

Json to_json(const Witness& w) {
  if (w.is_prime) return {{"prime", w.value.get_str()}};
  Json out = {{"unresolved", nullptr}, {"bits", bit_length(w.value)}};
  if (mpz_sizeinbase(w.value.get_mpz_t(), 10) <= 256) out["unresolved"] = w.value.get_str();
  return out;
}

namespace {

Json flags_of(const OrbitScanEntry& e) {
  Json f = Json::array();
  if (e.equals_beta) f.push_back("equals_beta");
  if (e.at_infinity) f.push_back("infinity");
  return f;
}

}  // namespace

Json to_json(const OrbitScanReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json w = Json::array();
    for (const auto& x : e.witnesses) w.push_back(to_json(x));
    entries.push_back({{"n", e.n},
                       {"point", to_json(e.point)},
                       {"height", to_json(e.height)},
                       {"integral", e.integral},
                       {"witnesses", w},
                       {"flags", flags_of(e)}});
  }
  return {{"entries", entries},
          {"integral_indices", r.integral_indices},
          {"excluded", r.excluded},
          {"first_index", r.first_index},
          {"truncated", r.truncated},
          {"truncated_at", r.truncated_at < 0 ? Json(nullptr) : Json(r.truncated_at)}};
}

Json to_json(const QuasiScanReport& r) {
  return {{"gamma", r.gamma},
          {"skipped", r.skipped},
          {"checked", r.checked},
          {"truncated", r.truncated},
          {"truncated_at", r.truncated_at < 0 ? Json(nullptr) : Json(r.truncated_at)}};
}

Json to_json(const CanonicalHeightInterval& c) {
  return {{"lo", c.lo},
          {"hi", c.hi},
          {"width", c.width()},
          {"iterations_used", c.iterations_used},
          {"continuation_from", c.continuation_from < 0 ? Json(nullptr) : Json(c.continuation_from)},
          {"precision_bits", c.precision}};
}

Json to_json(const HeightDropConstants& c) {
  return {{"e_up", to_json(c.e_up)}, {"e_low", to_json(c.e_low)}, {"bezout_bound", c.bezout_bound.get_str()}};
}

Json to_json(const SolutionTriple& t) { return {{"n", t.n}, {"i", t.i}, {"j", t.j}}; }

Json to_json(const SweepResult& r) {
  Json hist = Json::object();
  for (const auto& [count, pairs] : r.histogram) hist[std::to_string(count)] = pairs;
  return {{"pairs", r.pairs},
          {"max_count", r.max_count},
          {"argmax", {r.argmax.first, r.argmax.second}},
          {"max_count_positive_n", r.max_count_positive_n},
          {"argmax_positive_n", {r.argmax_positive_n.first, r.argmax_positive_n.second}},
          {"histogram", hist},
          {"bound", kFermatBound},
          {"bound_holds", r.bound_holds}};
}

Json to_json(const BoundReport& b) {
  Json inputs = Json::object();
  for (const auto& [k, v] : b.inputs) inputs[k] = v;
  return {{"name", b.name}, {"inputs", inputs}, {"value", b.value}, {"notes", b.notes}};
}

Json to_json(const ExplicitZ2Params& p) {
  return {{"N", p.N},
          {"r_bound", p.r_bound.get_str()},
          {"m_threshold", p.m_threshold},
          {"gap_threshold", p.gap_threshold},
          {"final_threshold", p.final_threshold}};
}

std::string to_csv(const OrbitScanReport& r) {
  std::ostringstream os;
  os << "n,x0,x1,height,integral,witnesses,flags\n";
  for (const auto& e : r.entries) {
    os << e.n << ',' << e.point.x0().get_str() << ',' << e.point.x1().get_str() << ',' << Json(e.height.value).dump()
       << ',' << (e.integral ? "true" : "false") << ',';
    for (size_t i = 0; i < e.witnesses.size(); ++i) {
      if (i) os << ';';
      const auto& w = e.witnesses[i];
      os << (w.is_prime ? w.value.get_str() : "unresolved:" + std::to_string(bit_length(w.value)) + "bits");
    }
    os << ',';
    const Json f = flags_of(e);
    for (size_t i = 0; i < f.size(); ++i) os << (i ? ";" : "") << f[i].get<std::string>();
    os << '\n';
  }
  return os.str();
}

std::string to_csv(const QuasiScanReport& r) {
  std::ostringstream os;
  os << "n,in_gamma,skipped\n";
  size_t g = 0, s = 0;
  for (unsigned long n = 0; n < r.checked; ++n) {
    const bool in_gamma = g < r.gamma.size() && r.gamma[g] == n;
    const bool skipped = s < r.skipped.size() && r.skipped[s] == n;
    g += in_gamma;
    s += skipped;
    os << n << ',' << (in_gamma ? "true" : "false") << ',' << (skipped ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace arithdyn
