#include "commands.hpp"

#include <chrono>
#include <ctime>
#include <functional>
#include <iomanip>
#include <sstream>

#include "bounds.hpp"
#include "fermatlab.hpp"
#include "heights.hpp"
#include "integrality.hpp"
#include "padic.hpp"
#include "ratmap.hpp"
#include "report.hpp"

namespace arithdyn {

namespace {

enum class Kind { String, Integer, Number, Boolean, Map, BigInt, Rational, Point };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::String: return "string";
    case Kind::Integer: return "integer";
    case Kind::Number: return "number";
    case Kind::Boolean: return "boolean";
    case Kind::Map: return "map";
    case Kind::BigInt: return "bigint";
    case Kind::Rational: return "rational";
    case Kind::Point: return "point";
  }
  return "string";
}

struct Key {
  std::string name;
  Kind kind;
  Json fallback;  // null: no default
  bool required;
  std::string help;
};

struct Result {
  Json body;
  int exit_code = kExitOk;
  std::string csv;  // set when the command rendered CSV
};

struct Command {
  std::string name;
  std::string summary;
  std::vector<Key> keys;
  std::function<Result(const Json&)> run;
};

Key required(std::string name, Kind kind, std::string help) { return {std::move(name), kind, nullptr, true, std::move(help)}; }
Key optional(std::string name, Kind kind, Json fallback, std::string help) {
  return {std::move(name), kind, std::move(fallback), false, std::move(help)};
}

std::vector<Key> common_keys() {
  return {optional("format", Kind::String, "json", "report format: json or csv (csv for scans only)"),
          optional("output", Kind::String, "", "write the report to this path instead of stdout"),
          optional("seed", Kind::Integer, 0, "seed recorded in the report (all commands are deterministic)"),
          optional("threads", Kind::Integer, 0, "worker threads, 0 for hardware concurrency"),
          optional("metadata", Kind::Boolean, true, "include the timestamp/runtime metadata object")};
}

long get_long(const Json& cfg, const std::string& key) { return cfg.at(key).get<long>(); }
double get_double(const Json& cfg, const std::string& key) { return cfg.at(key).get<double>(); }
std::string get_string(const Json& cfg, const std::string& key) { return cfg.at(key).get<std::string>(); }

long positive(const Json& cfg, const std::string& key) {
  long v = get_long(cfg, key);
  if (v < 1) fail(ErrorCode::InvalidArgument, key + " must be at least 1");
  return v;
}

long nonnegative(const Json& cfg, const std::string& key) {
  long v = get_long(cfg, key);
  if (v < 0) fail(ErrorCode::InvalidArgument, key + " must be nonnegative");
  return v;
}

ProjPoint point_of(const Json& cfg, const std::string& key) {
  const Json& v = cfg.at(key);
  if (v.is_string()) return ProjPoint::parse(v.get<std::string>());
  return ProjPoint::from_rational(rational_from_json(cfg, key));
}

unsigned threads_of(const Json& cfg) { return static_cast<unsigned>(nonnegative(cfg, "threads")); }

bool wants_csv(const Json& cfg) { return get_string(cfg, "format") == "csv"; }

void require_json(const Json& cfg, const std::string& command) {
  if (wants_csv(cfg)) fail(ErrorCode::InvalidArgument, "csv output is only available for scan and quasi-scan, not " + command);
}

std::string csv_with_header(const std::string& command, const Json& cfg, const std::string& body) {
  return "# command: " + command + "\n# version: " + ARITHDYN_VERSION + "\n# config: " + cfg.dump() + "\n" + body;
}

Key map_key() { return required("map", Kind::Map, "rational map {\"num\": [\"a0\", ...], \"den\": [\"b0\", ...]}"); }
Key bit_cap_key() {
  return optional("bit_cap", Kind::Integer, static_cast<long>(kDefaultBitCap), "maximum bits per orbit coordinate");
}

Result run_scan(const Json& cfg) {
  const RationalMap phi = map_from_json(cfg.at("map"));
  const ProjPoint alpha = point_of(cfg, "alpha"), beta = point_of(cfg, "beta");
  const PlaceSet s = PlaceSet::parse(get_string(cfg, "places"));
  if (alpha == beta && !cfg.at("critical").get<bool>()) {
    fail(ErrorCode::InvalidArgument, "alpha = beta needs critical mode (--critical), which scans from n = 1");
  }
  ScanOptions opt{static_cast<unsigned long>(nonnegative(cfg, "n_max")), static_cast<size_t>(positive(cfg, "bit_cap")),
                  threads_of(cfg)};
  OrbitScanReport rep = scan_orbit(phi, alpha, beta, s, opt);
  Result out;
  out.exit_code = rep.truncated ? kExitCap : kExitOk;
  if (wants_csv(cfg)) out.csv = csv_with_header("scan", cfg, to_csv(rep));
  out.body = to_json(rep);
  out.body["map"] = map_to_json(phi);
  out.body["places"] = s.to_string();
  return out;
}

Result run_quasi(const Json& cfg) {
  const RationalMap phi = map_from_json(cfg.at("map"));
  const ProjPoint alpha = point_of(cfg, "alpha"), beta = point_of(cfg, "beta");
  const PlaceSet s = PlaceSet::parse(get_string(cfg, "places"));
  const Rational eps = rational_from_json(cfg, "eps");
  ScanOptions opt{static_cast<unsigned long>(nonnegative(cfg, "n_max")), static_cast<size_t>(positive(cfg, "bit_cap")),
                  threads_of(cfg)};
  QuasiScanReport rep = scan_quasi(phi, alpha, beta, s, eps, opt);
  Result out;
  out.exit_code = rep.truncated ? kExitCap : kExitOk;
  if (wants_csv(cfg)) out.csv = csv_with_header("quasi-scan", cfg, to_csv(rep));
  out.body = to_json(rep);
  out.body["map"] = map_to_json(phi);
  out.body["places"] = s.to_string();
  return out;
}

double need_number(const Json& cfg, const std::string& key, const std::string& theorem) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) {
    fail(ErrorCode::InvalidArgument, "theorem " + theorem + " requires --" + key);
  }
  return get_double(cfg, key);
}

int need_degree(const Json& cfg, const std::string& theorem) {
  double d = need_number(cfg, "d", theorem);
  if (d != static_cast<int>(d)) fail(ErrorCode::InvalidArgument, "d must be an integer");
  return static_cast<int>(d);
}

Result run_bound(const Json& cfg) {
  require_json(cfg, "bound");
  const std::string t = get_string(cfg, "theorem");
  BoundReport b;
  Result out;
  auto in = [&](const std::string& key) {
    double v = need_number(cfg, key, t);
    b.inputs.emplace_back(key, v);
    return v;
  };
  if (t == "1") {
    b.name = "theorem1";
    const double s = in("s"), c1 = in("c1");
    b.value = bound_theorem1(s, c1);
    b.notes = "c1 |S| (log|S| + 1)^6; c1 is ineffective and supplied by the caller";
  } else if (t == "2") {
    b.name = "theorem2";
    const double s = in("s"), c2 = in("c2"), c3 = in("c3");
    b.value = bound_power_lattes(s, c2, c3);
    b.notes = "c2 |S| + c3 (log|S| + 1); c2 = 3 for power maps, 5 for Lattes maps; c3 supplied by the caller";
  } else if (t == "3") {
    b.name = "theorem3";
    const double s = in("s");
    const int d = need_degree(cfg, t);
    b.inputs.emplace_back("d", d);
    const double h = in("h_phi"), hh = in("hhat_alpha"), c4 = in("c4");
    b.value = bound_theorem3(s, d, h, hh, c4);
    b.notes = "c4 |S| (log|S| + 1)^6 + log+_d((h(phi) + 1) / hhat(alpha)); c4 supplied by the caller";
  } else if (t == "5") {
    b.name = "theorem5";
    const double s = in("s");
    const int d = need_degree(cfg, t);
    b.inputs.emplace_back("d", d);
    const double h = in("h_phi"), hh = in("hhat_alpha"), c7 = in("c7");
    b.value = bound_critical(s, d, h, hh, c7);
    b.notes = "|S| + c7 log(|S| + 1) + log+_d((h(phi) + 1) / hhat(alpha)); c7 supplied by the caller";
  } else if (t == "z2") {
    b.name = "z2_explicit";
    b.value = bound_z2_explicit(in("s"));
    b.notes = "3|S| + 12 log2|S| + 50 for phi = z^2, alpha = 2";
  } else if (t == "roth") {
    b.name = "roth_constants";
    const double r = in("r");
    if (r != static_cast<long>(r)) fail(ErrorCode::InvalidArgument, "r must be an integer");
    RothConstants rc = roth_constants(static_cast<long>(r));
    b.value = rc.c1;
    b.notes = "value is c1 = (2304 log r)^3; log_c2 = log 28 + log Gamma(4608 log r + 2)";
    out.body["log_c2"] = rc.log_c2;
  } else if (t == "preimage") {
    b.name = "preimage_level";
    const double s = in("s");
    const int d = need_degree(cfg, t);
    b.inputs.emplace_back("d", d);
    if (s != static_cast<long>(s)) fail(ErrorCode::InvalidArgument, "s must be an integer");
    b.value = static_cast<double>(preimage_level_N(d, static_cast<long>(s)));
    b.notes = "the N with d^(N-1) <= 56 * 2^(2d-2) |S| < d^N";
  } else {
    fail(ErrorCode::InvalidArgument, "unknown theorem tag '" + t + "' (expected 1, 2, 3, 5, z2, roth or preimage)");
  }
  Json report = to_json(b);
  for (auto& [k, v] : out.body.items()) report[k] = v;
  out.body = report;
  return out;
}

Result run_canheight(const Json& cfg) {
  require_json(cfg, "canheight");
  const RationalMap phi = map_from_json(cfg.at("map"));
  const ProjPoint x = point_of(cfg, "point");
  CanonicalHeightOptions opt;
  opt.tolerance = get_double(cfg, "tol");
  opt.max_iterations = static_cast<unsigned>(positive(cfg, "max_iterations"));
  opt.bit_cap = static_cast<size_t>(positive(cfg, "bit_cap"));
  opt.exact_only = cfg.at("exact_only").get<bool>();
  Result out;
  out.body = {{"interval", to_json(canonical_height(phi, x, opt))},
              {"weil_height", to_json(weil_height(x))},
              {"drop_constants", to_json(height_drop_constants(phi))},
              {"map", map_to_json(phi)},
              {"point", to_json(x)}};
  return out;
}

Result run_height(const Json& cfg) {
  require_json(cfg, "height");
  Result out;
  out.body = Json::object();
  if (!cfg.at("point").is_null()) {
    const ProjPoint x = point_of(cfg, "point");
    out.body["point"] = to_json(x);
    out.body["weil_height"] = to_json(weil_height(x));
  }
  if (!cfg.at("map").is_null()) {
    const RationalMap phi = map_from_json(cfg.at("map"));
    out.body["map"] = map_to_json(phi);
    out.body["map_height"] = to_json(map_height(phi));
    out.body["drop_constants"] = to_json(height_drop_constants(phi));
  }
  if (out.body.empty()) fail(ErrorCode::InvalidArgument, "height needs --point and/or --map");
  return out;
}

Result run_lte(const Json& cfg) {
  require_json(cfg, "lte");
  const Integer a = integer_from_json(cfg, "a"), b = integer_from_json(cfg, "b");
  const Integer n = integer_from_json(cfg, "n"), p = integer_from_json(cfg, "p");
  Result out;
  out.body = {{"valuation", lte_valuation(a, b, n, p)}};
  return out;
}

Result run_orbit_valuation(const Json& cfg) {
  require_json(cfg, "orbit-valuation");
  const RationalMap phi = map_from_json(cfg.at("map"));
  const ProjPoint alpha = point_of(cfg, "alpha");
  const Rational beta = rational_from_json(cfg, "beta");
  const Integer p = integer_from_json(cfg, "p");
  PrecisionSchedule sched{static_cast<unsigned long>(positive(cfg, "initial_digits")),
                          static_cast<unsigned long>(positive(cfg, "max_digits"))};
  OrbitValuation v = orbit_valuation(phi, alpha, beta, p, static_cast<unsigned long>(nonnegative(cfg, "n")), sched);
  Result out;
  out.body = {{"valuation", v.value}, {"digits", v.digits}, {"map", map_to_json(phi)}};
  return out;
}

Result run_fermat(const Json& cfg) {
  require_json(cfg, "fermat-sweep");
  SweepRange range{get_long(cfg, "x_min"), get_long(cfg, "x_max"), get_long(cfg, "y_min"), get_long(cfg, "y_max")};
  const unsigned n_max = static_cast<unsigned>(nonnegative(cfg, "n_max"));
  SweepResult r = sweep(range, n_max, threads_of(cfg));
  Result out;
  out.body = to_json(r);
  Json sols = Json::array();
  for (const auto& t : count_solutions(r.argmax.first, r.argmax.second, n_max)) sols.push_back(to_json(t));
  out.body["solutions_at_argmax"] = sols;
  return out;
}

Result run_adversarial(const Json& cfg) {
  require_json(cfg, "adversarial");
  const unsigned m = static_cast<unsigned>(positive(cfg, "m"));
  AdversarialInstance inst = adversarial_family(m);
  unsigned long n_max = m;
  if (!cfg.at("n_max").is_null()) n_max = static_cast<unsigned long>(nonnegative(cfg, "n_max"));
  ScanOptions opt{n_max, static_cast<size_t>(positive(cfg, "bit_cap")), threads_of(cfg)};
  OrbitScanReport rep = scan_orbit(inst.phi, inst.alpha, inst.beta, inst.s, opt);
  unsigned long in_range = 0;
  for (auto n : rep.integral_indices) in_range += (n >= 1 && n <= m) ? 1 : 0;
  Json base = Json::array();
  for (const auto& a : inst.base_orbit) base.push_back(a.get_str());
  Result out;
  out.exit_code = rep.truncated ? kExitCap : kExitOk;
  out.body = {{"map", map_to_json(inst.phi)},
              {"a_m", inst.a_m.get_str()},
              {"alpha", to_json(inst.alpha)},
              {"beta", to_json(inst.beta)},
              {"places", inst.s.to_string()},
              {"base_orbit", base},
              {"scan", to_json(rep)},
              {"integral_in_1_to_m", in_range}};
  return out;
}

Result run_lipschitz(const Json& cfg) {
  require_json(cfg, "lipschitz");
  const RationalMap phi = map_from_json(cfg.at("map"));
  const Place v = Place::parse(get_string(cfg, "place"));
  LipschitzConstant c = lipschitz_constant(phi, v);
  Result out;
  out.body = {{"place", v.to_string()},
              {"value", c.value},
              {"exact", c.exact ? Json(to_string(*c.exact)) : Json(nullptr)},
              {"estimate", !c.exact.has_value()},
              {"map", map_to_json(phi)}};
  if (!c.exact) out.body["safety_factor"] = kLipschitzSafetyFactor;
  return out;
}

Result run_params_z2(const Json& cfg) {
  require_json(cfg, "params-z2");
  const long s = positive(cfg, "s");
  Result out;
  out.body = to_json(explicit_z2_params(s));
  out.body["bound"] = bound_z2_explicit(static_cast<double>(s));
  return out;
}

const std::vector<Command>& registry() {
  static const std::vector<Command> commands = [] {
    const Key alpha = required("alpha", Kind::Point, "starting point alpha (\"p/q\" or \"inf\")");
    const Key beta = required("beta", Kind::Point, "target point beta (\"p/q\" or \"inf\")");
    const Key places = optional("places", Kind::String, "inf", "place set S, e.g. \"inf,3,5\"");
    const Key n_max = optional("n_max", Kind::Integer, 10, "largest orbit index");
    std::vector<Command> c;
    c.push_back({"scan", "S-integrality verdicts along the forward orbit of alpha relative to beta",
                 {map_key(), alpha, beta, places, n_max, bit_cap_key(),
                  optional("critical", Kind::Boolean, false, "allow alpha = beta (scan from n = 1)")},
                 run_scan});
    c.push_back({"quasi-scan", "indices n with (phi^n(alpha) - beta)^-1 quasi-(S, eps)-integral",
                 {map_key(), alpha, beta, places, required("eps", Kind::Rational, "epsilon in [0, 1]"), n_max,
                  bit_cap_key()},
                 run_quasi});
    c.push_back({"bound", "evaluate an explicit bound formula",
                 {required("theorem", Kind::String, "1, 2, 3, 5, z2, roth or preimage"),
                  optional("s", Kind::Number, nullptr, "|S|"), optional("d", Kind::Integer, nullptr, "degree d"),
                  optional("c1", Kind::Number, nullptr, "constant c1"), optional("c2", Kind::Number, nullptr, "constant c2"),
                  optional("c3", Kind::Number, nullptr, "constant c3"), optional("c4", Kind::Number, nullptr, "constant c4"),
                  optional("c7", Kind::Number, nullptr, "constant c7"),
                  optional("h_phi", Kind::Number, nullptr, "height of the map"),
                  optional("hhat_alpha", Kind::Number, nullptr, "canonical height of alpha"),
                  optional("r", Kind::Integer, nullptr, "field degree r for roth")},
                 run_bound});
    c.push_back({"canheight", "certified canonical height interval",
                 {map_key(), required("point", Kind::Point, "the point x"),
                  optional("tol", Kind::Number, 1e-9, "half-width target"),
                  optional("max_iterations", Kind::Integer, 64, "iteration cap"), bit_cap_key(),
                  optional("exact_only", Kind::Boolean, false, "iterate exactly only (no interval continuation)")},
                 run_canheight});
    c.push_back({"height", "Weil height of a point and/or height data of a map",
                 {optional("point", Kind::Point, nullptr, "the point x"),
                  optional("map", Kind::Map, nullptr, "rational map")},
                 run_height});
    c.push_back({"lte", "v_p(a^n - b^n) by lifting the exponent",
                 {required("a", Kind::BigInt, "a"), required("b", Kind::BigInt, "b"), required("n", Kind::BigInt, "n >= 1"),
                  required("p", Kind::BigInt, "odd prime p")},
                 run_lte});
    c.push_back({"orbit-valuation", "v_p(phi^n(alpha) - beta) by capped-precision iteration",
                 {map_key(), alpha, required("beta", Kind::Rational, "finite beta"),
                  required("p", Kind::BigInt, "prime p"), required("n", Kind::Integer, "orbit index n"),
                  optional("initial_digits", Kind::Integer, 64, "initial p-adic digits"),
                  optional("max_digits", Kind::Integer, 65536, "maximum p-adic digits")},
                 run_orbit_valuation});
    c.push_back({"fermat-sweep", "count solutions of y 2^(2^n) - x = 3^i 5^j over a grid",
                 {optional("x_min", Kind::Integer, -50, "smallest x"), optional("x_max", Kind::Integer, 50, "largest x"),
                  optional("y_min", Kind::Integer, -50, "smallest y"), optional("y_max", Kind::Integer, 50, "largest y"),
                  optional("n_max", Kind::Integer, 12, "largest n (at most 24)")},
                 run_fermat});
    c.push_back({"adversarial", "conjugated z^2 + 1 instance with m early integral points",
                 {required("m", Kind::Integer, "family index 1..10"),
                  optional("n_max", Kind::Integer, nullptr, "largest orbit index (default m)"), bit_cap_key()},
                 run_adversarial});
    c.push_back({"lipschitz", "chordal Lipschitz constant of a map at a place",
                 {map_key(), optional("place", Kind::String, "inf", "\"inf\" or a prime")},
                 run_lipschitz});
    c.push_back({"params-z2", "explicit parameters for phi = z^2", {required("s", Kind::Integer, "|S|")},
                 run_params_z2});
    for (auto& cmd : c) {
      for (auto& k : common_keys()) cmd.keys.push_back(k);
    }
    return c;
  }();
  return commands;
}

const Command& find_command(std::string_view name) {
  for (const auto& c : registry()) {
    if (c.name == name) return c;
  }
  fail(ErrorCode::InvalidArgument, "unknown command '" + std::string(name) + "'");
}

void check_kind(const Key& key, const Json& v) {
  bool ok = false;
  switch (key.kind) {
    case Kind::String: ok = v.is_string(); break;
    case Kind::Integer: ok = v.is_number_integer(); break;
    case Kind::Number: ok = v.is_number(); break;
    case Kind::Boolean: ok = v.is_boolean(); break;
    case Kind::Map: ok = v.is_object(); break;
    case Kind::BigInt:
    case Kind::Rational:
    case Kind::Point: ok = v.is_string() || v.is_number_integer(); break;
  }
  if (!ok) fail(ErrorCode::InvalidArgument, "config key \"" + key.name + "\" must be of kind " + kind_name(key.kind));
}

Json resolve(const Command& cmd, const Json& given) {
  if (!given.is_object()) fail(ErrorCode::InvalidArgument, "config must be a JSON object");
  for (const auto& [name, value] : given.items()) {
    bool known = false;
    for (const auto& k : cmd.keys) known = known || k.name == name;
    if (!known) fail(ErrorCode::InvalidArgument, "unknown config key \"" + name + "\" for " + cmd.name);
  }
  Json cfg = Json::object();
  for (const auto& k : cmd.keys) {
    if (given.contains(k.name) && !given.at(k.name).is_null()) {
      check_kind(k, given.at(k.name));
      cfg[k.name] = given.at(k.name);
    } else if (k.required) {
      fail(ErrorCode::InvalidArgument, "missing required key \"" + k.name + "\" for " + cmd.name);
    } else {
      cfg[k.name] = k.fallback;
    }
  }
  const std::string format = get_string(cfg, "format");
  if (format != "json" && format != "csv") fail(ErrorCode::InvalidArgument, "format must be json or csv");
  return cfg;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BitCapExceeded:
    case ErrorCode::IterationCap:
    case ErrorCode::PrecisionExhausted: return kExitCap;
    default: return kExitInvalid;
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& c : registry()) out.push_back(c.name);
  return out;
}

std::string command_schema(std::string_view command) {
  const Command& cmd = find_command(command);
  Json keys = Json::array();
  for (const auto& k : cmd.keys) {
    keys.push_back({{"name", k.name}, {"kind", kind_name(k.kind)}, {"required", k.required}, {"default", k.fallback},
                    {"help", k.help}});
  }
  return Json{{"command", cmd.name}, {"summary", cmd.summary}, {"keys", keys}}.dump();
}

CommandOutcome run_command(std::string_view command, const std::string& config_json) {
  const auto start = std::chrono::steady_clock::now();
  Json report = {{"command", std::string(command)}, {"version", ARITHDYN_VERSION}};
  Json cfg;
  bool with_metadata = true;
  CommandOutcome out;
  try {
    Json given = config_json.empty() ? Json::object() : Json::parse(config_json);
    report["config"] = given;
    const Command& cmd = find_command(command);
    cfg = resolve(cmd, given);
    report["config"] = cfg;
    with_metadata = cfg.at("metadata").get<bool>();
    Result r = cmd.run(cfg);
    out.exit_code = r.exit_code;
    if (!r.csv.empty()) {
      out.text = r.csv;
      return out;
    }
    report["result"] = std::move(r.body);
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.code());
    report["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    if (e.index() >= 0) report["error"]["index"] = e.index();
  } catch (const Json::exception& e) {
    out.exit_code = kExitInvalid;
    report["error"] = {{"code", "invalid_argument"}, {"message", std::string("malformed JSON: ") + e.what()}};
  } catch (const std::exception& e) {
    out.exit_code = kExitInvalid;
    report["error"] = {{"code", "internal"}, {"message", e.what()}};
  }
  if (with_metadata) {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["metadata"] = {{"timestamp", utc_timestamp()}, {"runtime_seconds", seconds}};
  }
  out.text = report.dump(2) + "\n";
  return out;
}

}  // namespace arithdyn
