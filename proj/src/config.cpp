#include "chemodde/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "chemodde/errors.hpp"

namespace chemodde {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Accepts plain decimals and simple fractions such as "1/8".
double to_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  auto parse = [&](const std::string& s) {
    double out = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw ParameterError(key, "expected a number, got '" + raw + "'");
    return out;
  };
  const auto slash = v.find('/');
  if (slash == std::string::npos) return parse(v);
  const double num = parse(trim(v.substr(0, slash)));
  const double den = parse(trim(v.substr(slash + 1)));
  if (den == 0.0) throw ParameterError(key, "zero denominator");
  return num / den;
}

long to_long(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ParameterError(key, "expected an integer, got '" + raw + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParameterError(key, "expected true/false, got '" + raw + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_double(key, item));
  if (out.empty()) throw ParameterError(key, "expected a comma-separated list");
  return out;
}

class Keys {
 public:
  explicit Keys(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  std::optional<std::string> get(const std::string& key) {
    used_.insert(key);
    const auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    return it->second;
  }
  std::string require(const std::string& key) {
    auto v = get(key);
    if (!v) throw ParameterError(key, "missing required key");
    return *v;
  }
  void reject_unknown() const {
    for (const auto& [k, v] : kv_)
      if (!used_.contains(k)) throw UsageError("unknown configuration key '" + k + "'");
  }

 private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> used_;
};

UptakeFunction read_uptake(Keys& keys) {
  const std::string kind = trim(keys.get("uptake.kind").value_or("monod"));
  if (kind == "monod") {
    const double p_max = to_double("uptake.p_max", keys.get("uptake.p_max").value_or("1"));
    const double k_s = to_double("uptake.k_s", keys.get("uptake.k_s").value_or("1"));
    return UptakeFunction::monod(p_max, k_s);
  }
  if (kind == "linear") return UptakeFunction::linear(to_double("uptake.slope", keys.require("uptake.slope")));
  if (kind == "tabulated")
    return UptakeFunction(Tabulated{to_list("uptake.grid", keys.require("uptake.grid")),
                                    to_list("uptake.values", keys.require("uptake.values"))});
  throw ParameterError("uptake.kind", "unknown uptake kind '" + kind + "'");
}

InputSignal read_input(Keys& keys, double E, long r) {
  const std::string kind = trim(keys.require("input.kind"));
  if (kind == "constant") return InputSignal(Constant{to_double("input.value", keys.require("input.value"))});
  if (kind == "sinusoid")
    return InputSignal(Sinusoid{to_double("input.amplitude", keys.require("input.amplitude")),
                                to_long("input.period", keys.require("input.period")),
                                to_double("input.offset", keys.require("input.offset"))});
  if (kind == "piecewise") {
    PiecewiseLinear pl;
    std::istringstream in(keys.require("input.breakpoints"));
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ParameterError("input.breakpoints", "expected t:value pairs");
      pl.breakpoints.push_back({to_long("input.breakpoints", item.substr(0, colon)),
                                to_double("input.breakpoints", item.substr(colon + 1))});
    }
    return InputSignal(std::move(pl));
  }
  if (kind == "sequence") {
    const bool periodic = to_bool("input.periodic", keys.get("input.periodic").value_or("false"));
    return InputSignal(ExplicitSequence{to_list("input.values", keys.require("input.values")), periodic});
  }
  if (kind == "dyadic") return InputSignal(DyadicBlocks{E, r});
  throw ParameterError("input.kind", "unknown input kind '" + kind + "'");
}

std::vector<double> read_history(Keys& keys, const std::string& key, long r) {
  auto values = to_list(key, keys.require(key));
  const auto n = static_cast<std::size_t>(r + 1);
  if (values.size() == 1) values.assign(n, values.front());
  if (values.size() != n)
    throw ParameterError(key, "expected 1 or r+1 = " + std::to_string(n) + " values, got " +
                                  std::to_string(values.size()));
  for (double v : values)
    if (!(v >= 0.0)) throw ParameterError(key, "entries must be nonnegative");
  return values;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second)
      throw UsageError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

RunConfig parse_config(const std::string& text) {
  Keys keys(parse_key_values(text));
  const auto schema = keys.get("schema");
  if (!schema) throw UsageError("configuration lacks the 'schema' version tag");
  if (to_long("schema", *schema) != kConfigSchema)
    throw UsageError("unsupported configuration schema " + *schema);

  const double E = to_double("model.E", keys.require("model.E"));
  if (!(E > 0.0 && E < 1.0)) throw ParameterError("model.E", "must lie in (0, 1), got " + trim(*keys.get("model.E")));
  const long r = to_long("model.r", keys.require("model.r"));
  if (r < 0) throw ParameterError("model.r", "must be a nonnegative integer");

  ChemostatParams params{E, r, read_uptake(keys), read_input(keys, E, r)};
  params.validate();
  InitialHistory init{read_history(keys, "init.s", r), read_history(keys, "init.x", r)};

  RunOptions run;
  if (auto v = keys.get("run.horizon")) run.horizon = to_long("run.horizon", *v);
  if (auto v = keys.get("run.tol")) run.tol = to_double("run.tol", *v);
  if (auto v = keys.get("run.T")) run.T = to_long("run.T", *v);
  if (auto v = keys.get("run.svg")) run.emit_svg = to_bool("run.svg", *v);
  if (auto v = keys.get("run.out")) run.out_dir = trim(*v);
  if (run.horizon < 0) throw ParameterError("run.horizon", "must be nonnegative");
  keys.reject_unknown();
  return {std::move(params), std::move(init), run};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read configuration file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace chemodde
