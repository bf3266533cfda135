#include "nsbandit/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "nsbandit/errors.hpp"
#include "nsbandit/version.hpp"

namespace nsb {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

/// Field access with the dotted path of the object for error messages.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      fail(path_, "expected an object");
    }
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : obj_.items()) {
      if (!allowed.contains(key)) {
        fail(field(key), "unknown key");
      }
    }
  }

  bool has(const char* key) const { return obj_.contains(key); }
  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  const json& at(const char* key) const {
    if (!obj_.contains(key)) {
      fail(field(key), "missing required key");
    }
    return obj_.at(key);
  }

  double number(const char* key) const {
    const json& v = at(key);
    if (!v.is_number()) {
      fail(field(key), "expected a number");
    }
    return v.get<double>();
  }
  double number_or(const char* key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::uint64_t integer(const char* key) const { return as_uint(at(key), field(key)); }
  std::uint64_t integer_or(const char* key, std::uint64_t fallback) const {
    return has(key) ? integer(key) : fallback;
  }
  std::optional<std::uint64_t> optional_integer(const char* key) const {
    if (!has(key) || at(key).is_null()) {
      return std::nullopt;
    }
    return integer(key);
  }

  std::string string(const char* key) const {
    const json& v = at(key);
    if (!v.is_string()) {
      fail(field(key), "expected a string");
    }
    return v.get<std::string>();
  }

  static std::uint64_t as_uint(const json& v, const std::string& where) {
    if (v.is_number_unsigned()) {
      return v.get<std::uint64_t>();
    }
    if (v.is_number_integer()) {
      const auto i = v.get<std::int64_t>();
      if (i < 0) {
        fail(where, "expected a non-negative integer");
      }
      return static_cast<std::uint64_t>(i);
    }
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d >= 0.0 && d < 1.8e19 && std::floor(d) == d) {
        return static_cast<std::uint64_t>(d);
      }
    }
    fail(where, "expected a non-negative integer");
  }

 private:
  const json& obj_;
  std::string path_;
};

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) {
    fail(where, "expected an array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      fail(where + "[" + std::to_string(i) + "]", "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

RewardLaw parse_law(const Fields& f) {
  if (!f.has("reward")) {
    return RewardLaw::Bernoulli;
  }
  const std::string law = f.string("reward");
  if (law == "bernoulli") {
    return RewardLaw::Bernoulli;
  }
  if (law == "deterministic") {
    return RewardLaw::Deterministic;
  }
  fail(f.field("reward"), "unknown reward law '" + law + "' (bernoulli|deterministic)");
}

std::optional<ArmId> optional_arm(const Fields& f) {
  if (auto v = f.optional_integer("optimal_arm")) {
    return static_cast<ArmId>(*v);
  }
  return std::nullopt;
}

EnvironmentSpec parse_environment(const json& doc, const std::string& base_dir, RewardLaw& law) {
  const Fields f(doc, "environment");
  const std::string type = f.string("type");
  law = parse_law(f);

  if (type == "stationary") {
    f.allow_only({"type", "reward", "means"});
    return Stationary{number_list(f.at("means"), f.field("means"))};
  }
  if (type == "periodic_table") {
    f.allow_only({"type", "reward", "table"});
    const json& rows = f.at("table");
    if (!rows.is_array()) {
      fail(f.field("table"), "expected an array of rows");
    }
    PeriodicTable p;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      p.table.push_back(number_list(rows[k], f.field("table") + "[" + std::to_string(k) + "]"));
    }
    return p;
  }
  if (type == "sinusoidal") {
    f.allow_only({"type", "reward", "K", "gap", "optimal_arm"});
    Sinusoidal s;
    s.arms = f.integer("K");
    s.gap = f.number_or("gap", s.gap);
    s.optimal_arm = optional_arm(f);
    return s;
  }
  if (type == "drift_cap") {
    f.allow_only({"type", "reward", "K", "gap", "base", "cap", "rate", "optimal_arm"});
    DriftCap d;
    d.arms = f.integer("K");
    d.gap = f.number_or("gap", d.gap);
    d.base = f.number_or("base", d.base);
    d.cap = f.number_or("cap", d.cap);
    d.rate = f.number_or("rate", d.rate);
    d.optimal_arm = optional_arm(f);
    return d;
  }
  if (type == "switching_drift") {
    f.allow_only({"type", "reward", "K", "gap", "switch_prob", "rate", "period", "base", "cap",
                  "switch_seed"});
    SwitchingDrift d;
    d.arms = f.integer("K");
    d.gap = f.number_or("gap", d.gap);
    d.switch_prob = f.number_or("switch_prob", d.switch_prob);
    d.rate = f.number_or("rate", d.rate);
    d.period = f.integer_or("period", d.period);
    d.base = f.number_or("base", d.base);
    d.cap = f.number_or("cap", d.cap);
    d.switch_seed = f.optional_integer("switch_seed");
    return d;
  }
  if (type == "file") {
    f.allow_only({"type", "reward", "path"});
    std::filesystem::path path(f.string("path"));
    if (path.is_relative() && !base_dir.empty()) {
      path = std::filesystem::path(base_dir) / path;
    }
    // Absolute, so a manifest written elsewhere still points at the same file.
    return FileBacked{std::filesystem::absolute(path).lexically_normal().string()};
  }
  fail(f.field("type"), "unknown environment '" + type +
                            "' (stationary|periodic_table|sinusoidal|drift_cap|switching_drift|file)");
}

template <class P>
void parse_elimination(const Fields& f, P& p) {
  p.delta = f.number_or("delta", p.delta);
  p.epsilon = f.number_or("epsilon", p.epsilon);
  p.tau_min = f.optional_integer("tau_min");
}

AgentEntry parse_agent(const json& doc, const std::string& path) {
  const Fields f(doc, path);
  const std::string type = f.string("type");
  AgentEntry entry;
  if (type == "SER3") {
    f.allow_only({"type", "name", "delta", "epsilon", "tau_min"});
    Ser3Params p;
    parse_elimination(f, p);
    entry.config = p;
  } else if (type == "SER4") {
    f.allow_only({"type", "name", "delta", "epsilon", "tau_min", "phi"});
    Ser4Params p;
    parse_elimination(f, p);
    p.phi = f.number_or("phi", p.phi);
    entry.config = p;
  } else if (type == "SE") {
    f.allow_only({"type", "name", "delta", "epsilon", "tau_min"});
    SeParams p;
    parse_elimination(f, p);
    entry.config = p;
  } else if (type == "UCB1") {
    f.allow_only({"type", "name"});
    entry.config = Ucb1Params{};
  } else if (type == "EXP3") {
    f.allow_only({"type", "name", "gamma"});
    Exp3Params p;
    p.gamma = f.number_or("gamma", p.gamma);
    entry.config = p;
  } else if (type == "EXP3S") {
    f.allow_only({"type", "name", "gamma", "alpha"});
    Exp3sParams p;
    p.gamma = f.number_or("gamma", p.gamma);
    p.alpha = f.number_or("alpha", p.alpha);
    entry.config = p;
  } else if (type == "SWUCB") {
    f.allow_only({"type", "name", "window", "xi"});
    SwUcbParams p;
    p.window = f.integer_or("window", p.window);
    p.xi = f.number_or("xi", p.xi);
    entry.config = p;
  } else {
    fail(f.field("type"), "unknown agent '" + type + "' (SER3|SER4|SE|UCB1|EXP3|EXP3S|SWUCB)");
  }
  entry.name = f.has("name") ? f.string("name") : type;
  try {
    validate_agent_config(entry.config);
  } catch (const InvalidParameter& e) {
    fail(path, e.what());
  }
  return entry;
}

}  // namespace

std::vector<Step> log_spaced_checkpoints(Step horizon, std::size_t count) {
  std::vector<Step> out;
  if (horizon == 0 || count == 0) {
    return out;
  }
  if (count == 1) {
    return {horizon};
  }
  const double log_t = std::log(static_cast<double>(horizon));
  for (std::size_t i = 0; i < count; ++i) {
    const double x = std::exp(log_t * static_cast<double>(i) / static_cast<double>(count - 1));
    auto t = static_cast<Step>(std::llround(x));
    t = std::clamp<Step>(t, 1, horizon);
    if (out.empty() || t > out.back()) {
      out.push_back(t);
    }
  }
  if (out.back() != horizon) {
    out.push_back(horizon);
  }
  return out;
}

void validate_config(const ExperimentConfig& c) {
  if (c.runs < 1) {
    fail("runs", "must be >= 1");
  }
  for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
    if (c.checkpoints[i] < 1) {
      fail("checkpoints", "steps must be >= 1");
    }
    if (i > 0 && c.checkpoints[i] <= c.checkpoints[i - 1]) {
      fail("checkpoints", "must be strictly increasing");
    }
  }
  if (!c.checkpoints.empty() && c.checkpoints.back() > c.horizon) {
    fail("checkpoints", "last checkpoint exceeds the horizon");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < c.agents.size(); ++i) {
    const auto& name = c.agents[i].name;
    if (name.empty() || name.find_first_of(",\"\n\r") != std::string::npos) {
      fail("agents[" + std::to_string(i) + "].name", "must be non-empty without ',', '\"' or newlines");
    }
    if (!names.insert(name).second) {
      fail("agents[" + std::to_string(i) + "].name", "duplicate agent name '" + name + "'");
    }
  }
  try {
    // Build once to surface parameter and range errors as config errors.
    (void)build_environment(c.environment, c.law, std::max<Step>(c.horizon, 1), c.seed);
  } catch (const InvalidParameter& e) {
    fail("environment", e.what());
  }
}

ExperimentConfig parse_config(const json& doc, const std::string& base_dir) {
  const Fields f(doc, "");
  f.allow_only({"environment", "agents", "horizon", "runs", "seed", "checkpoints",
                "artifact_version"});
  ExperimentConfig c;
  c.environment = parse_environment(f.at("environment"), base_dir, c.law);

  const json& agents = f.at("agents");
  if (!agents.is_array()) {
    fail("agents", "expected an array");
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    c.agents.push_back(parse_agent(agents[i], "agents[" + std::to_string(i) + "]"));
  }

  c.horizon = f.integer("horizon");
  c.runs = f.integer_or("runs", 1);
  c.seed = f.integer_or("seed", 0);
  if (f.has("artifact_version") && !f.at("artifact_version").is_string()) {
    fail("artifact_version", "expected a string");
  }

  if (!f.has("checkpoints")) {
    c.checkpoints = log_spaced_checkpoints(c.horizon, kDefaultCheckpointCount);
  } else {
    const json& cp = f.at("checkpoints");
    if (cp.is_array()) {
      for (std::size_t i = 0; i < cp.size(); ++i) {
        c.checkpoints.push_back(Fields::as_uint(cp[i], "checkpoints[" + std::to_string(i) + "]"));
      }
    } else if (cp.is_object()) {
      const Fields cf(cp, "checkpoints");
      cf.allow_only({"log_spaced"});
      c.checkpoints = log_spaced_checkpoints(c.horizon, cf.integer("log_spaced"));
    } else {
      fail("checkpoints", "expected a list of steps or {\"log_spaced\": n}");
    }
  }
  validate_config(c);
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config '" + path + "'");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  const auto base = std::filesystem::path(path).parent_path().string();
  return parse_config(doc, base);
}

json environment_to_json(const EnvironmentSpec& spec, RewardLaw law) {
  json j = std::visit(
      Overloaded{
          [](const Stationary& s) { return json{{"type", "stationary"}, {"means", s.means}}; },
          [](const PeriodicTable& p) { return json{{"type", "periodic_table"}, {"table", p.table}}; },
          [](const Sinusoidal& s) {
            json o{{"type", "sinusoidal"}, {"K", s.arms}, {"gap", s.gap}};
            if (s.optimal_arm) {
              o["optimal_arm"] = *s.optimal_arm;
            }
            return o;
          },
          [](const DriftCap& d) {
            json o{{"type", "drift_cap"}, {"K", d.arms}, {"gap", d.gap}, {"base", d.base},
                   {"cap", d.cap}, {"rate", d.rate}};
            if (d.optimal_arm) {
              o["optimal_arm"] = *d.optimal_arm;
            }
            return o;
          },
          [](const SwitchingDrift& d) {
            json o{{"type", "switching_drift"}, {"K", d.arms}, {"gap", d.gap},
                   {"switch_prob", d.switch_prob}, {"rate", d.rate}, {"period", d.period},
                   {"base", d.base}, {"cap", d.cap}};
            if (d.switch_seed) {
              o["switch_seed"] = *d.switch_seed;
            }
            return o;
          },
          [](const FileBacked& f) { return json{{"type", "file"}, {"path", f.path}}; },
      },
      spec);
  j["reward"] = law == RewardLaw::Bernoulli ? "bernoulli" : "deterministic";
  return j;
}

json agent_to_json(const AgentEntry& agent) {
  json j = std::visit(
      Overloaded{
          [](const Ser3Params& p) {
            json o{{"type", "SER3"}, {"delta", p.delta}, {"epsilon", p.epsilon}};
            if (p.tau_min) o["tau_min"] = *p.tau_min;
            return o;
          },
          [](const Ser4Params& p) {
            json o{{"type", "SER4"}, {"delta", p.delta}, {"epsilon", p.epsilon}, {"phi", p.phi}};
            if (p.tau_min) o["tau_min"] = *p.tau_min;
            return o;
          },
          [](const SeParams& p) {
            json o{{"type", "SE"}, {"delta", p.delta}, {"epsilon", p.epsilon}};
            if (p.tau_min) o["tau_min"] = *p.tau_min;
            return o;
          },
          [](const Ucb1Params&) { return json{{"type", "UCB1"}}; },
          [](const Exp3Params& p) { return json{{"type", "EXP3"}, {"gamma", p.gamma}}; },
          [](const Exp3sParams& p) {
            return json{{"type", "EXP3S"}, {"gamma", p.gamma}, {"alpha", p.alpha}};
          },
          [](const SwUcbParams& p) {
            return json{{"type", "SWUCB"}, {"window", p.window}, {"xi", p.xi}};
          },
      },
      agent.config);
  j["name"] = agent.name;
  return j;
}

json to_json(const ExperimentConfig& c) {
  json agents = json::array();
  for (const auto& a : c.agents) {
    agents.push_back(agent_to_json(a));
  }
  return json{{"artifact_version", kVersion},
              {"environment", environment_to_json(c.environment, c.law)},
              {"agents", agents},
              {"horizon", c.horizon},
              {"runs", c.runs},
              {"seed", c.seed},
              {"checkpoints", c.checkpoints}};
}

}  // namespace nsb
