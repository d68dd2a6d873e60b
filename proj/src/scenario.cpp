#include "trustgame/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace trustgame {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_doubles(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': '" + token + "' is not a number");
    }
    if (used != token.size()) {
      throw ConfigError("key '" + key + "': '" + token + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("key '" + key + "': no value given");
  return out;
}

double parse_one(const std::string& key, const std::string& value) {
  const auto vals = parse_doubles(key, value);
  if (vals.size() != 1) throw ConfigError("key '" + key + "': expected one value");
  return vals[0];
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string join17(const std::vector<double>& vals) {
  std::string out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i > 0) out += ' ';
    out += fmt17(vals[i]);
  }
  return out;
}

}  // namespace

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::Static: return "static";
    case Mode::Dynamic: return "dynamic";
    case Mode::Abm: return "abm";
    case Mode::Maneuver: return "maneuver";
    case Mode::Sweep: return "sweep";
    case Mode::Reproduce: return "reproduce";
  }
  throw ConfigError("mode_name: bad mode");
}

Mode parse_mode(const std::string& name) {
  if (name == "static") return Mode::Static;
  if (name == "dynamic") return Mode::Dynamic;
  if (name == "abm") return Mode::Abm;
  if (name == "maneuver") return Mode::Maneuver;
  if (name == "sweep") return Mode::Sweep;
  if (name == "reproduce") return Mode::Reproduce;
  throw ConfigError("unknown mode '" + name +
                    "' (expected static|dynamic|abm|maneuver|sweep|reproduce)");
}

void Scenario::set(const std::string& key, const std::string& value) {
  if (key == "mode") {
    mode = parse_mode(trim(value));
  } else if (key == "n") {
    const double v = parse_one(key, value);
    if (v < 1 || v != std::floor(v)) throw ConfigError("key 'n': expected a positive integer");
    config.n = static_cast<std::size_t>(v);
  } else if (key == "p") {
    p_list = parse_doubles(key, value);
  } else if (key == "q") {
    q_list = parse_doubles(key, value);
  } else if (key == "r") {
    r_list = parse_doubles(key, value);
  } else if (key == "x0") {
    config.x0 = parse_doubles(key, value);
  } else if (key == "horizon") {
    config.horizon = parse_one(key, value);
  } else if (key == "step") {
    config.step = parse_one(key, value);
  } else if (key == "tol") {
    config.tol = parse_one(key, value);
  } else if (key == "damping") {
    config.damping = parse_one(key, value);
  } else if (key == "max_iter") {
    config.max_iter = static_cast<int>(parse_one(key, value));
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_one(key, value));
  } else if (key == "target_beta") {
    target_beta = parse_doubles(key, value);
  } else if (key == "alpha") {
    alpha_list = parse_doubles(key, value);
  } else if (key == "abm_users") {
    abm.users = static_cast<int>(parse_one(key, value));
  } else if (key == "abm_dt") {
    abm.dt = parse_one(key, value);
  } else if (key == "abm_runs") {
    abm.runs = static_cast<int>(parse_one(key, value));
  } else if (key == "sweep_param") {
    sweep.param = trim(value);
  } else if (key == "sweep_grid") {
    sweep.grid = parse_doubles(key, value);
  } else if (key == "figure") {
    figure = trim(value);
  } else if (key == "output_dir") {
    output_dir = trim(value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
  explicit_keys.insert(key);
}

void Scenario::finalize() {
  const auto broadcast = [&](std::vector<double>& vals, const char* name) {
    if (vals.size() == 1) vals.assign(config.n, vals[0]);
    if (vals.size() != config.n) {
      throw ConfigError(std::string("key '") + name +
                        "': expected 1 or n values");
    }
  };
  broadcast(p_list, "p");
  broadcast(q_list, "q");
  broadcast(r_list, "r");
  config.params.clear();
  for (std::size_t i = 0; i < config.n; ++i) {
    config.params.push_back(NodeParams{p_list[i], q_list[i], r_list[i]});
  }
  if (config.x0.empty()) config.x0.assign(config.n, 0.0);
  if (config.x0.size() == 1 && config.n > 1) config.x0.resize(config.n, 0.0);
  config.validate();

  if (!alpha_list.empty()) {
    if (alpha_list.size() == 1) alpha_list.assign(config.n, alpha_list[0]);
    if (alpha_list.size() != config.n) {
      throw ConfigError("key 'alpha': expected 1 or n values");
    }
    for (double a : alpha_list) {
      if (!(a >= 0.0 && a <= 1.0)) {
        throw ConfigError("key 'alpha': values must lie in [0,1]");
      }
    }
  }

  if (mode == Mode::Sweep) {
    if (sweep.param.empty() || sweep.grid.empty()) {
      throw ConfigError("sweep mode requires sweep_param and sweep_grid");
    }
    if (sweep.param != "n" && sweep.param != "p" && sweep.param != "q" &&
        sweep.param != "r") {
      throw ConfigError("sweep_param must be one of n, p, q, r");
    }
  }
  if (mode == Mode::Maneuver && target_beta.empty()) {
    throw ConfigError("maneuver mode requires target_beta");
  }
  if (mode == Mode::Reproduce && figure.empty()) {
    throw ConfigError("reproduce mode requires figure");
  }
}

std::map<std::string, std::string> Scenario::to_keyvals() const {
  std::map<std::string, std::string> kv;
  kv["mode"] = mode_name(mode);
  kv["n"] = std::to_string(config.n);
  kv["p"] = join17(p_list);
  kv["q"] = join17(q_list);
  kv["r"] = join17(r_list);
  kv["x0"] = join17(config.x0);
  kv["horizon"] = fmt17(config.horizon);
  kv["step"] = fmt17(config.step);
  kv["tol"] = fmt17(config.tol);
  kv["damping"] = fmt17(config.damping);
  kv["max_iter"] = std::to_string(config.max_iter);
  kv["seed"] = std::to_string(config.seed);
  if (!target_beta.empty()) kv["target_beta"] = join17(target_beta);
  if (!alpha_list.empty()) kv["alpha"] = join17(alpha_list);
  kv["abm_users"] = std::to_string(abm.users);
  kv["abm_dt"] = fmt17(abm.dt);
  kv["abm_runs"] = std::to_string(abm.runs);
  if (!sweep.param.empty()) kv["sweep_param"] = sweep.param;
  if (!sweep.grid.empty()) kv["sweep_grid"] = join17(sweep.grid);
  if (!figure.empty()) kv["figure"] = figure;
  kv["output_dir"] = output_dir;
  return kv;
}

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  Scenario scenario;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << origin << ":" << lineno << ": expected 'key = value'";
      throw ConfigError(msg.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      scenario.set(key, value);
    } catch (const ConfigError& err) {
      std::ostringstream msg;
      msg << origin << ":" << lineno << ": " << err.what();
      throw ConfigError(msg.str());
    }
  }
  return scenario;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_text(text.str(), path.filename().string());
}

}  // namespace trustgame
