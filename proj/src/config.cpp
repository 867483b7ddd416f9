#include "swe/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace swe {

namespace {

using nlohmann::json;

double parse_trailing_number(const std::string& text, std::size_t pos,
                             const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text.substr(pos), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": cannot read number in '" + text +
                                "'");
  }
  if (pos + used != text.size())
    throw std::invalid_argument(what + ": trailing junk in '" + text + "'");
  return v;
}

std::function<double(double)> preset_function(const std::string& name,
                                              double J) {
  if (name == "zero") return [](double) { return 0.0; };
  if (name.rfind("const ", 0) == 0) {
    double c = parse_trailing_number(name, 6, "data preset");
    return [c](double) { return c; };
  }
  if (name.rfind("sine_", 0) == 0) {
    std::size_t sp = name.find(' ');
    if (sp == std::string::npos || sp <= 5)
      throw std::invalid_argument("data preset: expected 'sine_k A', got '" +
                                  name + "'");
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(name.substr(5, sp - 5), &used);
      if (used != sp - 5) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("data preset: bad mode number in '" + name +
                                  "'");
    }
    if (k < 1)
      throw std::invalid_argument("data preset: mode number must be >= 1");
    double amp = parse_trailing_number(name, sp + 1, "data preset");
    double freq = k * pi / J;
    return [amp, freq](double x) { return amp * std::sin(freq * x); };
  }
  throw std::invalid_argument("data preset: unknown name '" + name + "'");
}

std::function<double(double)> table_function(const std::vector<double>& nodes,
                                             double J) {
  if (nodes.size() < 2)
    throw std::invalid_argument("tabulated data needs at least 2 samples");
  return [nodes, J](double x) {
    double pos = x / J * (nodes.size() - 1);
    if (pos <= 0.0) return nodes.front();
    if (pos >= static_cast<double>(nodes.size() - 1)) return nodes.back();
    auto cell = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(cell);
    return nodes[cell] + frac * (nodes[cell + 1] - nodes[cell]);
  };
}

DataSpec data_from_json(const json& j, const std::string& field) {
  DataSpec d;
  if (j.is_string()) {
    d.value = j.get<std::string>();
  } else if (j.is_array()) {
    std::vector<double> v;
    for (const auto& e : j) {
      if (!e.is_number())
        throw std::invalid_argument(field + ": table entries must be numbers");
      v.push_back(e.get<double>());
    }
    d.value = std::move(v);
  } else {
    throw std::invalid_argument(field + ": expected preset string or array");
  }
  return d;
}

json data_to_json(const DataSpec& d) {
  if (std::holds_alternative<std::string>(d.value))
    return std::get<std::string>(d.value);
  return std::get<std::vector<double>>(d.value);
}

template <typename T>
void read_field(const json& j, const char* key, T& target) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    it->get_to(target);
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config field '") + key +
                                "' has the wrong type");
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument("config: " + message);
}

}  // namespace

std::function<double(double)> DataSpec::to_function(double J) const {
  if (std::holds_alternative<std::string>(value))
    return preset_function(std::get<std::string>(value), J);
  return table_function(std::get<std::vector<double>>(value), J);
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: not a JSON object");

  static const std::set<std::string> known = {
      "J",        "c1",          "c2",          "kappa",      "r",
      "f_choice", "u0",          "v0",          "nx",         "cfl",
      "L",        "epsilon",     "horizon",     "n_paths",    "delta",
      "master_seed", "boundary", "threads",     "n_checkpoints",
      "output_dir", "keep_paths", "ode_cap",    "ode_dt"};
  for (const auto& item : j.items())
    if (known.find(item.key()) == known.end())
      throw std::invalid_argument("config: unknown field '" + item.key() +
                                  "'");

  RunConfig cfg;
  read_field(j, "J", cfg.J);
  read_field(j, "c1", cfg.c1);
  read_field(j, "c2", cfg.c2);
  read_field(j, "kappa", cfg.kappa);
  read_field(j, "r", cfg.r);
  read_field(j, "f_choice", cfg.f_choice);
  if (j.contains("u0")) cfg.u0 = data_from_json(j["u0"], "u0");
  if (j.contains("v0")) cfg.v0 = data_from_json(j["v0"], "v0");
  read_field(j, "nx", cfg.nx);
  read_field(j, "cfl", cfg.cfl);
  read_field(j, "L", cfg.L);
  read_field(j, "epsilon", cfg.epsilon);
  if (j.contains("horizon") && !j["horizon"].is_null()) {
    double h = 0.0;
    read_field(j, "horizon", h);
    cfg.horizon = h;
  }
  read_field(j, "n_paths", cfg.n_paths);
  read_field(j, "delta", cfg.delta);
  read_field(j, "master_seed", cfg.master_seed);
  read_field(j, "boundary", cfg.boundary);
  read_field(j, "threads", cfg.threads);
  read_field(j, "n_checkpoints", cfg.n_checkpoints);
  read_field(j, "output_dir", cfg.output_dir);
  read_field(j, "keep_paths", cfg.keep_paths);
  read_field(j, "ode_cap", cfg.ode_cap);
  read_field(j, "ode_dt", cfg.ode_dt);

  require(cfg.J > 0.0, "J must be positive");
  require(cfg.kappa >= 0.0, "kappa must be nonnegative");
  require(cfg.r > 1.0, "r must exceed 1");
  require(cfg.nx >= 8, "nx must be at least 8");
  require(cfg.cfl > 0.0 && cfg.cfl <= 1.0, "cfl must lie in (0, 1]");
  require(cfg.L > 0.0, "L must be positive");
  require(cfg.epsilon > 0.0, "epsilon must be positive");
  require(!cfg.horizon || *cfg.horizon > 0.0, "horizon must be positive");
  require(cfg.n_paths >= 1, "n_paths must be at least 1");
  require(cfg.delta >= 0.0 && cfg.delta <= 1.0 / 3.0,
          "delta must lie in [0, 1/3]");
  require(cfg.threads >= 1, "threads must be at least 1");
  require(cfg.n_checkpoints >= 2, "n_checkpoints must be at least 2");
  require(cfg.ode_cap > 0.0, "ode_cap must be positive");
  require(cfg.ode_dt > 0.0, "ode_dt must be positive");
  require(cfg.boundary == "periodic" || cfg.boundary == "dirichlet",
          "boundary must be 'periodic' or 'dirichlet'");
  require(cfg.f_choice == "power" || cfg.f_choice == "zero" ||
              cfg.f_choice.rfind("const ", 0) == 0,
          "f_choice must be 'power', 'zero', or 'const <C>'");
  if (cfg.f_choice.rfind("const ", 0) == 0)
    parse_trailing_number(cfg.f_choice, 6, "f_choice");
  // materialize the data presets now so bad descriptors fail before any work
  cfg.u0.to_function(cfg.J);
  cfg.v0.to_function(cfg.J);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunConfig& cfg) {
  json j;
  j["J"] = cfg.J;
  j["c1"] = cfg.c1;
  j["c2"] = cfg.c2;
  j["kappa"] = cfg.kappa;
  j["r"] = cfg.r;
  j["f_choice"] = cfg.f_choice;
  j["u0"] = data_to_json(cfg.u0);
  j["v0"] = data_to_json(cfg.v0);
  j["nx"] = cfg.nx;
  j["cfl"] = cfg.cfl;
  j["L"] = cfg.L;
  j["epsilon"] = cfg.epsilon;
  j["horizon"] = cfg.horizon ? json(*cfg.horizon) : json(nullptr);
  j["n_paths"] = cfg.n_paths;
  j["delta"] = cfg.delta;
  j["master_seed"] = cfg.master_seed;
  j["boundary"] = cfg.boundary;
  j["threads"] = cfg.threads;
  j["n_checkpoints"] = cfg.n_checkpoints;
  j["output_dir"] = cfg.output_dir;
  j["keep_paths"] = cfg.keep_paths;
  j["ode_cap"] = cfg.ode_cap;
  j["ode_dt"] = cfg.ode_dt;
  return j.dump(2) + "\n";
}

PhysParams params_of(const RunConfig& cfg) {
  return PhysParams{cfg.J, cfg.c1, cfg.c2, cfg.kappa, cfg.r};
}

Nonlinearity nonlinearity_of(const RunConfig& cfg) {
  Nonlinearity f;
  if (cfg.f_choice == "power") {
    f.kind = Nonlinearity::Kind::power;
  } else if (cfg.f_choice == "zero") {
    f.kind = Nonlinearity::Kind::zero;
  } else {
    f.kind = Nonlinearity::Kind::constant;
    f.value = parse_trailing_number(cfg.f_choice, 6, "f_choice");
  }
  return f;
}

Boundary boundary_of(const RunConfig& cfg) {
  return cfg.boundary == "periodic" ? Boundary::periodic : Boundary::dirichlet;
}

}  // namespace swe
