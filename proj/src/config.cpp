#include "novikov2c/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "novikov2c/errors.hpp"

namespace novikov2c::harness {

namespace fs = std::filesystem;

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::simulate: return "simulate";
    case Mode::picard: return "picard";
    case Mode::besov: return "besov";
    case Mode::characteristics: return "characteristics";
    case Mode::holder: return "holder";
    case Mode::sweep: return "sweep";
  }
  return "simulate";
}

std::optional<Mode> parse_mode(std::string_view name) {
  for (Mode m : {Mode::simulate, Mode::picard, Mode::besov, Mode::characteristics, Mode::holder,
                 Mode::sweep}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

using Errors = std::vector<std::string>;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Reads one JSON object, recording every key it consumes so that leftovers
// can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path, Errors& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) {
      errors_.push_back((path_.empty() ? std::string("config") : path_) + ": must be an object");
      valid_ = false;
    }
  }

  bool valid() const { return valid_; }
  const std::string& path() const { return path_; }
  std::string at(const std::string& key) const { return join(path_, key); }

  const json* find(const std::string& key) {
    if (!valid_) return nullptr;
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  bool has(const std::string& key) const { return valid_ && obj_.contains(key); }

  std::optional<double> number(const std::string& key, bool required = false) {
    const json* v = find(key);
    if (!v) {
      if (required && valid_) errors_.push_back(at(key) + ": required key missing");
      return std::nullopt;
    }
    if (!v->is_number()) {
      errors_.push_back(at(key) + ": must be a number");
      return std::nullopt;
    }
    const double d = v->get<double>();
    if (!std::isfinite(d)) {
      errors_.push_back(at(key) + ": must be finite");
      return std::nullopt;
    }
    return d;
  }

  double number_or(const std::string& key, double fallback) {
    return number(key).value_or(fallback);
  }

  std::optional<long long> integer(const std::string& key, bool required = false) {
    const json* v = find(key);
    if (!v) {
      if (required && valid_) errors_.push_back(at(key) + ": required key missing");
      return std::nullopt;
    }
    if (v->is_number_integer()) return v->get<long long>();
    if (v->is_number_float()) {
      const double d = v->get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) {
        return static_cast<long long>(d);
      }
    }
    errors_.push_back(at(key) + ": must be an integer");
    return std::nullopt;
  }

  std::optional<bool> boolean(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      errors_.push_back(at(key) + ": must be true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<std::string> string(const std::string& key, bool required = false) {
    const json* v = find(key);
    if (!v) {
      if (required && valid_) errors_.push_back(at(key) + ": required key missing");
      return std::nullopt;
    }
    if (!v->is_string()) {
      errors_.push_back(at(key) + ": must be a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_array()) {
      errors_.push_back(at(key) + ": must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& e = (*v)[i];
      if (!e.is_number() || !std::isfinite(e.get<double>())) {
        errors_.push_back(at(key) + "[" + std::to_string(i) + "]: must be a finite number");
        return std::nullopt;
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  void finish() {
    if (!valid_) return;
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) errors_.push_back(at(key) + ": unknown key");
    }
  }

  Errors& errors() { return errors_; }

 private:
  const json& obj_;
  std::string path_;
  Errors& errors_;
  std::set<std::string> seen_;
  bool valid_ = true;
};

void positive(Errors& e, const std::string& key, double v) {
  if (!(v > 0.0)) e.push_back(key + ": must be positive");
}

void nonnegative(Errors& e, const std::string& key, double v) {
  if (!(v >= 0.0)) e.push_back(key + ": must be >= 0");
}

std::optional<double> optional_center(ObjectReader& r) { return r.number("center"); }

scenario::GaussianProfile gaussian_profile(ObjectReader& parent, const std::string& key) {
  scenario::GaussianProfile p;
  const json* v = parent.find(key);
  if (!v) return p;
  ObjectReader r(*v, parent.at(key), parent.errors());
  p.amplitude = r.number_or("amplitude", 0.0);
  p.width = r.number_or("width", 1.0);
  positive(r.errors(), r.at("width"), p.width);
  p.center = optional_center(r);
  r.finish();
  return p;
}

std::vector<double> table(const json& j, const std::string& where, Errors& errors) {
  std::vector<double> out;
  if (!j.is_array()) {
    errors.push_back(where + ": must be an array of numbers");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number() || !std::isfinite(j[i].get<double>())) {
      errors.push_back(where + "[" + std::to_string(i) + "]: must be a finite number");
      return {};
    }
    out.push_back(j[i].get<double>());
  }
  return out;
}

scenario::ScenarioSpec read_scenario(const json& j, const std::string& where, Errors& errors,
                                     const fs::path& base_dir) {
  ObjectReader r(j, where, errors);
  const std::string type = r.string("type", true).value_or("");
  scenario::ScenarioSpec spec = scenario::Gaussian{};
  if (!r.valid()) return spec;
  if (type == "gaussian") {
    scenario::Gaussian g;
    g.rho = gaussian_profile(r, "rho");
    g.u = gaussian_profile(r, "u");
    spec = g;
  } else if (type == "peakon") {
    scenario::Peakon p;
    p.c = r.number_or("c", p.c);
    p.delta = r.number_or("delta", p.delta);
    p.center = optional_center(r);
    positive(errors, r.at("c"), p.c);
    nonnegative(errors, r.at("delta"), p.delta);
    spec = p;
  } else if (type == "two_peakon") {
    scenario::TwoPeakon p;
    p.c1 = r.number_or("c1", p.c1);
    p.c2 = r.number_or("c2", p.c2);
    p.separation = r.number_or("separation", p.separation);
    p.delta = r.number_or("delta", p.delta);
    p.center = optional_center(r);
    positive(errors, r.at("c1"), p.c1);
    positive(errors, r.at("c2"), p.c2);
    nonnegative(errors, r.at("delta"), p.delta);
    spec = p;
  } else if (type == "antisymmetric_steep") {
    scenario::AntisymmetricSteep a;
    a.slope = r.number_or("slope", a.slope);
    a.width = r.number_or("width", a.width);
    a.rho_amplitude = r.number_or("rho_amplitude", a.rho_amplitude);
    a.center = optional_center(r);
    positive(errors, r.at("width"), a.width);
    spec = a;
  } else if (type == "custom") {
    scenario::Custom c;
    const auto file = r.string("file");
    const json* rho = r.find("rho");
    const json* u = r.find("u");
    if (file) {
      if (rho || u) errors.push_back(where + ": give either file or rho/u tables, not both");
      const fs::path p = fs::path(*file).is_absolute() ? fs::path(*file) : base_dir / *file;
      std::ifstream in(p);
      if (!in) {
        errors.push_back(r.at("file") + ": cannot read '" + p.string() + "'");
      } else {
        json doc;
        try {
          in >> doc;
        } catch (const json::exception& e) {
          errors.push_back(r.at("file") + ": invalid JSON (" + e.what() + ")");
        }
        if (!doc.is_null()) {
          ObjectReader fr(doc, r.at("file"), errors);
          if (const json* fr_rho = fr.find("rho")) c.rho = table(*fr_rho, fr.at("rho"), errors);
          else errors.push_back(fr.at("rho") + ": required key missing");
          if (const json* fr_u = fr.find("u")) c.u = table(*fr_u, fr.at("u"), errors);
          else errors.push_back(fr.at("u") + ": required key missing");
          fr.finish();
        }
      }
    } else {
      if (rho) c.rho = table(*rho, r.at("rho"), errors);
      else errors.push_back(r.at("rho") + ": required key missing");
      if (u) c.u = table(*u, r.at("u"), errors);
      else errors.push_back(r.at("u") + ": required key missing");
    }
    spec = c;
  } else if (!type.empty()) {
    errors.push_back(r.at("type") + ": unknown scenario type '" + type +
                     "' (gaussian, peakon, two_peakon, antisymmetric_steep, custom)");
    return spec;
  }
  r.finish();
  return spec;
}

json profile_json(const scenario::GaussianProfile& p) {
  json j = {{"amplitude", p.amplitude}, {"width", p.width}};
  if (p.center) j["center"] = *p.center;
  return j;
}

}  // namespace

json scenario_to_json(const scenario::ScenarioSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        json j;
        if constexpr (std::is_same_v<T, scenario::Gaussian>) {
          j = {{"type", "gaussian"}, {"rho", profile_json(s.rho)}, {"u", profile_json(s.u)}};
        } else if constexpr (std::is_same_v<T, scenario::Peakon>) {
          j = {{"type", "peakon"}, {"c", s.c}, {"delta", s.delta}};
          if (s.center) j["center"] = *s.center;
        } else if constexpr (std::is_same_v<T, scenario::TwoPeakon>) {
          j = {{"type", "two_peakon"}, {"c1", s.c1}, {"c2", s.c2},
               {"separation", s.separation}, {"delta", s.delta}};
          if (s.center) j["center"] = *s.center;
        } else if constexpr (std::is_same_v<T, scenario::AntisymmetricSteep>) {
          j = {{"type", "antisymmetric_steep"}, {"slope", s.slope}, {"width", s.width},
               {"rho_amplitude", s.rho_amplitude}};
          if (s.center) j["center"] = *s.center;
        } else {
          j = {{"type", "custom"}, {"rho", s.rho}, {"u", s.u}};
        }
        return j;
      },
      spec);
}

scenario::ScenarioSpec parse_scenario(const json& j, const std::string& where) {
  Errors errors;
  scenario::ScenarioSpec spec = read_scenario(j, where, errors, {});
  if (!errors.empty()) {
    std::string msg = errors.front();
    for (std::size_t i = 1; i < errors.size(); ++i) msg += "; " + errors[i];
    throw ConfigError(msg);
  }
  return spec;
}

RunConfig parse_config_json(const json& doc, const fs::path& base_dir, std::optional<Mode> mode) {
  Errors errors;
  RunConfig cfg;
  cfg.base_dir = base_dir;
  ObjectReader top(doc, "", errors);
  if (!top.valid()) throw ConfigError("config: must be a JSON object");

  if (auto v = top.integer("schema_version"); v && *v != kSchemaVersion) {
    errors.push_back("schema_version: unsupported version " + std::to_string(*v) +
                     " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (auto m = top.string("mode")) {
    if (auto mode = parse_mode(*m)) cfg.mode = *mode;
    else errors.push_back("mode: unknown mode '" + *m + "'");
    if (mode && parse_mode(*m) && *parse_mode(*m) != *mode) {
      errors.push_back("mode: config is for '" + *m + "' but the subcommand is '" +
                       std::string(to_string(*mode)) + "'");
    }
  }
  if (mode) cfg.mode = *mode;
  if (auto s = top.integer("seed")) {
    if (*s < 0) errors.push_back("seed: must be >= 0");
    else cfg.seed = static_cast<std::uint64_t>(*s);
  }
  if (auto o = top.string("output_dir")) cfg.output_dir = fs::path(*o);

  if (const json* g = top.find("grid")) {
    ObjectReader r(*g, "grid", errors);
    GridConfig grid;
    grid.L = r.number("L", true).value_or(0.0);
    const auto n = r.integer("N", true);
    grid.N = n ? static_cast<int>(*n) : 0;
    if (r.has("L") && !(grid.L > 0.0)) errors.push_back("grid.L: must be positive");
    if (n && (*n < 16 || *n > (1 << 24) || (*n & (*n - 1)) != 0)) {
      errors.push_back("grid.N: must be a power of two >= 16 (got " + std::to_string(*n) + ")");
    }
    r.finish();
    cfg.grid = grid;
  }

  if (const json* s = top.find("scenario")) cfg.scenario = read_scenario(*s, "scenario", errors, base_dir);

  if (const json* p = top.find("scenario_policy")) {
    ObjectReader r(*p, "scenario_policy", errors);
    cfg.policy.boundary_tolerance = r.number_or("boundary_tolerance", cfg.policy.boundary_tolerance);
    positive(errors, "scenario_policy.boundary_tolerance", cfg.policy.boundary_tolerance);
    cfg.policy.min_decay_order = r.number_or("min_decay_order", cfg.policy.min_decay_order);
    if (auto ns = r.string("non_smooth")) {
      if (*ns == "reject") cfg.policy.non_smooth = scenario::NonSmoothPolicy::reject;
      else if (*ns == "warn") cfg.policy.non_smooth = scenario::NonSmoothPolicy::warn;
      else errors.push_back("scenario_policy.non_smooth: must be \"reject\" or \"warn\"");
    }
    r.finish();
  }

  if (const json* s = top.find("solver")) {
    ObjectReader r(*s, "solver", errors);
    if (const json* dt = r.find("dt")) {
      if (dt->is_string() && dt->get<std::string>() == "auto") {
        cfg.solver.dt.reset();
      } else if (dt->is_number() && dt->get<double>() > 0.0 && std::isfinite(dt->get<double>())) {
        cfg.solver.dt = dt->get<double>();
      } else {
        errors.push_back("solver.dt: must be a positive number or \"auto\"");
      }
    }
    cfg.solver.cfl = r.number_or("cfl", cfg.solver.cfl);
    positive(errors, "solver.cfl", cfg.solver.cfl);
    cfg.solver.t_end = r.number_or("t_end", cfg.solver.t_end);
    nonnegative(errors, "solver.t_end", cfg.solver.t_end);
    cfg.solver.dealias = r.boolean("dealias").value_or(cfg.solver.dealias);
    if (auto st = r.integer("snapshot_stride")) {
      if (*st < 1) errors.push_back("solver.snapshot_stride: must be >= 1");
      else cfg.solver.snapshot_stride = static_cast<int>(*st);
    }
    cfg.solver.tail_threshold = r.number_or("tail_threshold", cfg.solver.tail_threshold);
    positive(errors, "solver.tail_threshold", cfg.solver.tail_threshold);
    cfg.solver.besov_diagnostics =
        r.boolean("besov_diagnostics").value_or(cfg.solver.besov_diagnostics);
    r.finish();
  }

  if (const json* m = top.find("monitor")) {
    ObjectReader r(*m, "monitor", errors);
    auto& b = cfg.solver.blowup;
    b.w_factor = r.number_or("w_factor", b.w_factor);
    b.w_offset = r.number_or("w_offset", b.w_offset);
    b.cumulative = r.number_or("cumulative", b.cumulative);
    b.confirm_window = r.number_or("confirm_window", b.confirm_window);
    nonnegative(errors, "monitor.w_factor", b.w_factor);
    positive(errors, "monitor.cumulative", b.cumulative);
    nonnegative(errors, "monitor.confirm_window", b.confirm_window);
    r.finish();
  }

  if (const json* p = top.find("picard")) {
    ObjectReader r(*p, "picard", errors);
    if (auto n = r.integer("n_max")) {
      if (*n < 1) errors.push_back("picard.n_max: must be >= 1");
      else cfg.picard.n_max = static_cast<int>(*n);
    }
    if (const json* h = r.find("horizon")) {
      if (h->is_string() && h->get<std::string>() == "auto") cfg.picard.horizon.reset();
      else if (h->is_number() && h->get<double>() > 0.0) cfg.picard.horizon = h->get<double>();
      else errors.push_back("picard.horizon: must be a positive number or \"auto\"");
    }
    if (const json* dt = r.find("dt")) {
      if (dt->is_string() && dt->get<std::string>() == "auto") cfg.picard.dt.reset();
      else if (dt->is_number() && dt->get<double>() > 0.0) cfg.picard.dt = dt->get<double>();
      else errors.push_back("picard.dt: must be a positive number or \"auto\"");
    }
    cfg.picard.horizon_factor = r.number_or("horizon_factor", cfg.picard.horizon_factor);
    positive(errors, "picard.horizon_factor", cfg.picard.horizon_factor);
    cfg.picard.convergence_floor = r.number_or("convergence_floor", cfg.picard.convergence_floor);
    nonnegative(errors, "picard.convergence_floor", cfg.picard.convergence_floor);
    cfg.picard.divergence_factor = r.number_or("divergence_factor", cfg.picard.divergence_factor);
    if (!(cfg.picard.divergence_factor > 1.0)) {
      errors.push_back("picard.divergence_factor: must exceed 1");
    }
    r.finish();
  }

  if (const json* c = top.find("characteristics")) {
    ObjectReader r(*c, "characteristics", errors);
    cfg.characteristics.first = r.number("first");
    cfg.characteristics.last = r.number("last");
    if (auto n = r.integer("count")) {
      if (*n < 3) errors.push_back("characteristics.count: must be >= 3");
      else cfg.characteristics.count = static_cast<int>(*n);
    }
    if (auto n = r.integer("substeps")) {
      if (*n < 1) errors.push_back("characteristics.substeps: must be >= 1");
      else cfg.characteristics.substeps = static_cast<int>(*n);
    }
    cfg.characteristics.rho_cutoff = r.number_or("rho_cutoff", cfg.characteristics.rho_cutoff);
    nonnegative(errors, "characteristics.rho_cutoff", cfg.characteristics.rho_cutoff);
    if (auto run = r.string("run")) {
      const fs::path p = fs::path(*run).is_absolute() ? fs::path(*run) : base_dir / *run;
      if (!fs::is_directory(p)) errors.push_back("characteristics.run: no such directory '" + p.string() + "'");
      cfg.characteristics.run = p;
    }
    r.finish();
  }

  if (const json* h = top.find("holder")) {
    ObjectReader r(*h, "holder", errors);
    if (auto e = r.numbers("epsilons")) cfg.holder.epsilons = *e;
    cfg.holder.horizon = r.number_or("horizon", cfg.holder.horizon);
    positive(errors, "holder.horizon", cfg.holder.horizon);
    cfg.holder.s_prime = r.number_or("s_prime", cfg.holder.s_prime);
    cfg.holder.s = r.number_or("s", cfg.holder.s);
    if (const json* d = r.find("direction")) {
      cfg.holder.direction = read_scenario(*d, "holder.direction", errors, base_dir);
    }
    r.finish();
  }

  if (const json* b = top.find("besov")) {
    ObjectReader r(*b, "besov", errors);
    if (auto s = r.string("snapshots", cfg.mode == Mode::besov)) {
      const fs::path p = fs::path(*s).is_absolute() ? fs::path(*s) : base_dir / *s;
      if (!fs::is_regular_file(p)) errors.push_back("besov.snapshots: no such file '" + p.string() + "'");
      cfg.besov.snapshots = p;
    }
    if (auto i = r.integer("snapshot")) cfg.besov.snapshot = static_cast<int>(*i);
    if (const json* idx = r.find("indices")) {
      if (!idx->is_array()) {
        errors.push_back("besov.indices: must be an array");
      } else {
        for (std::size_t k = 0; k < idx->size(); ++k) {
          ObjectReader ir((*idx)[k], "besov.indices[" + std::to_string(k) + "]", errors);
          BesovIndexConfig bi;
          bi.s = ir.number("s", true).value_or(0.0);
          if (const json* p = ir.find("p")) {
            if (p->is_string() && p->get<std::string>() == "inf") bi.p = lp::BesovIndex::infinity;
            else if (p->is_number() && p->get<double>() >= 1.0) bi.p = p->get<double>();
            else errors.push_back(ir.at("p") + ": must be >= 1 or \"inf\"");
          }
          if (const json* rr = ir.find("r")) {
            if (rr->is_string() && rr->get<std::string>() == "inf") bi.r = lp::BesovIndex::infinity;
            else if (rr->is_number() && rr->get<double>() >= 1.0) bi.r = rr->get<double>();
            else errors.push_back(ir.at("r") + ": must be >= 1 or \"inf\"");
          }
          ir.finish();
          cfg.besov.indices.push_back(bi);
        }
      }
    }
    r.finish();
  } else if (cfg.mode == Mode::besov) {
    errors.push_back("besov.snapshots: required key missing");
  }
  if (cfg.besov.indices.empty()) {
    cfg.besov.indices = {{0.5, 2.0, 1.0}, {1.5, 2.0, 1.0}, {-0.5, 2.0, lp::BesovIndex::infinity},
                         {0.5, 2.0, lp::BesovIndex::infinity}};
  }

  if (const json* s = top.find("sweep")) {
    ObjectReader r(*s, "sweep", errors);
    if (const json* list = r.find("scenarios")) {
      if (!list->is_array() || list->empty()) {
        errors.push_back("sweep.scenarios: must be a non-empty array");
      } else {
        for (std::size_t k = 0; k < list->size(); ++k) {
          const std::string where = "sweep.scenarios[" + std::to_string(k) + "]";
          json entry = (*list)[k];
          std::string name = "run" + std::to_string(k);
          if (entry.is_object() && entry.contains("name")) {
            if (entry["name"].is_string()) name = entry["name"].get<std::string>();
            else errors.push_back(where + ".name: must be a string");
            entry.erase("name");
          }
          cfg.sweep.scenarios.push_back(read_scenario(entry, where, errors, base_dir));
          cfg.sweep.names.push_back(name);
        }
      }
    } else if (cfg.mode == Mode::sweep) {
      errors.push_back("sweep.scenarios: required key missing");
    }
    if (const json* res = r.find("N")) {
      if (!res->is_array()) {
        errors.push_back("sweep.N: must be an array of grid sizes");
      } else {
        for (std::size_t k = 0; k < res->size(); ++k) {
          const json& n = (*res)[k];
          if (!n.is_number_integer() || n.get<long long>() < 16 ||
              (n.get<long long>() & (n.get<long long>() - 1)) != 0) {
            errors.push_back("sweep.N[" + std::to_string(k) + "]: must be a power of two >= 16");
          } else {
            cfg.sweep.resolutions.push_back(static_cast<int>(n.get<long long>()));
          }
        }
      }
    }
    if (auto j = r.integer("jobs")) {
      if (*j < 1) errors.push_back("sweep.jobs: must be >= 1");
      else cfg.sweep.jobs = static_cast<int>(*j);
    }
    r.finish();
  } else if (cfg.mode == Mode::sweep) {
    errors.push_back("sweep.scenarios: required key missing");
  }

  const bool needs_data = cfg.mode == Mode::simulate || cfg.mode == Mode::picard ||
                          cfg.mode == Mode::holder || cfg.mode == Mode::sweep ||
                          (cfg.mode == Mode::characteristics && !cfg.characteristics.run);
  if (needs_data && !cfg.grid && !top.has("grid")) errors.push_back("grid: required key missing");
  if (needs_data && cfg.mode != Mode::sweep && !cfg.scenario && !top.has("scenario")) {
    errors.push_back("scenario: required key missing");
  }
  top.finish();

  if (!errors.empty()) {
    std::ostringstream msg;
    msg << errors.size() << " configuration error" << (errors.size() == 1 ? "" : "s") << ":";
    for (const auto& e : errors) msg << "\n  " << e;
    throw ConfigError(msg.str());
  }

  // Echo with defaults filled in.
  json echo;
  echo["schema_version"] = kSchemaVersion;
  echo["mode"] = std::string(to_string(cfg.mode));
  echo["seed"] = cfg.seed;
  if (cfg.grid) echo["grid"] = {{"L", cfg.grid->L}, {"N", cfg.grid->N}};
  if (cfg.scenario) echo["scenario"] = scenario_to_json(*cfg.scenario);
  echo["scenario_policy"] = {
      {"boundary_tolerance", cfg.policy.boundary_tolerance},
      {"min_decay_order", cfg.policy.min_decay_order},
      {"non_smooth", cfg.policy.non_smooth == scenario::NonSmoothPolicy::reject ? "reject" : "warn"}};
  json solver = {{"cfl", cfg.solver.cfl},
                 {"t_end", cfg.solver.t_end},
                 {"dealias", cfg.solver.dealias},
                 {"snapshot_stride", cfg.solver.snapshot_stride},
                 {"tail_threshold", cfg.solver.tail_threshold},
                 {"besov_diagnostics", cfg.solver.besov_diagnostics}};
  if (cfg.solver.dt) solver["dt"] = *cfg.solver.dt;
  else solver["dt"] = "auto";
  echo["solver"] = solver;
  const auto& b = cfg.solver.blowup;
  echo["monitor"] = {{"w_factor", b.w_factor},
                     {"w_offset", b.w_offset},
                     {"cumulative", b.cumulative},
                     {"confirm_window", b.confirm_window}};
  if (cfg.mode == Mode::picard) {
    json p = {{"n_max", cfg.picard.n_max},
              {"horizon_factor", cfg.picard.horizon_factor},
              {"convergence_floor", cfg.picard.convergence_floor},
              {"divergence_factor", cfg.picard.divergence_factor}};
    p["horizon"] = cfg.picard.horizon ? json(*cfg.picard.horizon) : json("auto");
    p["dt"] = cfg.picard.dt ? json(*cfg.picard.dt) : json("auto");
    echo["picard"] = p;
  }
  if (cfg.mode == Mode::characteristics) {
    json c = {{"count", cfg.characteristics.count},
              {"substeps", cfg.characteristics.substeps},
              {"rho_cutoff", cfg.characteristics.rho_cutoff}};
    if (cfg.characteristics.first) c["first"] = *cfg.characteristics.first;
    if (cfg.characteristics.last) c["last"] = *cfg.characteristics.last;
    if (cfg.characteristics.run) c["run"] = cfg.characteristics.run->string();
    echo["characteristics"] = c;
  }
  if (cfg.mode == Mode::holder) {
    json h = {{"epsilons", cfg.holder.epsilons},
              {"horizon", cfg.holder.horizon},
              {"s_prime", cfg.holder.s_prime},
              {"s", cfg.holder.s}};
    if (cfg.holder.direction) h["direction"] = scenario_to_json(*cfg.holder.direction);
    echo["holder"] = h;
  }
  if (cfg.mode == Mode::besov) {
    json idx = json::array();
    for (const auto& i : cfg.besov.indices) {
      auto enc = [](double v) { return std::isinf(v) ? json("inf") : json(v); };
      idx.push_back({{"s", i.s}, {"p", enc(i.p)}, {"r", enc(i.r)}});
    }
    echo["besov"] = {{"snapshots", cfg.besov.snapshots.string()},
                     {"snapshot", cfg.besov.snapshot},
                     {"indices", idx}};
  }
  if (cfg.mode == Mode::sweep) {
    json list = json::array();
    for (std::size_t k = 0; k < cfg.sweep.scenarios.size(); ++k) {
      json s = scenario_to_json(cfg.sweep.scenarios[k]);
      s["name"] = cfg.sweep.names[k];
      list.push_back(s);
    }
    echo["sweep"] = {{"scenarios", list}, {"N", cfg.sweep.resolutions}, {"jobs", cfg.sweep.jobs}};
  }
  if (cfg.output_dir) echo["output_dir"] = cfg.output_dir->string();
  cfg.echo = std::move(echo);
  return cfg;
}

RunConfig parse_config(const fs::path& path, std::optional<Mode> mode) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config_json(doc, path.parent_path(), mode);
}

}  // namespace novikov2c::harness
