#include "novikov2c/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "novikov2c/errors.hpp"
#include "novikov2c/io.hpp"

namespace novikov2c::harness {

namespace fs = std::filesystem;
using io::fmt17;
using nlohmann::json;

namespace {

class Collector {
 public:
  Collector(Summary& s, std::string run) : s_(s), run_(std::move(run)) {}

  void add(const std::string& q, const std::string& v, const std::string& index = "") {
    s_.entries.push_back({run_, q, index, v});
  }
  void add(const std::string& q, double v, const std::string& index = "") { add(q, fmt17(v), index); }
  void gap(const std::string& what) { s_.gaps.push_back(run_ + ": " + what); }

 private:
  Summary& s_;
  std::string run_;
};

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt17(v.get<double>());
  if (v.is_null()) return "none";
  return v.dump();
}

void summarise_diagnostics(const io::CsvTable& t, Collector& c) {
  c.add("diagnostics_rows", std::to_string(t.rows.size()));
  if (t.malformed) c.gap(std::to_string(t.malformed) + " malformed diagnostics rows");
  c.add("diagnostics_truncated", t.truncated ? "1" : "0");
  if (t.rows.empty()) {
    c.gap("diagnostics.csv has no data rows");
    return;
  }
  const int it = t.column("t");
  const int ie1 = t.column("E1");
  const int ie2 = t.column("E2");
  const int iw = t.column("sup_uux");
  const int iw_abs = t.column("sup_abs_uux");
  const int icum = t.column("blowup_cumulative");
  const int itail = t.column("spectral_tail_ratio");
  if (it >= 0) c.add("t_final", t.rows.back()[static_cast<std::size_t>(it)]);
  for (const auto& [col, name] : {std::pair{ie1, "E1"}, std::pair{ie2, "E2"}}) {
    if (col < 0) {
      c.gap(std::string("column ") + name + " missing");
      continue;
    }
    const double e0 = t.rows.front()[static_cast<std::size_t>(col)];
    double d = 0.0;
    for (const auto& r : t.rows) d = std::max(d, std::abs(r[static_cast<std::size_t>(col)] - e0));
    c.add(std::string(name) + "_initial", e0);
    c.add(std::string(name) + "_drift_abs", d);
    c.add(std::string(name) + "_drift_rel", e0 != 0.0 ? d / std::abs(e0) : d);
  }
  auto column_max = [&](int col, const std::string& name) {
    if (col < 0) {
      c.gap("column " + name + " missing");
      return;
    }
    double m = -INFINITY;
    for (const auto& r : t.rows) m = std::max(m, r[static_cast<std::size_t>(col)]);
    c.add("max_" + name, m);
  };
  column_max(iw, "sup_uux");
  column_max(iw_abs, "sup_abs_uux");
  column_max(icum, "blowup_cumulative");
  column_max(itail, "spectral_tail_ratio");
}

void summarise_picard(const io::CsvTable& t, const json& meta, Collector& c) {
  const int in = t.column("n");
  const int ia = t.column("A_n");
  if (in < 0 || ia < 0) {
    c.gap("picard.csv lacks the n or A_n column");
    return;
  }
  double floor = 0.0;
  if (meta.contains("picard") && meta["picard"].contains("floor")) {
    floor = meta["picard"]["floor"].get<double>();
  }
  bool positive = true;
  bool decreasing = true;
  double prev = INFINITY;
  bool reached_floor = false;
  for (const auto& r : t.rows) {
    const double a = r[static_cast<std::size_t>(ia)];
    const std::string n = std::to_string(static_cast<long long>(r[static_cast<std::size_t>(in)]));
    if (std::isnan(a)) continue;
    c.add("A_n", a, n);
    if (reached_floor) continue;
    if (!(a > 0.0)) positive = false;
    if (!(a < prev)) decreasing = false;
    prev = a;
    if (a <= floor) reached_floor = true;
  }
  c.add("A_n_strictly_positive_until_floor", positive ? "1" : "0");
  c.add("A_n_strictly_decreasing_until_floor", decreasing ? "1" : "0");
  c.add("A_n_floor", floor);
}

void summarise_run(const fs::path& dir, const std::string& name, Summary& out) {
  Collector c(out, name);
  json meta;
  const fs::path meta_path = dir / "run_meta.json";
  if (fs::exists(meta_path)) {
    try {
      meta = io::read_json_file(meta_path);
    } catch (const std::exception& e) {
      c.gap(std::string("run_meta.json unreadable: ") + e.what());
    }
  } else {
    c.gap("run_meta.json missing");
  }
  if (meta.is_object()) {
    for (const char* key : {"mode", "status", "trigger", "truncated", "scenario", "steps"}) {
      if (meta.contains(key)) c.add(key, scalar(meta[key]));
    }
    if (meta.contains("schema_version")) c.add("schema_version", scalar(meta["schema_version"]));
    for (const char* section : {"picard", "holder", "characteristics"}) {
      if (!meta.contains(section) || !meta[section].is_object()) continue;
      for (const auto& [k, v] : meta[section].items()) {
        if (v.is_primitive()) c.add(std::string(section) + "." + k, scalar(v));
      }
    }
  }
  auto table = [&](const char* file) -> std::optional<io::CsvTable> {
    const fs::path p = dir / file;
    if (!fs::exists(p)) return std::nullopt;
    try {
      return io::read_csv(p);
    } catch (const std::exception& e) {
      c.gap(std::string(file) + " unreadable: " + e.what());
      return std::nullopt;
    }
  };
  const std::string mode = meta.is_object() ? meta.value("mode", "") : "";
  if (auto t = table("diagnostics.csv")) {
    summarise_diagnostics(*t, c);
  } else if (mode == "simulate") {
    c.gap("diagnostics.csv missing");
  }
  if (auto t = table("picard.csv")) summarise_picard(*t, meta, c);
  else if (mode == "picard") c.gap("picard.csv missing");
}

std::string render_text(const Summary& s) {
  std::ostringstream out;
  std::string current;
  std::size_t width = 0;
  for (const auto& e : s.entries) width = std::max(width, e.quantity.size() + e.index.size() + 2);
  for (const auto& e : s.entries) {
    if (e.run != current) {
      if (!current.empty()) out << '\n';
      current = e.run;
      out << "[" << e.run << "]\n";
    }
    std::string key = e.quantity;
    if (!e.index.empty()) key += "[" + e.index + "]";
    out << "  " << key << std::string(width + 1 - std::min(width, key.size()), ' ') << e.value
        << '\n';
  }
  if (!s.gaps.empty()) {
    out << "\ngaps:\n";
    for (const auto& g : s.gaps) out << "  " << g << '\n';
  }
  return out.str();
}

}  // namespace

Summary emit_report(const fs::path& run_dir) {
  if (!fs::is_directory(run_dir)) {
    throw UsageError("run directory '" + run_dir.string() + "' does not exist");
  }
  if (fs::is_empty(run_dir)) throw UsageError("run directory '" + run_dir.string() + "' is empty");

  std::vector<fs::path> children;
  for (const auto& e : fs::directory_iterator(run_dir)) {
    const std::string n = e.path().filename().string();
    if (e.is_directory() && n.rfind("run_", 0) == 0) children.push_back(e.path());
  }
  std::sort(children.begin(), children.end());

  Summary s;
  summarise_run(run_dir, ".", s);
  for (const auto& c : children) summarise_run(c, c.filename().string(), s);
  s.text = render_text(s);

  std::ofstream txt(run_dir / "summary.txt");
  std::ofstream csv(run_dir / "summary.csv");
  if (!txt || !csv) throw UsageError("cannot write the summary into '" + run_dir.string() + "'");
  txt << s.text;
  csv << "run,quantity,index,value\n";
  for (const auto& e : s.entries) {
    csv << e.run << ',' << e.quantity << ',' << e.index << ',' << e.value << '\n';
  }
  for (const auto& g : s.gaps) csv << "# gap: " << g << '\n';
  return s;
}

}  // namespace novikov2c::harness
