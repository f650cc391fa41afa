#include "novikov2c/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "novikov2c/errors.hpp"

namespace novikov2c::io {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump(std::ostringstream& out, const json& v, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        dump(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Numeric arrays stay on one line.
      bool flat = true;
      for (const auto& e : v) flat = flat && e.is_primitive();
      out << '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        if (!flat) newline(depth + 1);
        else if (i && indent >= 0) out << ' ';
        dump(out, v[i], indent, depth + 1);
      }
      if (!flat) newline(depth);
      out << ']';
      return;
    }
    case json::value_t::number_float: {
      const double d = v.get<double>();
      if (!std::isfinite(d)) {
        out << "null";
      } else {
        out << fmt17(d);
      }
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

std::string dump_json(const json& value, int indent) {
  std::ostringstream out;
  dump(out, value, indent, 0);
  return out.str();
}

void write_json_file(const std::filesystem::path& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << dump_json(value) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

std::string snapshot_line(const system::Snapshot& snap) {
  std::string s;
  const auto& g = snap.u.grid();
  s.reserve(static_cast<std::size_t>(g.size()) * 50 + 64);
  s += "{\"t\":" + fmt17(snap.t) + ",\"L\":" + fmt17(g.length()) +
       ",\"N\":" + std::to_string(g.size()) + ",\"rho\":[";
  for (int i = 0; i < snap.rho.size(); ++i) {
    if (i) s += ',';
    s += std::isfinite(snap.rho[i]) ? fmt17(snap.rho[i]) : "null";
  }
  s += "],\"u\":[";
  for (int i = 0; i < snap.u.size(); ++i) {
    if (i) s += ',';
    s += std::isfinite(snap.u[i]) ? fmt17(snap.u[i]) : "null";
  }
  s += "]}";
  return s;
}

std::vector<StoredSnapshot> read_snapshots(const std::filesystem::path& path, int* malformed) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read snapshot file '" + path.string() + "'");
  std::vector<StoredSnapshot> out;
  int bad = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    try {
      const json j = json::parse(line);
      StoredSnapshot s;
      s.t = j.at("t").get<double>();
      s.L = j.at("L").get<double>();
      s.N = j.at("N").get<int>();
      s.rho = j.at("rho").get<std::vector<double>>();
      s.u = j.at("u").get<std::vector<double>>();
      if (static_cast<int>(s.rho.size()) != s.N || static_cast<int>(s.u.size()) != s.N) {
        ++bad;
        continue;
      }
      out.push_back(std::move(s));
    } catch (const json::exception&) {
      ++bad;
    }
  }
  if (malformed) *malformed = bad;
  if (out.empty()) throw UsageError("no readable snapshots in '" + path.string() + "'");
  return out;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path.string() + "'");
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind(kTruncationMarker, 0) == 0) {
      table.truncated = true;
      table.truncation_note = line;
      continue;
    }
    if (line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      table.header = cells;
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      ++table.malformed;
      continue;
    }
    std::vector<double> row;
    bool ok = true;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || *end != '\0') {
        ok = false;
        break;
      }
      row.push_back(v);
    }
    if (ok) table.rows.push_back(std::move(row));
    else ++table.malformed;
  }
  if (!have_header) throw UsageError("'" + path.string() + "' is empty");
  return table;
}

std::string diagnostics_header() {
  return "t,E1,E2,sup_uux,sup_abs_uux,blowup_integrand,blowup_cumulative,besov_rho_half,"
         "besov_u_threehalves,spectral_tail_ratio";
}

std::string diagnostics_line(const diagnostics::DiagnosticsRow& r) {
  std::string s;
  for (double v : {r.t, r.e1, r.e2, r.sup_uux, r.sup_abs_uux, r.blowup_integrand,
                   r.blowup_cumulative, r.besov_rho_half, r.besov_u_threehalves,
                   r.spectral_tail_ratio}) {
    if (!s.empty()) s += ',';
    s += fmt17(v);
  }
  return s;
}

}  // namespace novikov2c::io
