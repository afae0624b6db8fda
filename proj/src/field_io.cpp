#include "csqs/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "csqs/errors.hpp"

namespace csqs::io {

namespace {

std::string meta_value_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

void flatten(const Meta& node, const std::string& prefix, std::ostream& os) {
  for (const auto& [key, value] : node.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, path, os);
    } else {
      os << "# " << path << '=' << meta_value_text(value) << '\n';
    }
  }
}

nlohmann::ordered_json parse_meta_value(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  if (text == "null") return nullptr;
  if (text == "nan") return std::nan("");
  char* end = nullptr;
  const double d = std::strtod(text.c_str(), &end);
  if (!text.empty() && end == text.c_str() + text.size()) {
    const bool integral = text.find_first_of(".eEn") == std::string::npos;
    if (integral) return static_cast<long long>(std::strtoll(text.c_str(), nullptr, 10));
    return d;
  }
  return text;
}

void set_path(Meta& meta, const std::string& path, nlohmann::ordered_json value) {
  Meta* node = &meta;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    if (dot == std::string::npos) {
      (*node)[path.substr(start)] = std::move(value);
      return;
    }
    node = &(*node)[path.substr(start, dot - start)];
    start = dot + 1;
  }
}

PhaseGrid grid_from_meta(const Meta& meta) {
  if (!meta.contains("grid")) throw InvalidParameters("field file has no grid metadata");
  const auto& g = meta.at("grid");
  PhaseGrid grid;
  grid.x_min = g.at("x_min").get<double>();
  grid.x_max = g.at("x_max").get<double>();
  grid.y_min = g.at("y_min").get<double>();
  grid.y_max = g.at("y_max").get<double>();
  grid.nx = g.at("nx").get<int>();
  grid.ny = g.at("ny").get<int>();
  grid.validate();
  return grid;
}

Meta field_meta(const WignerField& field, const Meta& meta) {
  Meta out = meta;
  out["grid"] = grid_meta(field.grid);
  out["total_integral"] = field.total_integral;
  out["abs_integral"] = field.abs_integral;
  out["negativity_volume"] = field.negative_integral;
  return out;
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

std::string optional_text(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Meta state_meta(const NormalizedCsqs& state) {
  Meta m;
  m["alpha_re"] = state.alpha().real();
  m["alpha_im"] = state.alpha().imag();
  m["t"] = state.t();
  m["r"] = state.r();
  m["N"] = state.n_const();
  return m;
}

Meta grid_meta(const PhaseGrid& grid) {
  Meta m;
  m["x_min"] = grid.x_min;
  m["x_max"] = grid.x_max;
  m["y_min"] = grid.y_min;
  m["y_max"] = grid.y_max;
  m["nx"] = grid.nx;
  m["ny"] = grid.ny;
  return m;
}

void write_csv_meta(std::ostream& os, const Meta& meta) { flatten(meta, "", os); }

void write_field_csv(std::ostream& os, const WignerField& field, const Meta& meta) {
  os << "# csqs-lab wigner field\n";
  write_csv_meta(os, field_meta(field, meta));
  os << "x,y,W\n";
  const PhaseGrid& g = field.grid;
  for (int i = 0; i < g.nx; ++i) {
    const std::string x = format_double(g.x(i));
    for (int j = 0; j < g.ny; ++j) {
      os << x << ',' << format_double(g.y(j)) << ',' << format_double(field.at(i, j)) << '\n';
    }
  }
}

void write_field_json(std::ostream& os, const WignerField& field, const Meta& meta) {
  nlohmann::ordered_json doc;
  doc["meta"] = field_meta(field, meta);
  const PhaseGrid& g = field.grid;
  auto xs = nlohmann::ordered_json::array();
  auto ys = nlohmann::ordered_json::array();
  for (int i = 0; i < g.nx; ++i) xs.push_back(g.x(i));
  for (int j = 0; j < g.ny; ++j) ys.push_back(g.y(j));
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < g.nx; ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int j = 0; j < g.ny; ++j) row.push_back(field.at(i, j));
    rows.push_back(std::move(row));
  }
  doc["data"] = {{"x", std::move(xs)}, {"y", std::move(ys)}, {"W", std::move(rows)}};
  os << doc.dump() << '\n';
}

LoadedField read_field_csv(std::istream& is) {
  Meta meta = Meta::object();
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.rfind("#", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      set_path(meta, key, parse_meta_value(line.substr(eq + 1)));
      continue;
    }
    if (line != "x,y,W") throw InvalidParameters("field CSV: expected column header x,y,W");
    header_seen = true;
    break;
  }
  if (!header_seen) throw InvalidParameters("field CSV: missing column header");
  const PhaseGrid grid = grid_from_meta(meta);
  std::vector<double> values;
  values.reserve(grid.size());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c2 = line.rfind(',');
    if (c2 == std::string::npos) throw InvalidParameters("field CSV: malformed row");
    values.push_back(std::strtod(line.c_str() + c2 + 1, nullptr));
  }
  if (values.size() != grid.size()) throw InvalidParameters("field CSV: row count does not match grid");
  return {meta, make_field(grid, std::move(values), 1)};
}

LoadedField read_field_json(std::istream& is) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameters(std::string("field JSON: ") + e.what());
  }
  if (!doc.contains("meta") || !doc.contains("data")) throw InvalidParameters("field JSON: missing meta/data");
  Meta meta = doc.at("meta");
  const PhaseGrid grid = grid_from_meta(meta);
  const auto& rows = doc.at("data").at("W");
  if (static_cast<int>(rows.size()) != grid.nx) throw InvalidParameters("field JSON: row count does not match grid");
  std::vector<double> values;
  values.reserve(grid.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != grid.ny) throw InvalidParameters("field JSON: column count does not match");
    for (const auto& v : row) values.push_back(v.get<double>());
  }
  return {meta, make_field(grid, std::move(values), 1)};
}

nlohmann::ordered_json report_to_json(const MeasureReport& report) {
  nlohmann::ordered_json j;
  j["name"] = std::string(to_string(report.name));
  j["closed_value"] = optional_number(report.closed_value);
  j["oracle_value"] = optional_number(report.oracle_value);
  j["delta"] = optional_number(report.delta);
  j["method_notes"] = report.method_notes;
  return j;
}

void write_reports_csv(std::ostream& os, std::span<const MeasureReport> reports, const Meta& meta) {
  os << "# csqs-lab measures\n";
  write_csv_meta(os, meta);
  os << "name,closed_value,oracle_value,delta,method_notes\n";
  for (const auto& r : reports) {
    os << to_string(r.name) << ',' << optional_text(r.closed_value) << ',' << optional_text(r.oracle_value) << ','
       << optional_text(r.delta) << ',' << csv_escape(r.method_notes) << '\n';
  }
}

void write_reports_json(std::ostream& os, std::span<const MeasureReport> reports, const Meta& meta) {
  nlohmann::ordered_json doc;
  doc["meta"] = meta;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  doc["data"] = std::move(arr);
  os << doc.dump(2) << '\n';
}

}  // namespace csqs::io
