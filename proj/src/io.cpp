#include "qca/io.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qca/errors.hpp"

namespace qca::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw validation_error(msg); }

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  return j.get<double>();
}

Vec2<double> require_vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where + ": expected [x, y]");
  return {require_number(j[0], where), require_number(j[1], where)};
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(where + ": unknown key '" + key + "'");
  }
}

FieldSpec<double> parse_field(const json& j) {
  if (!j.is_object()) fail("field: expected an object");
  if (j.contains("type") && !j["type"].is_string()) fail("field.type: expected a string");
  const std::string type = j.value("type", std::string{});
  if (type == "uniform") {
    reject_unknown_keys(j, {"type", "E"}, "field");
    if (!j.contains("E")) fail("field: uniform field needs E");
    return FieldSpec<double>::uniform(require_vec2(j["E"], "field.E"));
  }
  if (type == "regions") {
    reject_unknown_keys(j, {"type", "default_E", "regions"}, "field");
    Vec2<double> default_e = Vec2<double>::Zero();
    if (j.contains("default_E")) default_e = require_vec2(j["default_E"], "field.default_E");
    std::vector<FieldRegion<double>> regions;
    if (j.contains("regions")) {
      if (!j["regions"].is_array()) fail("field.regions: expected an array");
      for (std::size_t i = 0; i < j["regions"].size(); ++i) {
        const auto& r = j["regions"][i];
        const std::string where = "field region " + std::to_string(i + 1);
        reject_unknown_keys(r, {"rect", "E"}, where);
        if (!r.contains("rect") || !r["rect"].is_array() || r["rect"].size() != 4)
          fail(where + ": expected rect [x0, y0, x1, y1]");
        FieldRegion<double> region;
        region.rect.lo = {require_number(r["rect"][0], where), require_number(r["rect"][1], where)};
        region.rect.hi = {require_number(r["rect"][2], where), require_number(r["rect"][3], where)};
        if (!r.contains("E")) fail(where + ": needs E");
        region.field = require_vec2(r["E"], where + ".E");
        regions.push_back(region);
      }
    }
    return FieldSpec<double>::regions(std::move(regions), default_e);
  }
  fail("field.type must be 'uniform' or 'regions'");
}

}  // namespace

ParsedCircuit parse_circuit(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    fail("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
         ": " + e.what());
  }
  if (!doc.is_object()) fail("document: expected a JSON object");
  reject_unknown_keys(doc, {"constants", "cells", "drivers", "field"}, "document");

  PhysicalConstants<double> constants;
  if (doc.contains("constants")) {
    const auto& c = doc["constants"];
    if (!c.is_object()) fail("constants: expected an object");
    reject_unknown_keys(c, {"coulomb_scale", "epsilon_r"}, "constants");
    if (c.contains("coulomb_scale"))
      constants.coulomb_energy_scale = require_number(c["coulomb_scale"], "constants.coulomb_scale");
    if (c.contains("epsilon_r")) {
      const double er = require_number(c["epsilon_r"], "constants.epsilon_r");
      if (!(er >= 1)) fail("constants.epsilon_r must be >= 1");
      constants.coulomb_energy_scale /= er;
    }
    if (!(constants.coulomb_energy_scale > 0)) fail("constants.coulomb_scale must be positive");
  }

  if (!doc.contains("cells") || !doc["cells"].is_array() || doc["cells"].empty())
    fail("document: needs a non-empty 'cells' array");
  std::vector<Cell<double>> cells;
  for (std::size_t i = 0; i < doc["cells"].size(); ++i) {
    const auto& c = doc["cells"][i];
    const std::string where = "cell " + std::to_string(i + 1);
    if (!c.is_object()) fail(where + ": expected an object");
    reject_unknown_keys(c, {"center", "axis", "a", "gamma"}, where);
    Cell<double> cell;
    if (!c.contains("center")) fail(where + ": needs center [x, y]");
    cell.center = require_vec2(c["center"], where + ".center");
    if (c.contains("axis")) cell.axis = require_vec2(c["axis"], where + ".axis");
    if (c.contains("a")) cell.dot_separation = require_number(c["a"], where + ".a");
    if (c.contains("gamma")) cell.gamma = require_number(c["gamma"], where + ".gamma");
    cells.push_back(cell);
  }

  std::vector<DriverCell<double>> drivers;
  if (doc.contains("drivers")) {
    if (!doc["drivers"].is_array()) fail("drivers: expected an array");
    for (std::size_t i = 0; i < doc["drivers"].size(); ++i) {
      const auto& d = doc["drivers"][i];
      const std::string where = "driver " + std::to_string(i + 1);
      if (!d.is_object()) fail(where + ": expected an object");
      reject_unknown_keys(d, {"center", "axis", "a", "polarization"}, where);
      DriverCell<double> driver;
      if (!d.contains("center")) fail(where + ": needs center [x, y]");
      driver.center = require_vec2(d["center"], where + ".center");
      if (d.contains("axis")) driver.axis = require_vec2(d["axis"], where + ".axis");
      if (d.contains("a")) driver.dot_separation = require_number(d["a"], where + ".a");
      if (!d.contains("polarization")) fail(where + ": needs polarization");
      driver.polarization = require_number(d["polarization"], where + ".polarization");
      drivers.push_back(driver);
    }
  }

  FieldSpec<double> field = FieldSpec<double>::uniform({0, 0});
  if (doc.contains("field")) field = parse_field(doc["field"]);

  return {Circuit<double>(std::move(cells), std::move(drivers), constants), std::move(field)};
}

std::string render_circuit(const Circuit<double>& circuit, const FieldSpec<double>& field) {
  json doc;
  doc["constants"] = {{"coulomb_scale", circuit.constants().coulomb_energy_scale}};
  doc["cells"] = json::array();
  for (const auto& c : circuit.cells())
    doc["cells"].push_back({{"center", {c.center.x(), c.center.y()}},
                            {"axis", {c.axis.x(), c.axis.y()}},
                            {"a", c.dot_separation},
                            {"gamma", c.gamma}});
  if (!circuit.drivers().empty()) {
    doc["drivers"] = json::array();
    for (const auto& d : circuit.drivers())
      doc["drivers"].push_back({{"center", {d.center.x(), d.center.y()}},
                                {"axis", {d.axis.x(), d.axis.y()}},
                                {"a", d.dot_separation},
                                {"polarization", d.polarization}});
  }
  if (field.is_uniform()) {
    doc["field"] = {{"type", "uniform"},
                    {"E", {field.default_field().x(), field.default_field().y()}}};
  } else {
    json regions = json::array();
    for (const auto& r : field.field_regions())
      regions.push_back(
          {{"rect", {r.rect.lo.x(), r.rect.lo.y(), r.rect.hi.x(), r.rect.hi.y()}},
           {"E", {r.field.x(), r.field.y()}}});
    doc["field"] = {{"type", "regions"},
                    {"default_E", {field.default_field().x(), field.default_field().y()}},
                    {"regions", std::move(regions)}};
  }
  return doc.dump(2) + "\n";
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "param";
  for (Index k = 1; k <= result.n_cells; ++k) out << ",P_" << k;
  out << ",energy_eV,gap_eV,degenerate\n";
  for (const auto& row : result.rows) {
    out << csv_number(row.param);
    for (Index k = 0; k < result.n_cells; ++k) out << ',' << csv_number(row.polarizations(k));
    out << ',' << csv_number(row.energy) << ',' << csv_number(row.gap) << ','
        << (row.degenerate ? 1 : 0) << '\n';
  }
}

void write_scenario_csv(std::ostream& out, const ScenarioResult& result) {
  if (!result.levels.empty()) {
    out << "param,E_00_eV,E_01_eV,E_10_eV,E_11_eV\n";
    for (const auto& row : result.levels)
      out << csv_number(row.param) << ',' << csv_number(row.e00) << ',' << csv_number(row.e01)
          << ',' << csv_number(row.e10) << ',' << csv_number(row.e11) << '\n';
    return;
  }
  for (const auto& series : result.series) {
    if (!series.label.empty()) out << "# series: " << series.label << '\n';
    write_sweep_csv(out, series.sweep);
  }
}

}  // namespace qca::io
