#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qca/qca.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qca::validation_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw qca::validation_error("cannot open output file: " + out_path);
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"Simulator for electric-field bit write-in to two-dot QCA circuits"};
  app.require_subcommand(1);

  std::string circuit_path, out_path, param = "Ey", scenario_name;
  double from = 0, to = 0, gap_nm = 10;
  qca::Index steps = 0;
  double levels_a = 1, levels_spacing = 1, levels_ey = 0;

  auto* sim = app.add_subcommand("sim", "one ground-state solve; prints P_k, energy, gap");
  sim->add_option("-c,--circuit", circuit_path, "circuit document (JSON)")->required();

  auto* sweep = app.add_subcommand("sweep", "parameter sweep, CSV output");
  sweep->add_option("-c,--circuit", circuit_path, "circuit document (JSON)")->required();
  sweep->add_option("--param", param, "one of Ey, Ex, vin, Pdrv")->required();
  sweep->add_option("--from", from, "first parameter value")->required();
  sweep->add_option("--to", to, "last parameter value")->required();
  sweep->add_option("--steps", steps, "number of rows (>= 2)")->required();
  sweep->add_option("--d", gap_nm, "electrode gap d in nm (vin sweeps)");
  sweep->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* scen = app.add_subcommand("scenario", "run a named experiment, CSV output");
  scen->add_option("name", scenario_name, "scenario name")->required();
  scen->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* oracle = app.add_subcommand("oracle", "classical spectrum and argmin states, CSV output");
  oracle->add_option("-c,--circuit", circuit_path, "circuit document (JSON)")->required();
  oracle->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* levels = app.add_subcommand("levels", "classical two-cell level energies");
  levels->add_option("--a", levels_a, "dot separation a in nm");
  levels->add_option("--spacing", levels_spacing, "center spacing in nm");
  levels->add_option("--Ey", levels_ey, "field strength in V/nm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (sim->parsed()) {
      const auto parsed = qca::io::parse_circuit(read_file(circuit_path));
      const auto rep = qca::build(parsed.circuit, parsed.field);
      const auto gs = qca::ground_state(rep);
      if (!gs.warning.empty()) std::cerr << "warning: " << gs.warning << "\n";
      std::cout << "cells: " << parsed.circuit.n_cells() << "\n";
      std::cout << "energy_eV: " << qca::io::csv_number(gs.energy) << "\n";
      std::cout << "gap_eV: " << qca::io::csv_number(gs.gap) << "\n";
      std::cout << "degenerate: " << (gs.degenerate ? 1 : 0) << "\n";
      for (qca::Index k = 0; k < parsed.circuit.n_cells(); ++k)
        std::cout << "P_" << (k + 1) << ": " << qca::io::csv_number(gs.polarizations(k)) << "\n";
    } else if (sweep->parsed()) {
      qca::SweepParameter p;
      if (param == "Ey")
        p = qca::SweepParameter::ey;
      else if (param == "Ex")
        p = qca::SweepParameter::ex;
      else if (param == "vin")
        p = qca::SweepParameter::vin;
      else if (param == "Pdrv")
        p = qca::SweepParameter::pdrv;
      else
        throw qca::validation_error("--param must be one of Ey, Ex, vin, Pdrv");
      const auto parsed = qca::io::parse_circuit(read_file(circuit_path));
      qca::SweepSpec spec{p, from, to, steps, parsed.circuit, parsed.field};
      spec.electrode_gap = gap_nm;
      const auto result = qca::run_sweep(spec);
      std::ostringstream csv;
      qca::io::write_sweep_csv(csv, result);
      emit(csv.str(), out_path);
    } else if (scen->parsed()) {
      const auto result = qca::scenario(scenario_name);
      std::ostringstream csv;
      qca::io::write_scenario_csv(csv, result);
      emit(csv.str(), out_path);
    } else if (oracle->parsed()) {
      const auto parsed = qca::io::parse_circuit(read_file(circuit_path));
      const auto spectrum = qca::classical_enumerate(parsed.circuit, parsed.field);
      std::ostringstream csv;
      csv << "p,state,energy_eV,is_argmin\n";
      for (qca::Index p = 0; p < spectrum.energies.size(); ++p) {
        std::string state;  // m_N ... m_1, matching the ket labels
        for (qca::Index k = parsed.circuit.n_cells() - 1; k >= 0; --k)
          state += char('0' + ((p >> k) & 1));
        const bool is_min =
            std::find(spectrum.argmin_all.begin(), spectrum.argmin_all.end(), p) !=
            spectrum.argmin_all.end();
        csv << p << ',' << state << ',' << qca::io::csv_number(spectrum.energies(p)) << ','
            << (is_min ? 1 : 0) << '\n';
      }
      emit(csv.str(), out_path);
      if (spectrum.min_degenerate)
        std::cerr << "note: classical minimum is degenerate over " << spectrum.argmin_all.size()
                  << " states\n";
    } else if (levels->parsed()) {
      const auto lv = qca::classical_levels_n2<double>(levels_a, levels_spacing, levels_ey);
      std::cout << "E_00_eV,E_01_eV,E_10_eV,E_11_eV\n"
                << qca::io::csv_number(lv.e00) << ',' << qca::io::csv_number(lv.e01) << ','
                << qca::io::csv_number(lv.e10) << ',' << qca::io::csv_number(lv.e11) << "\n";
    }
  } catch (const qca::solver_error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const qca::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
