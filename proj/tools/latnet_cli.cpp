#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latnet/sweep.hpp"

namespace {

using latnet::LatticeFamily;
using latnet::sweep::GridSpec;
using latnet::sweep::SweepTable;

LatticeFamily parse_family(const std::string& name) {
  if (name == "line") return LatticeFamily::line;
  if (name == "square") return LatticeFamily::square;
  if (name == "triangular") return LatticeFamily::triangular;
  throw CLI::ValidationError("--lattice", "expected line|square|triangular");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string s = text;
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(s);
  double v;
  while (in >> v) out.push_back(v);
  return out;
}

latnet::Vec2 parse_offset(const std::string& text) {
  const auto parts = parse_list(text);
  if (parts.empty() || parts.size() > 2) {
    throw CLI::ValidationError("--offset", "expected r[,theta]");
  }
  const double r = parts[0];
  const double theta = parts.size() == 2 ? parts[1] : 0.0;
  return {r * std::cos(theta), r * std::sin(theta)};
}

void parse_m_range(const std::string& text, int& lo, int& hi) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    lo = hi = std::stoi(text);
    return;
  }
  lo = std::stoi(text.substr(0, dots));
  hi = std::stoi(text.substr(dots + 2));
}

void emit(const SweepTable& table, const std::string& format, const std::string& out_path) {
  latnet::sweep::enforce_bound_consistency(table);
  std::ostringstream buf;
  if (format == "json") {
    latnet::sweep::write_json(table, buf);
  } else {
    latnet::sweep::write_csv(table, buf);
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << buf.str();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latnet: interference bounds and TDMA analysis for lattice networks"};
  app.require_subcommand(1);

  std::string lattice = "square";
  std::string alpha_text = "4";
  std::string m_text = "2..8";
  std::string scheme;
  std::string offset_text;
  std::string format = "csv";
  std::string out_path;
  std::string quantity;
  std::string variable;
  std::string grid_text;
  double truncation_radius = 0.0;
  double tolerance = 1e-6;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--lattice", lattice, "line|square|triangular");
    cmd->add_option("--alpha", alpha_text, "path loss exponent (comma list for sweeps)");
    cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--truncation-radius", truncation_radius, "oracle truncation radius");
    cmd->add_option("--tolerance", tolerance, "relative tolerance for adaptive oracles");
  };

  CLI::App* bounds = app.add_subcommand("bounds", "closed-form bounds vs the oracle");
  add_common(bounds);
  bounds->add_option("--offset", offset_text, "receiver offset r[,theta]");

  CLI::App* tdma = app.add_subcommand("tdma", "TDMA scheme comparison over m");
  add_common(tdma);
  tdma->add_option("--scheme", scheme, "scheme name (family specific)")->required();
  tdma->add_option("--m", m_text, "m value or range a..b");

  CLI::App* sweep = app.add_subcommand("sweep", "grid sweep to CSV/JSON");
  add_common(sweep);
  sweep->add_option("--quantity", quantity, "interference|bound|throughput|transport-capacity|offset-curve")
      ->required();
  sweep->add_option("--variable", variable, "sweep variable name");
  sweep->add_option("--grid", grid_text, "start..stop:step")->required();
  sweep->add_option("--scheme", scheme, "scheme name where applicable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    const LatticeFamily family = parse_family(lattice);
    const auto alphas = parse_list(alpha_text);
    if (alphas.empty()) throw std::invalid_argument("--alpha: expected a number");

    SweepTable table;
    if (bounds->parsed()) {
      latnet::Vec2 offset{0.0, 0.0};
      if (!offset_text.empty()) offset = parse_offset(offset_text);
      table = latnet::sweep::bounds_table(family, alphas.front(), offset, truncation_radius,
                                          tolerance);
    } else if (tdma->parsed()) {
      int m_lo = 2;
      int m_hi = 2;
      parse_m_range(m_text, m_lo, m_hi);
      table = latnet::sweep::tdma_table(family, alphas.front(), scheme, m_lo, m_hi);
    } else {
      table = latnet::sweep::sweep_table(quantity, variable, latnet::sweep::parse_grid(grid_text),
                                         family, alphas, scheme, truncation_radius);
    }
    emit(table, format, out_path);
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const latnet::construction_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
