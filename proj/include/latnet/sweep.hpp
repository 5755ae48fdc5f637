#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "latnet/core.hpp"

namespace latnet::sweep {

using Cell = std::variant<double, std::string>;

// Ordered tabular result for CSV/JSON emission. Metadata preserves insertion
// order so repeated runs are byte-identical.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_meta(std::string key, std::string value);
  // Throws std::logic_error on NaN cells or ragged rows.
  void validate() const;
};

// 17-significant-digit decimal rendering used by both writers.
std::string format_double(double v);

void write_csv(const SweepTable& table, std::ostream& os);
void write_json(const SweepTable& table, std::ostream& os);

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

// "a..b:step" or "a:b:step"; a bare number is a single-point grid.
GridSpec parse_grid(const std::string& text);

// One row per bound variant: name, value, kind, oracle value, relative gap.
// A positive truncation radius fixes the oracle cutoff; otherwise the cutoff
// adapts until the bracket width is below rel_tol (default 1e-6).
SweepTable bounds_table(LatticeFamily family, double alpha, Vec2 offset,
                        double truncation_radius = 0.0, double rel_tol = 1e-6);

// Per-m rows with interference bracket, closed-form bounds, rate/throughput
// (1-D) and the figure normalization column.
SweepTable tdma_table(LatticeFamily family, double alpha, const std::string& scheme,
                      int m_lo, int m_hi);

// Generic figure-data emitter. Quantities: interference, bound (alias
// interference+bounds), throughput, transport-capacity, offset-curve.
SweepTable sweep_table(const std::string& quantity, const std::string& variable,
                       const GridSpec& grid, LatticeFamily family,
                       const std::vector<double>& alphas, const std::string& scheme,
                       double truncation_radius = 0.0);

// Kind-consistency gate run before writing: every upper bound must be >=
// the oracle bracket floor and every lower bound <= the bracket ceiling.
// Throws std::logic_error (CLI exit code 4) on violation.
void enforce_bound_consistency(const SweepTable& table);

}  // namespace latnet::sweep
