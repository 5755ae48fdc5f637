#include "latnet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "latnet/bounds.hpp"
#include "latnet/line_net.hpp"
#include "latnet/square_net.hpp"
#include "latnet/tri_net.hpp"

namespace latnet::sweep {

namespace {

double cell_number(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return *d;
  return std::nan("");
}

std::string family_name(LatticeFamily f) {
  switch (f) {
    case LatticeFamily::line: return "line";
    case LatticeFamily::square: return "square";
    case LatticeFamily::triangular: return "triangular";
    default: return "custom";
  }
}

int find_column(const SweepTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

double default_radius(double r) { return r > 0.0 ? r : 300.0; }

}  // namespace

void SweepTable::add_meta(std::string key, std::string value) {
  metadata.emplace_back(std::move(key), std::move(value));
}

void SweepTable::validate() const {
  for (const auto& row : rows) {
    if (row.size() != columns.size()) {
      throw std::logic_error("SweepTable: ragged row");
    }
    for (const auto& cell : row) {
      if (const double* d = std::get_if<double>(&cell)) {
        if (std::isnan(*d)) throw std::logic_error("SweepTable: NaN cell");
      }
    }
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const SweepTable& table, std::ostream& os) {
  table.validate();
  for (const auto& [k, v] : table.metadata) {
    os << "# " << k << "=" << v << "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      if (const double* d = std::get_if<double>(&row[i])) {
        os << format_double(*d);
      } else {
        os << std::get<std::string>(row[i]);
      }
    }
    os << "\n";
  }
}

void write_json(const SweepTable& table, std::ostream& os) {
  table.validate();
  nlohmann::ordered_json j;
  auto& meta = j["metadata"];
  for (const auto& [k, v] : table.metadata) meta[k] = v;
  j["columns"] = table.columns;
  auto& rows = j["rows"];
  rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const double* d = std::get_if<double>(&cell)) {
        jr.push_back(*d);
      } else {
        jr.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(jr));
  }
  os << j.dump(2) << "\n";
}

std::vector<double> GridSpec::values() const {
  std::vector<double> out;
  if (!(step > 0.0)) throw std::invalid_argument("grid: require positive step");
  const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9));
  out.reserve(static_cast<std::size_t>(std::max(0, n)) + 1);
  for (int i = 0; i <= n; ++i) out.push_back(start + i * step);
  return out;
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  std::string s = text;
  const auto dots = s.find("..");
  if (dots != std::string::npos) s.replace(dots, 2, ":");
  std::replace(s.begin(), s.end(), ':', ' ');
  std::istringstream in(s);
  std::vector<double> parts;
  double v;
  while (in >> v) parts.push_back(v);
  if (parts.size() == 1) {
    g.start = g.stop = parts[0];
    g.step = 1.0;
  } else if (parts.size() == 2) {
    g.start = parts[0];
    g.stop = parts[1];
    g.step = (g.stop - g.start) / 50.0;
  } else if (parts.size() == 3) {
    g.start = parts[0];
    g.stop = parts[1];
    g.step = parts[2];
  } else {
    throw std::invalid_argument("grid: expected start..stop:step");
  }
  return g;
}

SweepTable bounds_table(LatticeFamily family, double alpha, Vec2 offset,
                        double truncation_radius, double rel_tol) {
  SweepTable t;
  t.columns = {"name", "value", "kind", "oracle_lo", "oracle_hi", "rel_gap"};
  t.add_meta("command", "bounds");
  t.add_meta("lattice", family_name(family));
  t.add_meta("alpha", format_double(alpha));
  t.add_meta("offset", format_double(offset.norm()));

  auto push = [&](const std::string& name, double value, const std::string& kind,
                  const BoundedValue& oracle) {
    const double gap = (value - oracle.value) / oracle.value;
    t.rows.push_back({name, value, kind, oracle.lo, oracle.hi, gap});
  };

  if (family == LatticeFamily::line) {
    const double zn = offset.norm();
    const double exact = line_net::line_interference(alpha, zn);
    BoundedValue oracle;
    oracle.kind = BoundKind::bracketed;
    oracle.value = exact;
    oracle.lo = exact - 1e-11;
    oracle.hi = exact + 1e-11;
    push("lower_closed", line_net::line_interference_lower(alpha, zn), "lower", oracle);
    push("exact_zeta", exact, "exact", oracle);
    push("upper_closed", line_net::line_interference_upper(alpha, zn), "upper", oracle);
    return t;
  }

  InterferenceQuery q;
  q.lattice = family == LatticeFamily::square ? Lattice::square() : Lattice::triangular();
  q.loss.alpha = alpha;
  q.offset = offset;
  const BoundedValue oracle =
      truncation_radius > 0.0
          ? interference_oracle(q, truncation_radius)
          : interference_oracle_auto(q, rel_tol > 0.0 ? rel_tol : 1e-6);

  if (family == LatticeFamily::square) {
    if (offset.norm() == 0.0) {
      push("lower_simple_c", square_net::square_lower(alpha, square_net::LowerVariant::simple_c),
           "lower", oracle);
      push("lower_sharp_c", square_net::square_lower(alpha, square_net::LowerVariant::sharp_c),
           "lower", oracle);
      push("lower_closed_form",
           square_net::square_lower(alpha, square_net::LowerVariant::closed_form), "lower",
           oracle);
      push("exact_zeta_beta", square_net::square_exact(alpha), "exact", oracle);
      push("oracle", oracle.value, "bracketed", oracle);
      push("upper_rectangle", square_net::square_upper(alpha, square_net::UpperVariant::rectangle),
           "upper", oracle);
      push("upper_radial_3_sqrt2",
           square_net::square_upper(alpha, square_net::UpperVariant::radial_3_sqrt2), "upper",
           oracle);
      push("upper_radial_3_2",
           square_net::square_upper(alpha, square_net::UpperVariant::radial_3_2), "upper",
           oracle);
    } else {
      q.near_radius = 1.5;
      push("oracle", oracle.value, "bracketed", oracle);
      push("upper_radial_3_2", radial_upper_bound(q).value, "upper", oracle);
    }
  } else {
    if (offset.norm() == 0.0) {
      push("lower_closed_form", tri_net::tri_lower(alpha), "lower", oracle);
      push("oracle", oracle.value, "bracketed", oracle);
      push("upper_near18", tri_net::tri_upper(alpha, tri_net::UpperVariant::near18), "upper",
           oracle);
      push("upper_near6", tri_net::tri_upper(alpha, tri_net::UpperVariant::near6), "upper",
           oracle);
    } else {
      const double quad = tri_net::tri_lower(alpha) + 1.5 * alpha * alpha * offset.norm_sq();
      // the quadratic form is a certified lower bound only for r <= 0.45
      push("lower_quadratic", quad, offset.norm() <= 0.45 ? "lower" : "approximation", oracle);
      push("oracle", oracle.value, "bracketed", oracle);
      q.near_radius = std::sqrt(13.0 / 3.0);
      push("upper_radial_near18", radial_upper_bound(q).value, "upper", oracle);
    }
  }
  return t;
}

SweepTable tdma_table(LatticeFamily family, double alpha, const std::string& scheme,
                      int m_lo, int m_hi) {
  if (m_lo < 2 || m_hi < m_lo) throw std::invalid_argument("tdma: bad m range");
  SweepTable t;
  t.add_meta("command", "tdma");
  t.add_meta("lattice", family_name(family));
  t.add_meta("alpha", format_double(alpha));
  t.add_meta("scheme", scheme);
  t.add_meta("m", format_double(m_lo) + ".." + format_double(m_hi));

  if (family == LatticeFamily::line) {
    const bool balanced = scheme == "balanced";
    if (!balanced && scheme != "unidirectional") {
      throw std::invalid_argument("tdma: line schemes are unidirectional|balanced");
    }
    t.columns = {"m",         "interference", "lower_closed", "upper_closed",
                 "rate",      "throughput",   "approx_rate",  "norm_m_alpha"};
    for (int m = m_lo; m <= m_hi; ++m) {
      const auto r = balanced ? line_net::tdma_balanced(alpha, m)
                              : line_net::tdma_unidirectional(alpha, m);
      t.rows.push_back({static_cast<double>(m), r.interference.value, r.lower_bound,
                        r.upper_bound, r.rate, r.throughput, r.approx_rate,
                        std::pow(m, alpha) * r.interference.value});
    }
    return t;
  }

  if (family == LatticeFamily::square) {
    const bool want_simple = scheme == "simple" || scheme == "simple+balanced";
    const bool want_balanced = scheme == "balanced" || scheme == "simple+balanced";
    if (!want_simple && !want_balanced) {
      throw std::invalid_argument("tdma: square schemes are simple|balanced|simple+balanced");
    }
    t.columns = {"m"};
    if (want_simple) {
      t.columns.insert(t.columns.end(),
                       {"simple_interference", "simple_radial_upper", "simple_norm"});
    }
    if (want_balanced) {
      t.columns.insert(t.columns.end(),
                       {"balanced_interference", "balanced_radial_upper", "balanced_norm"});
    }
    for (int m = m_lo; m <= m_hi; ++m) {
      std::vector<Cell> row{static_cast<double>(m)};
      const double norm = std::pow(m, alpha);
      if (want_simple) {
        const auto s = square_net::square_tdma_simple(alpha, m);
        row.insert(row.end(), {s.interference.value, s.radial_bound,
                               norm * s.interference.value});
      }
      if (want_balanced) {
        const auto b = square_net::square_tdma_balanced(alpha, m);
        row.insert(row.end(), {b.interference.value, b.radial_bound,
                               norm * b.interference.value});
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  }

  // triangular
  std::vector<tri_net::TriTdmaKind> kinds;
  if (scheme == "rhombus") kinds = {tri_net::TriTdmaKind::rhombus};
  else if (scheme == "parallelogram") kinds = {tri_net::TriTdmaKind::parallelogram};
  else if (scheme == "balanced") kinds = {tri_net::TriTdmaKind::balanced_rows};
  else if (scheme == "all")
    kinds = {tri_net::TriTdmaKind::rhombus, tri_net::TriTdmaKind::parallelogram,
             tri_net::TriTdmaKind::balanced_rows};
  else
    throw std::invalid_argument("tdma: triangular schemes are rhombus|parallelogram|balanced|all");

  t.columns = {"m", "scheme", "cell_area", "interference", "normalized"};
  for (int m = m_lo; m <= m_hi; ++m) {
    for (auto kind : kinds) {
      const auto r = tri_net::tri_tdma(alpha, {kind, m});
      const char* name = kind == tri_net::TriTdmaKind::rhombus
                             ? "rhombus"
                             : (kind == tri_net::TriTdmaKind::parallelogram ? "parallelogram"
                                                                            : "balanced");
      t.rows.push_back({static_cast<double>(m), std::string(name), 1.0 / r.density,
                        r.interference.value, r.normalized});
    }
  }
  return t;
}

SweepTable sweep_table(const std::string& quantity, const std::string& variable,
                       const GridSpec& grid, LatticeFamily family,
                       const std::vector<double>& alphas, const std::string& scheme,
                       double truncation_radius) {
  SweepTable t;
  t.add_meta("command", "sweep");
  t.add_meta("quantity", quantity);
  t.add_meta("variable", variable);
  t.add_meta("grid", format_double(grid.start) + ".." + format_double(grid.stop) + ":" +
                         format_double(grid.step));
  t.add_meta("lattice", family_name(family));
  {
    std::string joined;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      joined += (i ? "," : "") + format_double(alphas[i]);
    }
    t.add_meta("alpha", joined);
  }

  const double R = default_radius(truncation_radius);
  const auto values = grid.values();

  if (quantity == "transport-capacity") {
    if (alphas.empty()) throw std::invalid_argument("sweep: transport-capacity needs --alpha");
    const double alpha = alphas.front();
    t.columns = {"z", "rate", "transport_capacity"};
    for (double z : values) {
      const double rate = line_net::transport_capacity(alpha, z) / z;
      t.rows.push_back({z, rate, line_net::transport_capacity(alpha, z)});
    }
    return t;
  }

  if (quantity == "throughput") {
    if (family != LatticeFamily::line) {
      throw std::invalid_argument("sweep: throughput is a line-network quantity");
    }
    if (alphas.empty()) throw std::invalid_argument("sweep: throughput needs --alpha");
    const double alpha = alphas.front();
    const bool balanced = scheme != "unidirectional";
    t.columns = {"m", "throughput", "approx_throughput"};
    for (double mv : values) {
      const int m = static_cast<int>(std::lround(mv));
      const auto r = balanced ? line_net::tdma_balanced(alpha, m)
                              : line_net::tdma_unidirectional(alpha, m);
      t.rows.push_back({static_cast<double>(m), r.throughput, r.approx_rate / m});
    }
    return t;
  }

  if (quantity == "offset-curve") {
    if (alphas.empty()) throw std::invalid_argument("sweep: offset-curve needs --alpha");
    t.columns = {"r"};
    for (double a : alphas) {
      t.columns.push_back("I_alpha_" + format_double(a));
      t.columns.push_back("bound_alpha_" + format_double(a));
    }
    std::vector<Vec2> offsets;
    offsets.reserve(values.size());
    for (double r : values) offsets.push_back({r, 0.0});

    std::vector<std::vector<Cell>> rows(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) rows[i] = {values[i]};
    for (double a : alphas) {
      if (family == LatticeFamily::line) {
        for (std::size_t i = 0; i < values.size(); ++i) {
          rows[i].push_back(line_net::line_interference(a, values[i]));
          rows[i].push_back(line_net::line_interference_upper(a, values[i]));
        }
      } else {
        const Lattice lat = family == LatticeFamily::square ? Lattice::square()
                                                            : Lattice::triangular();
        const auto profile = interference_profile(lat, a, offsets, R);
        for (std::size_t i = 0; i < values.size(); ++i) {
          rows[i].push_back(profile[i].value);
          double curve;
          if (family == LatticeFamily::triangular) {
            curve = tri_net::tri_lower(a) + 1.5 * a * a * values[i] * values[i];
          } else {
            const auto e = square_net::square_offset_expansion(a, square_net::Direction::axial);
            const double c = e.c_ex_full > 0.0 ? e.c_ex_full : e.c8;
            curve = e.near8_base + c * values[i] * values[i];
          }
          rows[i].push_back(curve);
        }
      }
    }
    t.rows = std::move(rows);
    return t;
  }

  if (quantity == "interference" || quantity == "bound" || quantity == "interference+bounds") {
    const bool with_bounds = quantity != "interference";
    if (variable != "alpha") {
      throw std::invalid_argument("sweep: interference/bound sweeps vary alpha");
    }
    t.columns = {"alpha", "oracle_lo", "oracle", "oracle_hi"};
    if (with_bounds) {
      if (family == LatticeFamily::square) {
        t.columns.insert(t.columns.end(), {"lower_closed_form", "upper_radial_3_sqrt2"});
      } else if (family == LatticeFamily::triangular) {
        t.columns.insert(t.columns.end(), {"lower_closed_form", "upper_near18"});
      } else {
        t.columns.insert(t.columns.end(), {"lower_closed", "upper_closed"});
      }
    }
    for (double a : values) {
      std::vector<Cell> row;
      if (family == LatticeFamily::line) {
        const double exact = line_net::line_interference(a, 0.0);
        row = {a, exact - 1e-11, exact, exact + 1e-11};
        if (with_bounds) {
          row.push_back(line_net::line_interference_lower(a, 0.0));
          row.push_back(line_net::line_interference_upper(a, 0.0));
        }
      } else {
        InterferenceQuery q;
        q.lattice = family == LatticeFamily::square ? Lattice::square()
                                                    : Lattice::triangular();
        q.loss.alpha = a;
        const auto oracle = interference_oracle(q, R);
        row = {a, oracle.lo, oracle.value, oracle.hi};
        if (with_bounds) {
          if (family == LatticeFamily::square) {
            row.push_back(square_net::square_lower(a, square_net::LowerVariant::closed_form));
            row.push_back(square_net::square_upper(a, square_net::UpperVariant::radial_3_sqrt2));
          } else {
            row.push_back(tri_net::tri_lower(a));
            row.push_back(tri_net::tri_upper(a, tri_net::UpperVariant::near18));
          }
        }
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  }

  throw std::invalid_argument(
      "sweep: unknown quantity '" + quantity +
      "'; valid: interference, bound, interference+bounds, throughput, transport-capacity, "
      "offset-curve");
}

void enforce_bound_consistency(const SweepTable& table) {
  table.validate();
  const int kind_col = find_column(table, "kind");
  const int lo_col = find_column(table, "oracle_lo");
  const int hi_col = find_column(table, "oracle_hi");
  const int value_col = find_column(table, "value");
  if (kind_col >= 0 && lo_col >= 0 && hi_col >= 0 && value_col >= 0) {
    for (const auto& row : table.rows) {
      const std::string kind = std::get<std::string>(row[static_cast<std::size_t>(kind_col)]);
      const double v = cell_number(row[static_cast<std::size_t>(value_col)]);
      const double lo = cell_number(row[static_cast<std::size_t>(lo_col)]);
      const double hi = cell_number(row[static_cast<std::size_t>(hi_col)]);
      const double slack = 1e-9 * std::max(1.0, std::fabs(v));
      if (kind == "upper" && v < lo - slack) {
        throw std::logic_error("bound consistency: upper bound below the oracle bracket");
      }
      if (kind == "lower" && v > hi + slack) {
        throw std::logic_error("bound consistency: lower bound above the oracle bracket");
      }
    }
    return;
  }
  // column-name based checks for sweep tables
  const int slo = find_column(table, "oracle_lo");
  const int shi = find_column(table, "oracle_hi");
  if (slo < 0 || shi < 0) return;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const std::string& name = table.columns[c];
    const bool upper = name.find("upper") != std::string::npos;
    const bool lower = name.find("lower") != std::string::npos;
    if (!upper && !lower) continue;
    for (const auto& row : table.rows) {
      const double v = cell_number(row[c]);
      const double lo = cell_number(row[static_cast<std::size_t>(slo)]);
      const double hi = cell_number(row[static_cast<std::size_t>(shi)]);
      const double slack = 1e-9 * std::max(1.0, std::fabs(v));
      if (upper && v < lo - slack) {
        throw std::logic_error("bound consistency: upper bound below the oracle bracket");
      }
      if (lower && v > hi + slack) {
        throw std::logic_error("bound consistency: lower bound above the oracle bracket");
      }
    }
  }
}

}  // namespace latnet::sweep
