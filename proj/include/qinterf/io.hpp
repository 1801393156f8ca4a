#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qinterf/detection.hpp"
#include "qinterf/field.hpp"
#include "qinterf/synthesis.hpp"

namespace qinterf {

/// Shortest-round-trip-safe formatting; used everywhere numbers are emitted
/// so identical inputs produce byte-identical files.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Dataset files: `# qinterf-dataset v1 dim=<d> n=<N> seed=<seed>`, then one
// tab-separated row per point, optional final integer label column.

inline void write_dataset(std::ostream& os, const Dataset& ds) {
  if (ds.points.empty()) throw ConfigError("write_dataset: empty dataset");
  os << "# qinterf-dataset v1 dim=" << ds.dim() << " n=" << ds.size()
     << " seed=" << ds.seed << "\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (int a = 0; a < ds.dim(); ++a) {
      if (a) os << '\t';
      os << fmt_double(ds.points[i][a]);
    }
    if (ds.labels) os << '\t' << (*ds.labels)[i];
    os << "\n";
  }
}

inline Dataset read_dataset(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    throw ConfigError("read_dataset: empty input");
  int dim = 0;
  std::size_t n = 0;
  unsigned long long seed = 0;
  if (std::sscanf(header.c_str(), "# qinterf-dataset v1 dim=%d n=%zu seed=%llu",
                  &dim, &n, &seed) != 3)
    throw ConfigError("read_dataset: bad header: " + header);
  if (dim < 1) throw ConfigError("read_dataset: bad dim");
  Dataset ds;
  ds.seed = seed;
  std::vector<int> labels;
  bool has_labels = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Vector p(dim);
    for (int a = 0; a < dim; ++a)
      if (!(ls >> p[a])) throw ConfigError("read_dataset: short row: " + line);
    ds.points.push_back(std::move(p));
    int lbl;
    if (ls >> lbl) {
      has_labels = true;
      labels.push_back(lbl);
    } else if (has_labels) {
      throw ConfigError("read_dataset: inconsistent label column");
    }
  }
  if (ds.points.size() != n)
    throw ConfigError("read_dataset: row count does not match header");
  if (has_labels) {
    if (labels.size() != ds.points.size())
      throw ConfigError("read_dataset: inconsistent label column");
    ds.labels = std::move(labels);
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Field files: `# qinterf-field v1 kind=<kind> dim=<d>`, then one row per
// node in row-major order: coordinates, then value (real) or real and
// imaginary parts (amplitude), tab-separated.

inline void write_field(std::ostream& os, const DensityField& f,
                        const std::string& kind) {
  os << "# qinterf-field v1 kind=" << kind << " dim=" << f.grid.dim() << "\n";
  for (std::size_t n = 0; n < f.values.size(); ++n) {
    const Vector y = f.grid.node(n);
    for (int a = 0; a < f.grid.dim(); ++a) os << fmt_double(y[a]) << '\t';
    os << fmt_double(f.values[n]) << "\n";
  }
}

inline void write_field(std::ostream& os, const AmplitudeField& f) {
  os << "# qinterf-field v1 kind=amplitude dim=" << f.grid.dim() << "\n";
  for (std::size_t n = 0; n < f.values.size(); ++n) {
    const Vector y = f.grid.node(n);
    for (int a = 0; a < f.grid.dim(); ++a) os << fmt_double(y[a]) << '\t';
    os << fmt_double(f.values[n].real()) << '\t'
       << fmt_double(f.values[n].imag()) << "\n";
  }
}

namespace detail {

inline EvaluationGrid grid_from_rows(const std::vector<std::vector<double>>& coords,
                                     int dim) {
  if (coords.empty()) throw ConfigError("read_field: no rows");
  std::vector<GridAxis> axes;
  if (dim == 1) {
    axes.push_back(GridAxis{coords.front()[0], coords.back()[0],
                            static_cast<int>(coords.size()) - 1});
  } else {
    // row-major, axis 1 fastest: axis-0 coordinate first changes at row n1
    std::size_t n1 = coords.size();
    for (std::size_t r = 1; r < coords.size(); ++r) {
      if (coords[r][0] != coords[0][0]) {
        n1 = r;
        break;
      }
    }
    if (n1 < 3 || coords.size() % n1 != 0)
      throw ConfigError("read_field: rows do not form a 2D grid");
    const std::size_t n0 = coords.size() / n1;
    if (n0 < 3) throw ConfigError("read_field: rows do not form a 2D grid");
    axes.push_back(GridAxis{coords.front()[0], coords.back()[0],
                            static_cast<int>(n0) - 1});
    axes.push_back(GridAxis{coords.front()[1], coords[n1 - 1][1],
                            static_cast<int>(n1) - 1});
  }
  EvaluationGrid grid(axes);
  // verify the node coordinates actually match the inferred uniform grid
  for (std::size_t n = 0; n < coords.size(); ++n) {
    const Vector y = grid.node(n);
    for (int a = 0; a < dim; ++a) {
      const double scale = std::max(1.0, std::abs(y[a]));
      if (std::abs(y[a] - coords[n][a]) > 1e-9 * scale)
        throw ConfigError("read_field: non-uniform grid coordinates");
    }
  }
  return grid;
}

}  // namespace detail

struct FieldFile {
  std::string kind;
  EvaluationGrid grid;
  std::vector<double> real_values;
  std::vector<double> imag_values;  // empty unless kind == amplitude

  DensityField as_density() const {
    if (kind == "amplitude")
      throw ConfigError("FieldFile: amplitude file is not a density");
    return DensityField(grid, real_values);
  }
};

inline FieldFile read_field(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ConfigError("read_field: empty input");
  char kind_buf[64] = {0};
  int dim = 0;
  if (std::sscanf(header.c_str(), "# qinterf-field v1 kind=%63s dim=%d",
                  kind_buf, &dim) != 2 ||
      dim < 1 || dim > 2)
    throw ConfigError("read_field: bad header: " + header);
  const std::string kind = kind_buf;
  const int value_cols = kind == "amplitude" ? 2 : 1;

  std::vector<std::vector<double>> coords;
  std::vector<double> re, im;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> c(dim);
    for (int a = 0; a < dim; ++a)
      if (!(ls >> c[a])) throw ConfigError("read_field: short row: " + line);
    double v;
    if (!(ls >> v)) throw ConfigError("read_field: missing value: " + line);
    re.push_back(v);
    if (value_cols == 2) {
      if (!(ls >> v)) throw ConfigError("read_field: missing imag: " + line);
      im.push_back(v);
    }
    coords.push_back(std::move(c));
  }
  EvaluationGrid grid = detail::grid_from_rows(coords, dim);
  return FieldFile{kind, std::move(grid), std::move(re), std::move(im)};
}

// ---------------------------------------------------------------------------
// Peak reports: key=value block plus one tab-separated line per peak.

inline void write_peak_report(std::ostream& os, const PeakReport& r) {
  os << "threshold_fraction=" << fmt_double(r.threshold_fraction) << "\n"
     << "absolute_threshold=" << fmt_double(r.absolute_threshold) << "\n"
     << "count=" << r.count << "\n"
     << "plateau_merges=" << r.plateau_merges << "\n";
  for (const auto& p : r.peaks) {
    for (int a = 0; a < p.coords.size(); ++a) os << fmt_double(p.coords[a]) << '\t';
    os << fmt_double(p.value) << "\n";
  }
}

}  // namespace qinterf
