#pragma once

// Plain-text exchange format for two-mode states.
//
//   % optional comment lines start with '%'
//   <n_max>
//   <row> <col> <re> <im>      one line per stored entry
//
// Indices are 0-based composite indices m * n_max + n. Values are written
// with 17 significant digits so a read-back reproduces them exactly.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cvw/fock_core.hpp"

namespace cvw {

inline void write_state(std::ostream& out, const TwoModeState& rho) {
  out << "% cvw two-mode state, composite index m*n_max+n\n";
  out << rho.n_max() << '\n';
  char line[128];
  const auto& m = rho.matrix();
  for (Eigen::Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      std::snprintf(line, sizeof line, "%ld %ld %.17g %.17g\n", static_cast<long>(it.row()),
                    static_cast<long>(it.col()), it.value().real(), it.value().imag());
      out << line;
    }
}

inline TwoModeState read_state(std::istream& in) {
  std::string line;
  std::size_t n_max = 0;
  bool have_header = false;
  std::vector<Triplet> entries;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream fields(line);
    if (!have_header) {
      if (!(fields >> n_max) || n_max == 0) throw domain_error("state file: bad n_max header");
      have_header = true;
      continue;
    }
    long row = 0;
    long col = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> row >> col >> re >> im))
      throw domain_error("state file: malformed entry on line " + std::to_string(line_no));
    const auto dim = static_cast<long>(n_max * n_max);
    if (row < 0 || col < 0 || row >= dim || col >= dim)
      throw domain_error("state file: index out of range on line " + std::to_string(line_no));
    entries.emplace_back(row, col, cplx(re, im));
  }
  if (!have_header) throw domain_error("state file: missing n_max header");
  return TwoModeState::from_triplets(n_max, entries);
}

}  // namespace cvw
