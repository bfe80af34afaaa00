#pragma once

#include <initializer_list>

#include "lagidx/hermitian.hpp"
#include "lagidx/lagrangian.hpp"

namespace lagidx::testing {

inline HermitianMatrix diag(std::initializer_list<double> d) { return HermitianMatrix::diagonal(d); }

inline HermitianMatrix scalar(double a) { return HermitianMatrix::diagonal({a}); }

inline LagrangianPlane graph(std::initializer_list<double> d) { return LagrangianPlane::graph(diag(d)); }

inline Matrix real_matrix(Index rows, Index cols, std::initializer_list<double> entries) {
  Matrix m(rows, cols);
  auto it = entries.begin();
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = *it++;
  }
  return m;
}

inline double distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace lagidx::testing
