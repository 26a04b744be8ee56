#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "latdist/integer.hpp"

namespace latdist {

/// Gram-Schmidt coefficients and squared norms of the orthogonalized rows.
template <class Float>
struct GsoData {
  std::vector<std::vector<Float>> mu;  // mu[i][j] for j < i
  std::vector<Float> norms;            // ||b_i*||^2, exactly zero for dependent rows
  std::vector<bool> dependent;

  std::size_t size() const noexcept { return norms.size(); }
};

/// Modified Gram-Schmidt over floating copies of integer rows. A row whose
/// orthogonal part falls below `dependency_tol` times its own squared norm
/// is flagged dependent and gets norm 0.
template <class Float, class Int>
GsoData<Float> compute_gso(const std::vector<std::vector<Int>>& rows, double dependency_tol = 1e-10) {
  const std::size_t n = rows.size();
  const std::size_t d = n ? rows.front().size() : 0;
  GsoData<Float> g;
  g.mu.assign(n, std::vector<Float>(n, Float(0)));
  g.norms.assign(n, Float(0));
  g.dependent.assign(n, false);
  std::vector<std::vector<Float>> star(n, std::vector<Float>(d));
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = star[i];
    Float orig(0);
    for (std::size_t c = 0; c < d; ++c) {
      s[c] = to_float<Float>(rows[i][c]);
      orig += s[c] * s[c];
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (g.dependent[j]) continue;
      Float dot(0);
      for (std::size_t c = 0; c < d; ++c) dot += s[c] * star[j][c];
      const Float m = dot / g.norms[j];
      g.mu[i][j] = m;
      for (std::size_t c = 0; c < d; ++c) s[c] -= m * star[j][c];
    }
    Float nrm(0);
    for (std::size_t c = 0; c < d; ++c) nrm += s[c] * s[c];
    if (orig == Float(0) || nrm <= Float(dependency_tol) * orig) {
      g.dependent[i] = true;
      g.norms[i] = Float(0);
    } else {
      g.norms[i] = nrm;
    }
  }
  return g;
}

}  // namespace latdist
