#include "qpseed/augvar.hpp"

#include <numeric>

namespace qpseed {

std::vector<int> full_twist(int n) {
  if (n < 2) throw AugError("full twist needs at least 2 strands");
  std::vector<int> half;
  for (int top = 1; top <= n - 1; ++top)
    for (int k = top; k >= 1; --k) half.push_back(k);
  std::vector<int> out = half;
  out.insert(out.end(), half.begin(), half.end());
  return out;
}

std::vector<int> braid_permutation(int n, const std::vector<int>& word) {
  // at[p] = strand currently at position p
  std::vector<int> at(n);
  std::iota(at.begin(), at.end(), 0);
  for (int k : word) {
    if (k < 1 || k > n - 1) throw AugError("generator index " + std::to_string(k) + " out of range");
    std::swap(at[k - 1], at[k]);
  }
  std::vector<int> perm(n);
  for (int p = 0; p < n; ++p) perm[at[p]] = p;
  return perm;
}

std::vector<std::vector<int>> braid_components(int n, const std::vector<int>& word) {
  std::vector<int> perm = braid_permutation(n, word);
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      cyc.push_back(j);
    }
    std::sort(cyc.begin(), cyc.end());
    out.push_back(std::move(cyc));
  }
  return out;
}

BraidMatrixSystem make_system(const BraidWord& beta) {
  BraidMatrixSystem sys;
  sys.n = beta.strands;
  sys.word = beta.letters;
  auto twist = full_twist(sys.n);
  sys.word.insert(sys.word.end(), twist.begin(), twist.end());
  for (const auto& c : braid_components(sys.n, sys.word)) sys.marked.push_back(c.front() + 1);
  return sys;
}

Matrix<int> residual_z_degrees(const BraidMatrixSystem& sys) {
  // Entries of each factor have nonnegative coefficients, so the max-plus
  // product is exact.
  const int n = sys.n;
  Matrix<int> deg(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) deg[i][i] = 0;
  for (int k : sys.word) {
    Matrix<int> f(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) f[i][i] = 0;
    f[k - 1][k - 1] = -1;
    f[k - 1][k] = 0;
    f[k][k - 1] = 0;
    f[k][k] = 1;
    Matrix<int> next(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m)
        if (deg[i][m] >= 0)
          for (int j = 0; j < n; ++j)
            if (f[m][j] >= 0) next[i][j] = std::max(next[i][j], deg[i][m] + f[m][j]);
    deg = std::move(next);
  }
  for (int i = 0; i < n; ++i) deg[i][i] = std::max(deg[i][i], 0);
  return deg;
}

double max_abs(const Matrix<std::complex<double>>& m) {
  double r = 0;
  for (const auto& row : m)
    for (const auto& x : row) r = std::max(r, std::abs(x));
  return r;
}

bool is_zero(const Matrix<Rational>& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

}  // namespace qpseed
