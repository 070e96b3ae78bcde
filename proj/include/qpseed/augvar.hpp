#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpseed/fence.hpp"
#include "qpseed/rational.hpp"

namespace qpseed {

class AugError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Positive word for the full twist: ((s1)(s2 s1)...(s_{n-1}...s1))^2.
std::vector<int> full_twist(int n);

/// perm[i] is the 0-based position where the strand entering at i exits.
std::vector<int> braid_permutation(int n, const std::vector<int>& word);

/// Cycles of the braid permutation, each sorted, ordered by smallest strand.
std::vector<std::vector<int>> braid_components(int n, const std::vector<int>& word);

struct BraidMatrixSystem {
  int n = 2;
  std::vector<int> word;    // letters of beta followed by the full twist
  std::vector<int> marked;  // 1-based lowest strand of each component

  std::size_t length() const { return word.size(); }
  std::size_t components() const { return marked.size(); }
};

BraidMatrixSystem make_system(const BraidWord& beta);

template <class T>
Matrix<T> identity_matrix(int n) {
  Matrix<T> m(n, std::vector<T>(n, T(0)));
  for (int i = 0; i < n; ++i) m[i][i] = T(1);
  return m;
}

/// Identity except rows/cols {k, k+1} (1-based), which carry [[0,1],[1,a]].
template <class T>
Matrix<T> p_matrix(int k, const T& a, int n) {
  if (n < 2 || k < 1 || k > n - 1) throw AugError("generator index " + std::to_string(k) + " out of range");
  Matrix<T> m = identity_matrix<T>(n);
  m[k - 1][k - 1] = T(0);
  m[k - 1][k] = T(1);
  m[k][k - 1] = T(1);
  m[k][k] = a;
  return m;
}

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), inner = b.size();
  Matrix<T> out(n, std::vector<T>(m, T(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

template <class T>
Matrix<T> diagonal_t(const BraidMatrixSystem& sys, const std::vector<T>& t) {
  Matrix<T> d = identity_matrix<T>(sys.n);
  for (std::size_t j = 0; j < sys.marked.size(); ++j) d[sys.marked[j] - 1][sys.marked[j] - 1] = t[j];
  return d;
}

enum class Fold { Left, Right };

/// 1 + P_{k_1}(z_1)...P_{k_l}(z_l) D(t).
template <class T>
Matrix<T> residual(const BraidMatrixSystem& sys, const std::vector<T>& z, const std::vector<T>& t,
                   Fold fold = Fold::Left) {
  if (z.size() != sys.length())
    throw AugError("expected " + std::to_string(sys.length()) + " z values, got " + std::to_string(z.size()));
  if (t.size() != sys.components())
    throw AugError("expected " + std::to_string(sys.components()) + " t values, got " + std::to_string(t.size()));
  for (const T& x : t)
    if (x == T(0)) throw AugError("t values must be nonzero");
  std::vector<Matrix<T>> factors;
  for (std::size_t i = 0; i < z.size(); ++i) factors.push_back(p_matrix(sys.word[i], z[i], sys.n));
  factors.push_back(diagonal_t(sys, t));
  Matrix<T> prod = identity_matrix<T>(sys.n);
  if (fold == Fold::Left) {
    for (const auto& f : factors) prod = multiply(prod, f);
  } else {
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) prod = multiply(*it, prod);
  }
  for (int i = 0; i < sys.n; ++i) prod[i][i] += T(1);
  return prod;
}

/// z-degree of each residual entry as a polynomial in z (-1 for the zero polynomial).
Matrix<int> residual_z_degrees(const BraidMatrixSystem& sys);

double max_abs(const Matrix<std::complex<double>>& m);
bool is_zero(const Matrix<Rational>& m);

}  // namespace qpseed
