#pragma once

// Reference implementations used only by the tests. Each one is written from
// the definitions directly and shares no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using Pairing = std::vector<std::pair<int, int>>;  // 1-based, first < second

// All pairings of {1..k}, by brute recursion on the smallest free element.
inline std::vector<Pairing> pairings(int k) {
  std::vector<Pairing> out;
  std::function<void(std::vector<int>, Pairing)> rec = [&](std::vector<int> rest, Pairing acc) {
    if (rest.empty()) {
      out.push_back(acc);
      return;
    }
    const int a = rest.front();
    for (std::size_t i = 1; i < rest.size(); ++i) {
      std::vector<int> next;
      for (std::size_t j = 1; j < rest.size(); ++j) {
        if (j != i) next.push_back(rest[j]);
      }
      Pairing with = acc;
      with.emplace_back(a, rest[i]);
      rec(next, with);
    }
  };
  std::vector<int> all(static_cast<std::size_t>(k));
  std::iota(all.begin(), all.end(), 1);
  rec(all, {});
  return out;
}

// i < j < l < m with i~l and j~m.
inline bool crossing(const Pairing& p) {
  for (const auto& [i, l] : p) {
    for (const auto& [j, m] : p) {
      if (i < j && j < l && l < m) return true;
    }
  }
  return false;
}

// Blocks {i, j} with j = i + 1, or whose interior is a union of blocks.
inline int height(const Pairing& p) {
  int h = 0;
  for (const auto& [i, j] : p) {
    bool closed = true;
    for (const auto& [a, b] : p) {
      const bool a_in = a > i && a < j;
      const bool b_in = b > i && b < j;
      if (a_in != b_in) closed = false;
    }
    if (j == i + 1 || (closed && (j - i - 1) % 2 == 0 && j - i - 1 >= 2)) ++h;
  }
  return h;
}

// (2m)! / (m! (m+1)!) from the binomial coefficient, in floating point.
inline double catalan_factorial(int m) {
  return std::round(std::exp(std::lgamma(2.0 * m + 1) - std::lgamma(m + 1.0) - std::lgamma(m + 2.0)));
}

// Toeplitz volume by a product midpoint grid over all free variables but the
// last, which is integrated exactly: every determined variable is affine in it
// with slope -1, 0 or +1, so the feasible set is an interval.
inline double toeplitz_volume_grid(const Pairing& p, int k, int grid) {
  // Symbolic forms over x_0..x_k, each a vector of k+1 coefficients on the free variables.
  std::vector<int> partner(static_cast<std::size_t>(k + 1));
  std::vector<bool> is_free(static_cast<std::size_t>(k + 1), false);
  is_free[0] = true;
  for (const auto& [i, j] : p) {
    partner[i] = j;
    partner[j] = i;
    is_free[i] = true;
  }
  std::vector<int> free;
  for (int v = 0; v <= k; ++v) {
    if (is_free[v]) free.push_back(v);
  }
  const std::size_t f = free.size();
  std::vector<std::vector<double>> form(static_cast<std::size_t>(k + 1), std::vector<double>(f, 0.0));
  for (std::size_t t = 0; t < f; ++t) form[free[t]][t] = 1.0;
  for (int j = 1; j <= k; ++j) {
    if (is_free[j]) continue;
    const int i = partner[j];
    for (std::size_t t = 0; t < f; ++t) form[j][t] = form[j - 1][t] - form[i][t] + form[i - 1][t];
  }

  const std::size_t outer = f - 1;
  std::vector<int> idx(outer, 0);
  double total = 0.0;
  const double h = 1.0 / grid;
  while (true) {
    double lo = 0.0;
    double hi = 1.0;
    for (int v = 0; v <= k; ++v) {
      double offset = 0.0;
      for (std::size_t t = 0; t < outer; ++t) offset += form[v][t] * (idx[t] + 0.5) * h;
      const double slope = form[v][outer];
      if (slope == 0.0) {
        if (offset < 0.0 || offset > 1.0) hi = lo - 1.0;
      } else {
        // 0 <= offset + slope * y <= 1
        const double a = (0.0 - offset) / slope;
        const double b = (1.0 - offset) / slope;
        lo = std::max(lo, std::min(a, b));
        hi = std::min(hi, std::max(a, b));
      }
    }
    if (hi > lo) total += hi - lo;
    std::size_t t = 0;
    while (t < outer && ++idx[t] == grid) idx[t++] = 0;
    if (t == outer) break;
  }
  return total * std::pow(h, static_cast<double>(outer));
}

// Root of m = tanh(beta m) in (0, 1] by plain bisection; 0 for beta <= 1.
inline double magnetization_bisection(double beta) {
  if (beta <= 1.0) return 0.0;
  double lo = 1e-12;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::tanh(beta * mid) - mid > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// E[s_1 s_2] of the n-spin Curie-Weiss measure by summing over all 2^n states
// with weight exp(beta / (2n) * (sum s)^2).
inline double curie_weiss_covariance_states(int n, double beta) {
  double z = 0.0;
  double num = 0.0;
  for (std::uint32_t state = 0; state < (1u << n); ++state) {
    int total = 0;
    for (int i = 0; i < n; ++i) total += (state >> i) & 1u ? 1 : -1;
    const double w = std::exp(beta / (2.0 * n) * total * total);
    const int s1 = state & 1u ? 1 : -1;
    const int s2 = state & 2u ? 1 : -1;
    z += w;
    num += w * s1 * s2;
  }
  return num / z;
}

}  // namespace oracle
