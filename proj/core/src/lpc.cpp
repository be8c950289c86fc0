/*
Copyright 2026 The CQNV Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "cqnv/lpc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cqnv/errors.hpp"

namespace cqnv {
namespace {

constexpr double kPi = std::numbers::pi;
// Relative white-noise floor added to r[0]; keeps the normal equations
// well conditioned for near-sinusoidal frames.
constexpr double kNoiseFloor = 1e-9;

// Coefficients of the order-p symmetric polynomial obtained after removing the
// trivial root from P(z) (sum) or Q(z) (difference).
std::array<double, kLpcOrder + 1> reduced_polynomial(const LpcVector& lpc,
                                                     bool sum) {
  constexpr std::size_t p = kLpcOrder;
  std::array<double, p + 2> a{};
  a[0] = 1.0;
  for (std::size_t i = 0; i < p; ++i) a[i + 1] = lpc[i];

  std::array<double, p + 2> full{};
  for (std::size_t k = 0; k <= p + 1; ++k) {
    full[k] = sum ? a[k] + a[p + 1 - k] : a[k] - a[p + 1 - k];
  }
  // Divide by (1 + z^-1) for P, (1 - z^-1) for Q.
  std::array<double, p + 1> reduced{};
  reduced[0] = full[0];
  for (std::size_t k = 1; k <= p; ++k) {
    reduced[k] = sum ? full[k] - reduced[k - 1] : full[k] + reduced[k - 1];
  }
  return reduced;
}

// z^{-m} C(z) on the unit circle for a symmetric degree-2m polynomial C.
double eval_symmetric(const std::array<double, kLpcOrder + 1>& c, double w) {
  constexpr std::size_t m = kLpcOrder / 2;
  double v = c[m];
  for (std::size_t k = 0; k < m; ++k) {
    v += 2.0 * c[k] * std::cos(static_cast<double>(m - k) * w);
  }
  return v;
}

bool positive(double v) { return v >= 0.0; }

std::vector<double> find_roots(const std::array<double, kLpcOrder + 1>& c,
                               std::size_t grid) {
  std::vector<double> roots;
  double w_prev = 0.0;
  double f_prev = eval_symmetric(c, w_prev);
  for (std::size_t i = 1; i <= grid; ++i) {
    const double w = kPi * static_cast<double>(i) / static_cast<double>(grid);
    const double f = eval_symmetric(c, w);
    if (positive(f) != positive(f_prev)) {
      double lo = w_prev, hi = w;
      const bool lo_pos = positive(f_prev);
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (positive(eval_symmetric(c, mid)) == lo_pos) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    w_prev = w;
    f_prev = f;
  }
  return roots;
}

}  // namespace

std::vector<double> autocorrelation(std::span<const double> x,
                                    std::size_t max_lag) {
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (std::size_t n = lag; n < x.size(); ++n) acc += x[n] * x[n - lag];
    r[lag] = acc;
  }
  return r;
}

std::vector<double> hamming_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(i) /
                                  static_cast<double>(n - 1));
  }
  return w;
}

LevinsonResult levinson_durbin(std::span<const double> r, std::size_t order) {
  if (r.size() < order + 1) {
    throw DimensionError("levinson_durbin autocorrelation", order + 1,
                         r.size());
  }
  LevinsonResult out;
  out.coeffs.assign(order, 0.0);
  out.reflection.assign(order, 0.0);
  out.prediction_error.assign(order + 1, 0.0);
  out.prediction_error[0] = r[0];

  std::vector<double> a(order + 1, 0.0);
  std::vector<double> tmp(order + 1, 0.0);
  a[0] = 1.0;
  double err = r[0];
  for (std::size_t i = 1; i <= order; ++i) {
    double k = 0.0;
    if (err > 0.0) {
      double acc = r[i];
      for (std::size_t j = 1; j < i; ++j) acc += a[j] * r[i - j];
      k = -acc / err;
      k = std::clamp(k, -0.999999, 0.999999);
    }
    tmp = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = tmp[j] + k * tmp[i - j];
    a[i] = k;
    err *= (1.0 - k * k);
    out.reflection[i - 1] = k;
    out.prediction_error[i] = err;
  }
  for (std::size_t i = 0; i < order; ++i) out.coeffs[i] = a[i + 1];
  return out;
}

LpcAnalysis lpc_analyze(std::span<const double> samples, std::size_t order) {
  if (order != kLpcOrder) {
    throw InvalidArgument("lpc_analyze: only order " +
                          std::to_string(kLpcOrder) + " is supported");
  }
  LpcAnalysis out;
  const auto window = hamming_window(samples.size());
  std::vector<double> xw(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    xw[i] = samples[i] * window[i];
  }
  auto r = autocorrelation(xw, order);
  if (!(r[0] > 0.0)) {
    out.silent = true;
    out.prediction_error.assign(order + 1, 0.0);
    return out;
  }
  r[0] *= 1.0 + kNoiseFloor;
  auto lev = levinson_durbin(r, order);
  double g = 1.0;
  for (std::size_t i = 0; i < order; ++i) {
    g *= kBandwidthExpansion;
    out.coeffs[i] = lev.coeffs[i] * g;
  }
  out.prediction_error = std::move(lev.prediction_error);
  return out;
}

LspVector lpc_to_lsp(const LpcVector& lpc, long frame_index) {
  const auto p_poly = reduced_polynomial(lpc, true);
  const auto q_poly = reduced_polynomial(lpc, false);
  constexpr std::size_t half = kLpcOrder / 2;

  // Closely spaced roots need a finer grid; refine until both polynomials
  // yield exactly half the roots each.
  std::vector<double> p_roots, q_roots;
  for (std::size_t grid = 1024; grid <= (1u << 17); grid *= 8) {
    p_roots = find_roots(p_poly, grid);
    q_roots = find_roots(q_poly, grid);
    if (p_roots.size() == half && q_roots.size() == half) break;
  }
  if (p_roots.size() != half || q_roots.size() != half) {
    throw LspConversionError(
        "lpc_to_lsp: found " + std::to_string(p_roots.size()) + "+" +
            std::to_string(q_roots.size()) + " roots, expected " +
            std::to_string(half) + "+" + std::to_string(half),
        frame_index);
  }
  LspVector lsp{};
  for (std::size_t i = 0; i < half; ++i) {
    lsp[2 * i] = p_roots[i];
    lsp[2 * i + 1] = q_roots[i];
  }
  if (!lsp_is_ordered(lsp)) {
    throw LspConversionError("lpc_to_lsp: P/Q roots do not interlace",
                             frame_index);
  }
  return lsp;
}

bool lsp_is_ordered(std::span<const double> lsp) {
  if (lsp.empty()) return true;
  if (!(lsp.front() > 0.0) || !(lsp.back() < kPi)) return false;
  for (std::size_t i = 1; i < lsp.size(); ++i) {
    if (!(lsp[i] > lsp[i - 1])) return false;
  }
  return true;
}

LpcVector lsp_to_lpc(const LspVector& lsp) {
  if (!lsp_is_ordered(lsp)) {
    throw LspOrderError("lsp_to_lpc: LSPs must be strictly increasing in (0, pi)");
  }
  constexpr std::size_t p = kLpcOrder;
  // Build P'(z) from even-indexed and Q'(z) from odd-indexed frequencies.
  auto build = [&](std::size_t first) {
    std::vector<double> poly{1.0};
    for (std::size_t i = first; i < p; i += 2) {
      const double c = -2.0 * std::cos(lsp[i]);
      std::vector<double> next(poly.size() + 2, 0.0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k] += poly[k];
        next[k + 1] += c * poly[k];
        next[k + 2] += poly[k];
      }
      poly = std::move(next);
    }
    return poly;
  };
  const auto pp = build(0);
  const auto qp = build(1);
  LpcVector a{};
  for (std::size_t k = 1; k <= p; ++k) {
    // P = P'(1 + z^-1), Q = Q'(1 - z^-1), A = (P + Q) / 2.
    const double pk = pp[k] + pp[k - 1];
    const double qk = qp[k] - qp[k - 1];
    a[k - 1] = 0.5 * (pk + qk);
  }
  return a;
}

std::vector<double> reflection_to_lpc(std::span<const double> reflection) {
  const std::size_t order = reflection.size();
  std::vector<double> a(order + 1, 0.0);
  a[0] = 1.0;
  std::vector<double> tmp;
  for (std::size_t i = 1; i <= order; ++i) {
    const double k = reflection[i - 1];
    tmp = a;
    for (std::size_t j = 1; j < i; ++j) a[j] = tmp[j] + k * tmp[i - j];
    a[i] = k;
  }
  return {a.begin() + 1, a.end()};
}

double lpc_power_response(std::span<const double> lpc, double w) {
  double re = 1.0, im = 0.0;
  for (std::size_t i = 0; i < lpc.size(); ++i) {
    const double ang = static_cast<double>(i + 1) * w;
    re += lpc[i] * std::cos(ang);
    im -= lpc[i] * std::sin(ang);
  }
  return re * re + im * im;
}

}  // namespace cqnv
