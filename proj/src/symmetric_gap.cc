// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dynsub/symmetric_gap.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dynsub {

SymGapParams SymGapParams::Defaults(int w, double eps) {
  if (w < 2) throw std::invalid_argument("symmetric gap: w must be >= 2");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("symmetric gap: eps must lie in (0,1)");
  }
  const double w6 = std::pow(static_cast<double>(w), 6);
  SymGapParams p;
  p.w = w;
  p.eps = eps;
  p.log_eps1 = -4.0 * w6 / eps;
  p.log_gamma = p.log_eps1 - std::log(static_cast<double>(w));
  p.log_eps2 = -2.0 * w6 / eps;
  p.gamma = std::exp(p.log_gamma);
  p.eps1 = std::exp(p.log_eps1);
  p.eps2 = std::exp(p.log_eps2);
  p.phi_alpha = eps / (2.0 * w6);
  return p;
}

SymGapParams SymGapParams::TestFriendly() { return Defaults(2, 0.5); }

SymGapParams SymGapParams::Custom(int w, double eps, double gamma, double eps1,
                                  double eps2, double phi_alpha) {
  SymGapParams p;
  p.w = w;
  p.eps = eps;
  p.gamma = gamma;
  p.eps1 = eps1;
  p.eps2 = eps2;
  p.phi_alpha = phi_alpha;
  p.log_gamma = gamma > 0.0 ? std::log(gamma)
                            : -std::numeric_limits<double>::infinity();
  p.log_eps1 = std::log(eps1);
  p.log_eps2 = std::log(eps2);
  p.Validate();
  return p;
}

bool SymGapParams::Representable() const {
  return eps1 > 0.0 && eps2 > eps1 && std::isnormal(eps1);
}

void SymGapParams::Validate() const {
  if (w < 2) throw std::invalid_argument("symmetric gap: w must be >= 2");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("symmetric gap: eps must lie in (0,1)");
  }
  if (!(gamma >= 0.0) || !(phi_alpha >= 0.0)) {
    throw std::invalid_argument("symmetric gap: gamma, alpha must be >= 0");
  }
  if (!(log_eps1 < log_eps2) || !(log_eps2 < 0.0)) {
    throw std::invalid_argument("symmetric gap: need 0 < eps1 < eps2 < 1");
  }
}

namespace {

// t <= exp(log_bound), safe when the bound underflows.
bool AtMost(double t, double log_bound) {
  return t <= 0.0 || std::log(t) <= log_bound;
}

double PhiMiddle(double t, double log_t, const SymGapParams& p) {
  // phi(t) = t - alpha (t ln(t/eps1) - t + eps1)
  return t - p.phi_alpha * (t * (log_t - p.log_eps1) - t + p.eps1);
}

}  // namespace

double Phi(double t, const SymGapParams& p) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("phi: argument outside [0,1]");
  }
  if (AtMost(t, p.log_eps1)) return t;
  if (AtMost(t, p.log_eps2)) return PhiMiddle(t, std::log(t), p);
  return PhiMiddle(p.eps2, p.log_eps2, p);
}

double PhiDerivative(double t, const SymGapParams& p) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::domain_error("phi: argument outside [0,1]");
  }
  if (AtMost(t, p.log_eps1)) return 1.0;
  if (AtMost(t, p.log_eps2)) {
    return 1.0 - p.phi_alpha * (std::log(t) - p.log_eps1);
  }
  return 0.0;
}

double GapF(std::span<const double> x) {
  double miss = 1.0;
  for (double v : x) miss *= 1.0 - v;
  return 1.0 - miss;
}

double GapG(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / static_cast<double>(x.size());
  return 1.0 - std::pow(1.0 - mean, static_cast<double>(x.size()));
}

bool WithinBalance(std::span<const double> x, const SymGapParams& p) {
  if (x.empty()) return true;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return AtMost(*hi - *lo, p.log_gamma);
}

double FHat(std::span<const double> x, const SymGapParams& p) {
  if (x.size() != static_cast<std::size_t>(p.w)) {
    throw std::invalid_argument("fhat: expected " + std::to_string(p.w) +
                                " coordinates, got " +
                                std::to_string(x.size()));
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error("fhat: coordinate outside [0,1]");
    }
  }
  const double g = GapG(x);
  if (WithinBalance(x, p)) return g;
  const double f = GapF(x);
  const double h = std::clamp(f - g, 0.0, 1.0);
  return (f - Phi(h, p) + p.eps * g) / (1.0 + p.eps);
}

}  // namespace dynsub
