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

#ifndef DYNSUB_SYMMETRIC_GAP_H_
#define DYNSUB_SYMMETRIC_GAP_H_

#include <span>
#include <string>

namespace dynsub {

// Parameters of the smoothed symmetric-gap function on [0,1]^w. The
// thresholds are also kept as logarithms because the default formulas
// underflow double precision for all but the smallest (w, eps).
struct SymGapParams {
  int w = 2;
  double eps = 0.5;
  double gamma = 0.0;      // balance radius
  double eps1 = 0.0;       // end of the identity part of phi
  double eps2 = 0.0;       // start of the flat part of phi
  double phi_alpha = 0.0;  // phi''(t) = -phi_alpha / t in between
  double log_gamma = 0.0;
  double log_eps1 = 0.0;
  double log_eps2 = 0.0;

  // gamma = exp(-4w^6/eps)/w, eps1 = w*gamma, eps2 = exp(-2w^6/eps),
  // phi_alpha = eps/(2w^6). With these, phi'(eps2) = 0 and the smoothed
  // function is monotone submodular.
  static SymGapParams Defaults(int w, double eps);

  // Defaults(2, 0.5): every threshold is a normal double, so the preset is
  // exactly representable and keeps the submodularity guarantee.
  static SymGapParams TestFriendly();

  // Explicit overrides; requires 0 <= gamma, 0 < eps1 < eps2 < 1,
  // phi_alpha >= 0. phi may then fail to be concave-compatible with
  // submodularity; callers own that choice.
  static SymGapParams Custom(int w, double eps, double gamma, double eps1,
                             double eps2, double phi_alpha);

  // True when eps1 and eps2 do not underflow.
  bool Representable() const;
  void Validate() const;
};

// phi on [0,1]; std::domain_error outside.
double Phi(double t, const SymGapParams& p);

// phi'(t) on [0,1] (right derivative at the breakpoints).
double PhiDerivative(double t, const SymGapParams& p);

// f(x) = 1 - prod (1 - x_i).
double GapF(std::span<const double> x);
// g(x) = 1 - (1 - mean(x))^w.
double GapG(std::span<const double> x);

// max_i x_i - min_i x_i <= gamma, compared in log space.
bool WithinBalance(std::span<const double> x, const SymGapParams& p);

// Smoothed function (f - phi(f - g) + eps*g) / (1 + eps); returns g(x)
// exactly on balanced points. std::invalid_argument on dimension mismatch,
// std::domain_error on coordinates outside [0,1].
double FHat(std::span<const double> x, const SymGapParams& p);

}  // namespace dynsub

#endif  // DYNSUB_SYMMETRIC_GAP_H_
