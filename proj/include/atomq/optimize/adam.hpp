// Copyright 2026 The atomq Authors
// SPDX-License-Identifier: Apache-2.0

// Adam with the bias correction folded into the moving-average coefficients:
//
//   m_n = (b1 - b1^n)/(1 - b1^n) m_{n-1} + (1 - b1)/(1 - b1^n) g
//   v_n = (b2 - b2^n)/(1 - b2^n) v_{n-1} + (1 - b2)/(1 - b2^n) g^2
//   theta <- theta - eta m_n / (sqrt(v_n) + eps)

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "atomq/error.hpp"

namespace atomq {

struct AdamOptions {
  double eta = 0.05;
  double epsilon = 1e-8;
  double beta1 = 0.9;
  double beta2 = 0.999;
};

struct AdamState {
  AdamOptions options;
  std::size_t step = 0;
  std::vector<double> m;
  std::vector<double> v;

  AdamState() = default;
  AdamState(std::size_t n, AdamOptions opt) : options(opt), m(n, 0.0), v(n, 0.0) {}
};

inline void adam_step(std::span<double> theta, std::span<const double> grad, AdamState& st) {
  if (theta.size() != grad.size() || st.m.size() != theta.size() || st.v.size() != theta.size())
    throw ValidationError("Adam dimension mismatch");
  const auto& o = st.options;
  ++st.step;
  const double n = static_cast<double>(st.step);
  const double b1n = std::pow(o.beta1, n), b2n = std::pow(o.beta2, n);
  const double km = (o.beta1 - b1n) / (1.0 - b1n), kg = (1.0 - o.beta1) / (1.0 - b1n);
  const double kv = (o.beta2 - b2n) / (1.0 - b2n), kg2 = (1.0 - o.beta2) / (1.0 - b2n);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    st.m[i] = km * st.m[i] + kg * grad[i];
    st.v[i] = kv * st.v[i] + kg2 * grad[i] * grad[i];
    theta[i] -= o.eta / (std::sqrt(st.v[i]) + o.epsilon) * st.m[i];
  }
}

}  // namespace atomq
