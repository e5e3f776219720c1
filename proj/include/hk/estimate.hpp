#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hk/error.hpp"
#include "hk/rational.hpp"

namespace hk {

// Limit estimate from finite levels. With model "C/q" every sample satisfies
// |sample_n - value| <= error_bound * q_max / q_n.
struct InvariantEstimate {
  std::string invariant;
  Rational value;
  double error_bound = 0.0;
  std::vector<int> levels;
  std::string model;  // "exact" or "C/q"
  Rational fitted_C;
  std::vector<Rational> samples;

  bool exact() const noexcept { return model == "exact"; }
};

struct LevelPoint {
  int n;
  std::uint64_t q;
  Rational sample;
};

// Least-squares fit of sample = value + C/q, computed in exact arithmetic.
inline InvariantEstimate fit_c_over_q(std::string invariant, const std::vector<LevelPoint>& points) {
  if (points.empty()) throw ConfigError("an estimate needs at least one level");
  InvariantEstimate est;
  est.invariant = std::move(invariant);
  std::uint64_t q_max = 0;
  for (const auto& pt : points) {
    est.levels.push_back(pt.n);
    est.samples.push_back(pt.sample);
    q_max = std::max(q_max, pt.q);
  }
  bool constant = true;
  for (const auto& pt : points) constant = constant && pt.sample == points.front().sample;
  if (constant) {
    est.value = points.front().sample;
    est.model = "exact";
    return est;
  }
  if (points.size() < 2) throw ConfigError("a C/q fit needs at least two levels");
  Rational sx = 0, sy = 0, sxx = 0, sxy = 0;
  const Rational m(static_cast<long long>(points.size()));
  for (const auto& pt : points) {
    Rational x(1, BigInt(pt.q));
    sx += x;
    sy += pt.sample;
    sxx += x * x;
    sxy += x * pt.sample;
  }
  Rational det = m * sxx - sx * sx;
  if (det == 0) throw ConfigError("levels must have distinct q for a C/q fit");
  est.fitted_C = (m * sxy - sx * sy) / det;
  est.value = (sy - est.fitted_C * sx) / m;
  est.model = "C/q";
  double bound = 0.0;
  for (const auto& pt : points) {
    Rational dev = pt.sample - est.value;
    if (dev < 0) dev = -dev;
    bound = std::max(bound, to_double(dev * BigInt(pt.q) / BigInt(q_max)));
  }
  // Round up by one ulp-scale margin so the stated inequality is verifiable in doubles.
  est.error_bound = std::nextafter(bound, INFINITY);
  for (const auto& pt : points) {
    double dev = std::fabs(to_double(pt.sample - est.value));
    if (dev > est.error_bound * static_cast<double>(q_max) / static_cast<double>(pt.q) * (1 + 1e-12))
      throw VerificationFailure("C/q error bound does not cover level " + std::to_string(pt.n));
  }
  return est;
}

}  // namespace hk
