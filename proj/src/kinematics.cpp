#include "jmat/kinematics.hpp"

#include "jmat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jmat {

namespace {

void require_free_s_wave(const ChannelSpec& ch, const char* who) {
  if (ch.Z != 0.0)
    throw UnsupportedChannelError(std::string(who) + ": Coulomb kinematics (Z != 0) are not supported");
  if (ch.l != 0)
    throw UnsupportedChannelError(std::string(who) + ": closed-form coefficients exist only for l = 0");
}

double amplitude(const EnergyPoint& p, int n) {
  return std::sqrt(2.0 / (std::numbers::pi * p.k * p.channel.lambda * (n + 1.0)));
}

} // namespace

EnergyPoint energy_point(double E, const ChannelSpec& channel) {
  channel.validate();
  if (!(E > 0.0) || !std::isfinite(E))
    throw std::invalid_argument("energy_point: energy must be positive, got " + std::to_string(E));
  if (channel.Z != 0.0)
    throw UnsupportedChannelError("energy_point: Coulomb kinematics (Z != 0) are not supported");
  EnergyPoint p;
  p.channel = channel;
  p.E = E;
  p.k = std::sqrt(2.0 * E);
  double const k2 = 2.0 * E;
  double const q = 0.25 * channel.lambda * channel.lambda;
  p.cos_theta = (k2 - q) / (k2 + q);
  p.sin_theta = p.k * channel.lambda / (k2 + q);
  p.theta = std::atan2(p.sin_theta, p.cos_theta);
  return p;
}

std::vector<double> sine_coefficients(const EnergyPoint& point, int count) {
  require_free_s_wave(point.channel, "sine_coefficients");
  if (count < 1) throw std::invalid_argument("sine_coefficients: count must be positive");
  std::vector<double> s(count);
  for (int n = 0; n < count; ++n) s[n] = amplitude(point, n) * std::sin((n + 1) * point.theta);
  return s;
}

std::vector<double> cosine_coefficients(const EnergyPoint& point, int count) {
  require_free_s_wave(point.channel, "cosine_coefficients");
  if (count < 1) throw std::invalid_argument("cosine_coefficients: count must be positive");
  std::vector<double> c(count);
  for (int n = 0; n < count; ++n) c[n] = -amplitude(point, n) * std::cos((n + 1) * point.theta);
  return c;
}

KinematicTable kinematic_table(double E, const ChannelSpec& channel, int count) {
  if (count < 2) throw std::invalid_argument("kinematic_table: count must be at least 2");
  KinematicTable t;
  t.channel = channel;
  t.point = energy_point(E, channel);
  t.count = count;
  t.s = sine_coefficients(t.point, count);
  t.c = cosine_coefficients(t.point, count);
  t.hplus.resize(count);
  t.hminus.resize(count);
  t.T.resize(count);
  for (int n = 0; n < count; ++n) {
    t.hplus[n] = {t.c[n], t.s[n]};
    t.hminus[n] = {t.c[n], -t.s[n]};
    t.T[n] = t.hminus[n] / t.hplus[n];
  }
  t.Rplus.resize(count - 1);
  t.Rminus.resize(count - 1);
  for (int n = 0; n + 1 < count; ++n) {
    t.Rplus[n] = t.hplus[n + 1] / t.hplus[n];
    t.Rminus[n] = t.hminus[n + 1] / t.hminus[n];
  }
  auto const J = j_matrix(2, channel, E);
  t.kappa = J.diag(0) * t.c[0] + J.off(0) * t.c[1];
  t.W = 2.0 * t.s[0] * t.kappa;
  return t;
}

ResidualReport recursion_residual(const KinematicTable& table, const TridiagonalMatrix& J) {
  ResidualReport report;
  int const last = std::min(table.count - 2, J.size() - 2);
  if (last < 1) {
    report.vacuous = true;
    return report;
  }
  for (const auto* d : {&table.s, &table.c}) {
    for (int n = 1; n <= last; ++n) {
      double const a = J.off(n - 1) * (*d)[n - 1];
      double const b = J.diag(n) * (*d)[n];
      double const c = J.off(n) * (*d)[n + 1];
      // At E = lambda^2/8 the diagonal and every other coefficient vanish, so
      // the terms themselves are no scale; use row norm times local magnitude.
      double const row = std::abs(J.off(n - 1)) + std::abs(J.diag(n)) + std::abs(J.off(n));
      double const mag = std::max({std::abs((*d)[n - 1]), std::abs((*d)[n]), std::abs((*d)[n + 1])});
      double const scale = row * mag + 1e-300;
      report.max_residual = std::max(report.max_residual, std::abs(a + b + c) / scale);
    }
  }
  return report;
}

} // namespace jmat
