#pragma once

// Closed-form reference solutions for the free (Z = 0, l = 0) Laguerre channel.
//
//   s_n = sqrt(2/(pi k lambda (n+1))) sin((n+1) theta)
//   c_n = -sqrt(2/(pi k lambda (n+1))) cos((n+1) theta)
//
// are the expansion coefficients of the energy-normalized sine sqrt(2/(pi k)) sin(kr)
// and of its regularized cosine partner. h_n^+- = c_n +- i s_n.

#include "jmat/basis.hpp"

#include <complex>
#include <vector>

namespace jmat {

using cplx = std::complex<double>;

struct EnergyPoint {
  ChannelSpec channel;
  double E = 0.0;
  double k = 0.0;
  double theta = 0.0;
  double cos_theta = 0.0;
  double sin_theta = 0.0;
};

/// Rejects E <= 0 and Z != 0.
EnergyPoint energy_point(double E, const ChannelSpec& channel);

/// Rejects l != 0 with UnsupportedChannelError.
std::vector<double> sine_coefficients(const EnergyPoint& point, int count);
std::vector<double> cosine_coefficients(const EnergyPoint& point, int count);

struct KinematicTable {
  ChannelSpec channel;
  EnergyPoint point;
  int count = 0;
  std::vector<double> s;
  std::vector<double> c;
  std::vector<cplx> hplus;
  std::vector<cplx> hminus;
  std::vector<cplx> T;      ///< T_n = h_n^- / h_n^+,            n = 0..count-1
  std::vector<cplx> Rplus;  ///< Rplus[n] = h_{n+1}^+ / h_n^+,      n = 0..count-2
  std::vector<cplx> Rminus; ///< Rminus[n] = h_{n+1}^- / h_n^-
  double kappa = 0.0;       ///< J00 c0 + J01 c1
  double W = 0.0;           ///< 2 s0 kappa
};

/// count >= 2.
KinematicTable kinematic_table(double E, const ChannelSpec& channel, int count);

struct ResidualReport {
  double max_residual = 0.0;
  bool vacuous = false; ///< no interior row was available (count < 3)
};

/// Largest relative row residual of the three-term recursion over rows
/// 1..count-2 for both s and c. Each row is scaled by its row norm times the
/// largest of the three coefficients it touches.
ResidualReport recursion_residual(const KinematicTable& table, const TridiagonalMatrix& J);

} // namespace jmat
