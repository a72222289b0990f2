#pragma once

// Two-chart atlas of the auxiliary Riemann sphere and the Z2 exchange
// S <-> hbar it induces on the partial-wave expansion.
//
// Chart Z carries z = rho e^{i phi} with rho = S/hbar; chart ZTILDE carries
// z~ = -1/z, so rho~ = hbar/S and phi~ = -(phi + pi). Expansions hosted by
// chart Z are semiclassical (outgoing waves); those hosted by ZTILDE describe
// the strong quantum regime (incoming waves of opposite chirality).

#include "actionwave/partial_waves.hpp"

namespace actionwave {

enum class Chart { kZ, kZTilde };

enum class Regime { kSemiclassical, kStrongQuantum };

const char* to_string(Chart chart);
const char* to_string(Regime regime);

Chart other(Chart chart);
Chart chart_of(Regime regime);
Regime regime_of(Chart chart);

/// Semiclassical waves are outgoing from z = 0, strong-quantum waves incoming.
inline bool outgoing(Regime regime) { return regime == Regime::kSemiclassical; }

/// Reduces an angle to (-pi, pi].
double normalize_angle(double phi);

/// A point of CP^1 in one chart. rho = 0 marks that chart's origin, which
/// is the point at infinity of the other chart.
class SpherePoint {
 public:
  static SpherePoint from_polar(Chart chart, double rho, double phi);
  static SpherePoint from_coord(Chart chart, Complex coord);

  Chart chart() const noexcept { return chart_; }
  Complex coord() const noexcept { return coord_; }
  double rho() const noexcept { return rho_; }
  double phi() const noexcept { return phi_; }

  bool is_origin() const noexcept { return rho_ == 0.0; }

 private:
  SpherePoint(Chart chart, Complex coord, double rho, double phi)
      : chart_(chart), coord_(coord), rho_(rho), phi_(phi) {}

  friend SpherePoint chart_invert(const SpherePoint& p);

  Chart chart_;
  Complex coord_;
  double rho_;
  double phi_;
};

/// The same point seen from the other chart: z~ = -1/z. An origin maps to
/// the other chart's origin.
SpherePoint chart_invert(const SpherePoint& p);

/// The point of the atlas that hosts the expansion of `state` in `regime`,
/// at angle phi.
SpherePoint chart_point(const ActionState& state, Regime regime,
                        double phi = 0.0);

/// S/hbar for kSemiclassical, hbar/S for kStrongQuantum.
BesselArgument quantum_ratio(const ActionState& state, Regime regime);

/// reconstruct() at w = hbar/S.
ExpansionReport dual_reconstruct(const ActionState& state, int n_max);

/// exp(i (S/hbar + hbar/S)), symmetric under S <-> hbar bit for bit. The sum
/// of the two ratios is carried as an exact hi + lo pair so the small ratio
/// is not rounded away against the large one.
Complex selfdual_phase(const ActionState& state);

/// kSemiclassical when S/hbar >= threshold, else kStrongQuantum.
Regime classify_regime(const ActionState& state, double threshold = 1.0);

}  // namespace actionwave
