#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nsmp/field.hpp"
#include "nsmp/solver.hpp"

namespace nsmp {

enum class Verdict { Pass, Flag };
std::string to_string(Verdict v);

/// One quantified claim: lhs <= rhs is asserted, margin = rhs - lhs.
struct ClaimRecord {
  std::string claim;
  double time = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::Pass;
  double tolerance = 0.0;
  /// Grid node of the extremum behind the record, when there is one.
  std::optional<std::array<int, 3>> location;
};

/// FLAG iff margin < -tolerance.
ClaimRecord make_record(std::string claim, double time, double lhs, double rhs, double tolerance,
                        std::optional<std::array<int, 3>> location = std::nullopt);

/// A measured quantity reported without a verdict.
struct Observation {
  std::string name;
  double time = 0.0;
  double value = 0.0;
};

struct ClaimReport {
  std::string kind;
  std::string scenario;
  std::uint64_t seed = 0;
  std::vector<ClaimRecord> records;
  std::vector<Observation> observations;

  std::size_t pass_count() const;
  std::size_t flag_count() const;
  /// First FLAG record for the claim, if any.
  const ClaimRecord* first_flag(const std::string& claim) const;
};

/// {kind, scenario, seed, records: [{claim, time, lhs, rhs, margin, verdict,
/// tolerance[, location]}], observations: [{name, time, value}]}
void write_json(std::ostream& os, const ClaimReport& report);
/// "# scenario=..., seed=..." then one row per record and per observation.
void write_csv(std::ostream& os, const ClaimReport& report);

/// Constants of the a priori estimates, computed from the data of a scenario.
struct AprioriConstants {
  double phi_sup = 0.0;        // ||Phi||_C
  double phi_l2_sq = 0.0;      // ||Phi||_2^2
  double phi_grad_sq = 0.0;    // sum_k ||grad Phi_k||_2^2
  double force_sup = 0.0;      // ||f||_C
  double force_l2_sq = 0.0;    // ||f||^2 in L_inf(0,T; L_2)
  double horizon = 0.0;
  double viscosity = 0.0;
  double a1 = 0.0;   // velocity sup bound
  double a = 0.0;    // energy bound
  double a2 = 0.0;   // dissipation bound
  double a3 = 0.0;   // convection / pressure-gradient bound
  double a4 = 0.0;   // growth rate of the stability bound
  double a5 = 0.0;   // time-derivative bound
  double a6 = 0.0;   // Laplacian bound
  double a7 = 0.0;   // gradient sup bound
  double a10 = 0.0;  // pressure-gradient sup bound
};

/// Derives every constant from the primary norms phi_sup, phi_l2_sq,
/// phi_grad_sq, force_sup, force_l2_sq, horizon and viscosity.
AprioriConstants apriori_constants(double phi_sup, double phi_l2_sq, double phi_grad_sq, double force_sup,
                                   double force_l2_sq, double horizon, double viscosity);
AprioriConstants apriori_constants(const Scenario& scenario);

/// Per stored state: energy maximum vs max(sup E at t = 0, sup E on the walls)
/// for unforced scenarios, per-component sup/inf vs the same bound built from
/// U_a (unforced), and ||U||_C vs A1 (all scenarios).
ClaimReport max_principle_report(const Trajectory& traj, double tol = 1e-8);

struct MaximumSite {
  std::array<int, 3> node{};
  std::size_t index = 0;
  double value = 0.0;
};

/// Interior nodes that are >= every neighbour (within plateau_tol) and
/// exceed at least one neighbour by more than plateau_tol. Neighbours are the
/// full Moore neighbourhood over the active directions, wrapped on periodic
/// grids; NoSlipBox wall nodes are never sites. A negative plateau_tol selects
/// 1e-12 * ||E||_inf.
std::vector<MaximumSite> find_interior_maxima(const ScalarField& e, double plateau_tol = -1.0);

/// Evaluates at each site: vanishing of grad U_a, grad P and grad E, the sign
/// of cos(gamma_b) = dE/dx_b / (|U| |dU/dx_b|) per active direction, and the
/// signs of the leading principal minors of the Hessian of E. Gradient
/// tolerances are max(factor * h_max * ||grad F||_inf, 1e-9) for the field F
/// concerned.
ClaimReport extremum_coincidence(const FlowState& state, const std::vector<MaximumSite>& sites,
                                 double factor = 10.0);

/// Relative residuals of the vector identities behind the pressure equation,
/// each ||lhs - rhs|| / max(||lhs||, ||rhs||), 0 when both sides vanish.
struct PressureIdentities {
  /// (U.grad)U = grad E - U x curl U
  double convection = 0.0;
  /// div((U.grad)U) = sum_ab dU_a/dx_b dU_b/dx_a
  double divergence = 0.0;
  /// sum_ab dU_a/dx_b dU_b/dx_a = Lap E - Lap R, R the potential of U x curl U
  double potential = 0.0;
  /// -Lap P = sum_ab dU_a/dx_b dU_b/dx_a
  double pressure = 0.0;
  /// int (Lap P)^2
  double laplacian_sq = 0.0;
  /// 9 sum_ab int |dU_a/dx_b|^4
  double gradient_fourth = 0.0;
};

PressureIdentities pressure_identity_residual(const FlowState& state);
ClaimReport pressure_identity_report(const Trajectory& traj, double tol = 1e-8);

/// A priori inequalities at every stored time t over [0, t]: energy,
/// dissipation, convection and pressure gradient, time derivative, Laplacian,
/// per-component gradient sup, pressure-gradient sup. Tolerance rel_tol * rhs.
/// The W^2_2 to Laplacian ratios for U and P are observations.
ClaimReport apriori_report(const Trajectory& traj, const AprioriConstants& consts, double rel_tol = 1e-9);

/// Twin runs from Phi and Phi + delta * noise (noise a random solenoidal
/// field of unit L2 norm, re-projected); per stored state
/// ||V(t)||^2 <= exp(A4 t) ||V(0)||^2 with V the difference.
ClaimReport stability_report(const Scenario& scenario, double delta, std::uint64_t seed, int stride = 1,
                             double tol = 0.0);

/// Energy-density equation residual norm per stored interval (observations)
/// and its L2(Q) norm.
ClaimReport energy_residual_report(const Trajectory& traj);

}  // namespace nsmp
