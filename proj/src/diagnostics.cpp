#include "nsmp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <nlohmann/json.hpp>

#include "nsmp/errors.hpp"
#include "nsmp/helmholtz.hpp"
#include "nsmp/operators.hpp"
#include "nsmp/random_fields.hpp"

namespace nsmp {

std::string to_string(Verdict v) { return v == Verdict::Pass ? "PASS" : "FLAG"; }

ClaimRecord make_record(std::string claim, double time, double lhs, double rhs, double tolerance,
                        std::optional<std::array<int, 3>> location) {
  ClaimRecord r;
  r.claim = std::move(claim);
  r.time = time;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.verdict = (r.margin < -tolerance || std::isnan(r.margin)) ? Verdict::Flag : Verdict::Pass;
  r.location = location;
  return r;
}

std::size_t ClaimReport::pass_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const ClaimRecord& r) { return r.verdict == Verdict::Pass; }));
}

std::size_t ClaimReport::flag_count() const { return records.size() - pass_count(); }

const ClaimRecord* ClaimReport::first_flag(const std::string& claim) const {
  for (const ClaimRecord& r : records)
    if (r.claim == claim && r.verdict == Verdict::Flag) return &r;
  return nullptr;
}

namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string indexed(const std::string& name, int i) { return name + "[" + std::to_string(i) + "]"; }

}  // namespace

void write_json(std::ostream& os, const ClaimReport& report) {
  nlohmann::json j;
  j["kind"] = report.kind;
  j["scenario"] = report.scenario;
  j["seed"] = report.seed;
  nlohmann::json recs = nlohmann::json::array();
  for (const ClaimRecord& r : report.records) {
    nlohmann::json e{{"claim", r.claim},       {"time", number(r.time)},     {"lhs", number(r.lhs)},
                     {"rhs", number(r.rhs)},   {"margin", number(r.margin)}, {"verdict", to_string(r.verdict)},
                     {"tolerance", number(r.tolerance)}};
    if (r.location) e["location"] = *r.location;
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);
  nlohmann::json obs = nlohmann::json::array();
  for (const Observation& o : report.observations)
    obs.push_back({{"name", o.name}, {"time", number(o.time)}, {"value", number(o.value)}});
  j["observations"] = std::move(obs);
  os << j.dump(2) << '\n';
}

void write_csv(std::ostream& os, const ClaimReport& report) {
  os << "# scenario=" << report.scenario << ", seed=" << report.seed << '\n';
  os << "claim,time,lhs,rhs,margin,verdict,tolerance,i,j,k\n";
  for (const ClaimRecord& r : report.records) {
    os << r.claim << ',' << csv_number(r.time) << ',' << csv_number(r.lhs) << ',' << csv_number(r.rhs) << ','
       << csv_number(r.margin) << ',' << to_string(r.verdict) << ',' << csv_number(r.tolerance);
    if (r.location)
      os << ',' << (*r.location)[0] << ',' << (*r.location)[1] << ',' << (*r.location)[2];
    else
      os << ",,,";
    os << '\n';
  }
  for (const Observation& o : report.observations)
    os << o.name << ',' << csv_number(o.time) << ',' << csv_number(o.value) << ",,,OBSERVED,,,,\n";
}

AprioriConstants apriori_constants(double phi_sup, double phi_l2_sq, double phi_grad_sq, double force_sup,
                                   double force_l2_sq, double horizon, double viscosity) {
  AprioriConstants c;
  c.phi_sup = phi_sup;
  c.phi_l2_sq = phi_l2_sq;
  c.phi_grad_sq = phi_grad_sq;
  c.force_sup = force_sup;
  c.force_l2_sq = force_l2_sq;
  c.horizon = horizon;
  c.viscosity = viscosity;
  const double t = horizon, mu = viscosity;
  c.a1 = phi_sup + t * force_sup;
  c.a = 2.0 * phi_l2_sq + 4.0 * t * t * force_l2_sq;
  c.a2 = phi_l2_sq / mu + 2.0 * t * t * force_l2_sq / mu;
  c.a3 = 9.0 * c.a1 * c.a1 * c.a2;
  c.a4 = 3.0 * c.a1 * c.a1 / (4.0 * mu);
  c.a5 = mu * phi_grad_sq + 5.0 * c.a3 + 2.0 * t * force_l2_sq;
  c.a6 = c.a5 / (mu * mu);
  c.a7 = c.a5 / mu;
  c.a10 = 3.0 * c.a1 * c.a1 * c.a7;
  return c;
}

AprioriConstants apriori_constants(const Scenario& s) {
  double grad_sq = 0.0;
  for (int k = 0; k < 3; ++k) {
    const VectorField g = gradient(s.phi[k]);
    grad_sq += inner_l2(g, g);
  }
  return apriori_constants(norm_linf(s.phi), inner_l2(s.phi, s.phi), grad_sq, norm_linf(s.force),
                           inner_l2(s.force, s.force), s.horizon(), s.viscosity());
}

namespace {

struct Extremum {
  double value;
  std::size_t index;
};

Extremum arg_max(const ScalarField& s) {
  Extremum e{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] > e.value) e = {s[i], i};
  return e;
}

Extremum arg_min(const ScalarField& s) {
  Extremum e{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] < e.value) e = {s[i], i};
  return e;
}

/// Max and min over NoSlipBox wall nodes; empty range on periodic grids.
std::pair<double, double> wall_range(const ScalarField& s) {
  const GridSpec& g = s.grid();
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  if (g.bc != Boundary::NoSlipBox) return {hi, lo};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto [a, b, c] = g.unravel(i);
    if (!g.on_boundary(a, b, c)) continue;
    hi = std::max(hi, s[i]);
    lo = std::min(lo, s[i]);
  }
  return {hi, lo};
}

}  // namespace

ClaimReport max_principle_report(const Trajectory& traj, double tol) {
  ClaimReport rep;
  rep.kind = "max_principle";
  if (traj.states.empty()) return rep;
  const bool unforced = !traj.scenario || traj.scenario->spec.forcing.is_zero();
  if (traj.scenario) rep.scenario = traj.scenario->spec.name;
  const GridSpec& g = traj.states[0].velocity.grid();

  double a1;
  if (traj.scenario) {
    a1 = norm_linf(traj.scenario->phi) + traj.scenario->horizon() * norm_linf(traj.scenario->force);
  } else {
    a1 = norm_linf(traj.states[0].velocity);
  }

  // Bounds from the initial slice and the lateral surface over the whole run.
  const ScalarField e0 = kinetic_energy_density(traj.states[0].velocity);
  double e_bound = e0.max();
  std::array<double, 3> upper{}, lower{};
  for (int a = 0; a < 3; ++a) {
    upper[a] = traj.states[0].velocity[a].max();
    lower[a] = traj.states[0].velocity[a].min();
  }
  for (const FlowState& st : traj.states) {
    e_bound = std::max(e_bound, wall_range(kinetic_energy_density(st.velocity)).first);
    for (int a = 0; a < 3; ++a) {
      const auto [hi, lo] = wall_range(st.velocity[a]);
      upper[a] = std::max(upper[a], hi);
      lower[a] = std::min(lower[a], lo);
    }
  }

  for (const FlowState& st : traj.states) {
    const VectorField& u = st.velocity;
    if (unforced) {
      const Extremum em = arg_max(kinetic_energy_density(u));
      rep.records.push_back(make_record("energy_max_principle", st.time, em.value, e_bound, tol, g.unravel(em.index)));
      for (int a = 0; a < 3; ++a) {
        const Extremum hi = arg_max(u[a]);
        rep.records.push_back(
            make_record(indexed("component_upper_bound", a + 1), st.time, hi.value, upper[a], tol, g.unravel(hi.index)));
        const Extremum lo = arg_min(u[a]);
        rep.records.push_back(make_record(indexed("component_lower_bound", a + 1), st.time, -lo.value, -lower[a], tol,
                                          g.unravel(lo.index)));
      }
    }
    std::size_t at = 0;
    double sup = 0.0;
    for (int a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < u[a].size(); ++i)
        if (std::abs(u[a][i]) > sup) sup = std::abs(u[a][i]), at = i;
    rep.records.push_back(make_record("velocity_sup_bound", st.time, sup, a1, tol, g.unravel(at)));
  }
  return rep;
}

std::vector<MaximumSite> find_interior_maxima(const ScalarField& e, double plateau_tol) {
  const GridSpec& g = e.grid();
  if (plateau_tol < 0.0) plateau_tol = 1e-12 * e.max_abs();
  std::vector<std::array<int, 3>> offsets;
  for (int dk = -1; dk <= 1; ++dk)
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0 && dk == 0) continue;
        if ((di && !g.active(0)) || (dj && !g.active(1)) || (dk && !g.active(2))) continue;
        offsets.push_back({di, dj, dk});
      }
  std::vector<MaximumSite> sites;
  if (offsets.empty()) return sites;
  const bool periodic = g.bc == Boundary::Periodic;
  for (std::size_t idx = 0; idx < e.size(); ++idx) {
    const auto node = g.unravel(idx);
    if (!periodic && g.on_boundary(node[0], node[1], node[2])) continue;
    const double v = e[idx];
    bool dominates = true, strict = false;
    for (const auto& off : offsets) {
      std::array<int, 3> nb{};
      for (int a = 0; a < 3; ++a) {
        nb[a] = node[a] + off[a];
        if (periodic) nb[a] = (nb[a] + g.n[a]) % g.n[a];
      }
      const double w = e.at(nb[0], nb[1], nb[2]);
      if (w > v + plateau_tol) {
        dominates = false;
        break;
      }
      if (v - w > plateau_tol) strict = true;
    }
    if (dominates && strict) sites.push_back({node, idx, v});
  }
  return sites;
}

namespace {

double determinant(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (m[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace

ClaimReport extremum_coincidence(const FlowState& state, const std::vector<MaximumSite>& sites, double factor) {
  ClaimReport rep;
  rep.kind = "coincidence";
  if (sites.empty()) return rep;
  const VectorField& u = state.velocity;
  const GridSpec& g = u.grid();
  const double t = state.time;
  const double h = g.max_spacing();

  const GradientTensor G = gradient_tensor(u);
  double grad_u_sup = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) grad_u_sup = std::max(grad_u_sup, G[a][b].max_abs());
  const ScalarField e = kinetic_energy_density(u);
  const VectorField grad_e = gradient(e);
  const VectorField grad_p = state.pressure.size() ? gradient(state.pressure) : VectorField(g);

  const auto tol_for = [&](double scale) { return std::max(factor * h * scale, 1e-9); };
  const double tol_u = tol_for(grad_u_sup);
  const double tol_p = tol_for(norm_linf(grad_p));
  const double tol_e = tol_for(norm_linf(grad_e));
  const double undefined_below = 1e-12 * e.max_abs();

  std::vector<int> dims;
  for (int a = 0; a < 3; ++a)
    if (g.active(a)) dims.push_back(a);
  std::vector<std::vector<ScalarField>> hess(dims.size(), std::vector<ScalarField>(dims.size()));
  for (std::size_t p = 0; p < dims.size(); ++p)
    for (std::size_t q = p; q < dims.size(); ++q) hess[p][q] = hess[q][p] = second_partial(e, dims[p], dims[q]);

  for (const MaximumSite& site : sites) {
    const std::size_t i = site.index;
    const auto loc = site.node;
    for (int a = 0; a < 3; ++a) {
      const double n = std::hypot(G[a][0][i], G[a][1][i], G[a][2][i]);
      rep.records.push_back(make_record(indexed("velocity_gradient_vanishes", a + 1), t, n, 0.0, tol_u, loc));
    }
    rep.records.push_back(make_record("pressure_gradient_vanishes", t,
                                      std::hypot(grad_p[0][i], grad_p[1][i], grad_p[2][i]), 0.0, tol_p, loc));
    rep.records.push_back(make_record("energy_gradient_vanishes", t,
                                      std::hypot(grad_e[0][i], grad_e[1][i], grad_e[2][i]), 0.0, tol_e, loc));

    const double speed = std::hypot(u[0][i], u[1][i], u[2][i]);
    for (int b : dims) {
      const double du = std::hypot(G[0][b][i], G[1][b][i], G[2][b][i]);
      const double denom = speed * du;
      if (denom < undefined_below) {
        rep.observations.push_back({indexed("cos_gamma", b + 1), t, std::numeric_limits<double>::quiet_NaN()});
        continue;
      }
      const double cos_gamma = grad_e[b][i] / denom;
      rep.observations.push_back({indexed("cos_gamma", b + 1), t, cos_gamma});
      rep.records.push_back(
          make_record(indexed("cos_gamma_nonzero", b + 1), t, tol_e / denom, std::abs(cos_gamma), 0.0, loc));
    }

    double scale = 0.0;
    for (auto& row : hess)
      for (auto& f : row) scale = std::max(scale, std::abs(f[i]));
    for (std::size_t k = 1; k <= dims.size(); ++k) {
      std::vector<std::vector<double>> m(k, std::vector<double>(k));
      for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q) m[p][q] = hess[p][q][i];
      const double minor = determinant(m);
      const double sign = (k % 2 == 1) ? -1.0 : 1.0;
      rep.records.push_back(make_record(indexed("hessian_minor_sign", static_cast<int>(k)), t, -sign * minor, 0.0,
                                        1e-9 * std::pow(scale, static_cast<double>(k)), loc));
    }
  }
  return rep;
}

namespace {

/// ||a - b|| over the larger of ||a||, ||b|| and a field-level scale, so that
/// identities whose two sides both vanish are not judged on roundoff.
double relative_residual(const ScalarField& a, const ScalarField& b, double scale) {
  const double d = std::max({norm_l2(a), norm_l2(b), scale});
  return d == 0.0 ? 0.0 : norm_l2(a - b) / d;
}

double relative_residual(const VectorField& a, const VectorField& b, double scale) {
  const double d = std::max({norm_l2(a), norm_l2(b), scale});
  return d == 0.0 ? 0.0 : norm_l2(a - b) / d;
}

}  // namespace

PressureIdentities pressure_identity_residual(const FlowState& state) {
  const VectorField& u = state.velocity;
  PressureIdentities r;
  const GradientTensor G = gradient_tensor(u);
  double s = 0.0, grad_sq = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const ScalarField sq = G[a][b] * G[a][b];
      s += inner_l2(sq, sq);
      grad_sq += inner_l2(G[a][b], G[a][b]);
    }
  const double quadratic_scale = std::sqrt(s);
  const double convection_scale = norm_linf(u) * std::sqrt(grad_sq);

  const VectorField lamb = cross(u, curl(u));
  const ScalarField e = kinetic_energy_density(u);
  const VectorField conv = convection(u);
  const ScalarField contraction = gradient_contraction(u);
  r.convection = relative_residual(conv, gradient(e) - lamb, convection_scale);
  r.divergence = relative_residual(divergence(conv), contraction, quadratic_scale);
  const ScalarField potential = leray_decompose(lamb).potential;
  r.potential = relative_residual(contraction, laplacian(e) - laplacian(potential), quadratic_scale);
  const ScalarField lap_p = laplacian(state.pressure);
  r.pressure = relative_residual(-1.0 * lap_p, contraction, quadratic_scale);
  r.laplacian_sq = inner_l2(lap_p, lap_p);
  r.gradient_fourth = 9.0 * s;
  return r;
}

ClaimReport pressure_identity_report(const Trajectory& traj, double tol) {
  ClaimReport rep;
  rep.kind = "pressure_identity";
  if (traj.scenario) rep.scenario = traj.scenario->spec.name;
  for (const FlowState& st : traj.states) {
    const PressureIdentities r = pressure_identity_residual(st);
    rep.records.push_back(make_record("convection_identity", st.time, r.convection, 0.0, tol));
    rep.records.push_back(make_record("divergence_identity", st.time, r.divergence, 0.0, tol));
    rep.records.push_back(make_record("potential_identity", st.time, r.potential, 0.0, tol));
    rep.records.push_back(make_record("pressure_relation", st.time, r.pressure, 0.0, tol));
    rep.records.push_back(
        make_record("pressure_laplacian_bound", st.time, r.laplacian_sq, r.gradient_fourth, 1e-12 * r.gradient_fourth));
  }
  return rep;
}

namespace {

double second_derivative_sq(const ScalarField& s) {
  double acc = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const ScalarField d = second_partial(s, a, b);
      acc += inner_l2(d, d);
    }
  return acc;
}

double w22_sq(const ScalarField& s) {
  const VectorField g = gradient(s);
  return inner_l2(s, s) + inner_l2(g, g) + second_derivative_sq(s);
}

/// Cumulative trapezoid integrals at every sample.
std::vector<double> cumulative(const std::vector<double>& t, const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t k = 1; k < v.size(); ++k) out[k] = out[k - 1] + 0.5 * (t[k] - t[k - 1]) * (v[k] + v[k - 1]);
  return out;
}

std::vector<double> running_max(const std::vector<double>& v) {
  std::vector<double> out(v);
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = std::max(out[k], out[k - 1]);
  return out;
}

std::vector<VectorField> time_derivative(const Trajectory& traj) {
  const auto& s = traj.states;
  const std::size_t n = s.size();
  std::vector<VectorField> ut;
  if (n == 1) {
    ut.emplace_back(s[0].velocity.grid());
    return ut;
  }
  const double dt = s[1].time - s[0].time;
  if (n == 2) {
    const VectorField d = (1.0 / dt) * (s[1].velocity - s[0].velocity);
    return {d, d};
  }
  ut.push_back((0.5 / dt) * (-3.0 * s[0].velocity + 4.0 * s[1].velocity - s[2].velocity));
  for (std::size_t k = 1; k + 1 < n; ++k) ut.push_back((0.5 / dt) * (s[k + 1].velocity - s[k - 1].velocity));
  ut.push_back((0.5 / dt) * (3.0 * s[n - 1].velocity - 4.0 * s[n - 2].velocity + s[n - 3].velocity));
  return ut;
}

}  // namespace

ClaimReport apriori_report(const Trajectory& traj, const AprioriConstants& c, double rel_tol) {
  ClaimReport rep;
  rep.kind = "apriori";
  if (traj.scenario) rep.scenario = traj.scenario->spec.name;
  const auto& states = traj.states;
  const std::size_t n = states.size();
  if (n == 0) return rep;

  std::vector<double> t(n), energy(n), dissipation(n), conv(n), grad_p(n), lap_u(n), ut(n);
  std::array<std::vector<double>, 3> grad_k;
  for (auto& v : grad_k) v.resize(n);
  std::vector<double> w22_u_k(n), w22_p_k(n), lap_p_k(n);
  const std::vector<VectorField> dudt = time_derivative(traj);
  for (std::size_t k = 0; k < n; ++k) {
    const VectorField& u = states[k].velocity;
    t[k] = states[k].time;
    energy[k] = inner_l2(u, u);
    for (int a = 0; a < 3; ++a) {
      const VectorField g = gradient(u[a]);
      grad_k[a][k] = inner_l2(g, g);
      w22_u_k[k] += w22_sq(u[a]);
    }
    dissipation[k] = grad_k[0][k] + grad_k[1][k] + grad_k[2][k];
    const VectorField cv = convection(u);
    conv[k] = inner_l2(cv, cv);
    const VectorField gp = gradient(states[k].pressure);
    grad_p[k] = inner_l2(gp, gp);
    const VectorField lu = laplacian(u);
    lap_u[k] = inner_l2(lu, lu);
    ut[k] = inner_l2(dudt[k], dudt[k]);
    const ScalarField lp = laplacian(states[k].pressure);
    lap_p_k[k] = inner_l2(lp, lp);
    w22_p_k[k] = w22_sq(states[k].pressure);
  }
  const auto energy_sup = running_max(energy);
  const auto dissipation_int = cumulative(t, dissipation);
  const auto conv_int = cumulative(t, conv);
  const auto grad_p_int = cumulative(t, grad_p);
  const auto lap_u_int = cumulative(t, lap_u);
  const auto ut_int = cumulative(t, ut);
  const auto grad_p_sup = running_max(grad_p);
  std::array<std::vector<double>, 3> grad_sup;
  for (int a = 0; a < 3; ++a) grad_sup[a] = running_max(grad_k[a]);

  const auto add = [&](const std::string& claim, double time, double lhs, double rhs) {
    rep.records.push_back(make_record(claim, time, lhs, rhs, rel_tol * std::abs(rhs)));
  };
  for (std::size_t k = 0; k < n; ++k) {
    add("energy_bound", t[k], energy_sup[k], c.a);
    add("dissipation_bound", t[k], dissipation_int[k], c.a2);
    add("pressure_convection_bound", t[k], grad_p_int[k], conv_int[k]);
    add("convection_bound", t[k], conv_int[k], c.a3);
    add("pressure_gradient_bound", t[k], grad_p_int[k], c.a3);
    add("time_derivative_bound", t[k], ut_int[k], c.a5);
    add("laplacian_bound", t[k], lap_u_int[k], c.a6);
    for (int a = 0; a < 3; ++a) add(indexed("gradient_sup_bound", a + 1), t[k], grad_sup[a][k], c.a7);
    add("pressure_gradient_sup_bound", t[k], grad_p_sup[k], c.a10);
  }
  // A single state has no time extent; its ratios use the state itself.
  const auto total = [&](const std::vector<double>& v) { return n == 1 ? v[0] : cumulative(t, v).back(); };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double lap_u_total = total(lap_u);
  const double lap_p_total = total(lap_p_k);
  rep.observations.push_back({"velocity_w22_to_laplacian_ratio", t.back(),
                              lap_u_total > 0 ? std::sqrt(total(w22_u_k) / lap_u_total) : nan});
  rep.observations.push_back({"pressure_w22_to_laplacian_ratio", t.back(),
                              lap_p_total > 0 ? std::sqrt(total(w22_p_k) / lap_p_total) : nan});
  for (const auto& [name, v] : std::initializer_list<std::pair<const char*, double>>{
           {"A", c.a}, {"A1", c.a1}, {"A2", c.a2}, {"A3", c.a3}, {"A4", c.a4}, {"A5", c.a5}, {"A6", c.a6},
           {"A7", c.a7}, {"A10", c.a10}})
    rep.observations.push_back({std::string("constant_") + name, 0.0, v});
  return rep;
}

ClaimReport stability_report(const Scenario& scenario, double delta, std::uint64_t seed, int stride, double tol) {
  ClaimReport rep;
  rep.kind = "stability";
  rep.scenario = scenario.spec.name;
  rep.seed = seed;
  const AprioriConstants c = apriori_constants(scenario);

  Scenario twin = scenario;
  if (delta != 0.0) {
    VectorField noise = random_solenoidal_field(scenario.grid(), seed);
    const double nn = norm_l2(noise);
    if (nn > 0.0) noise *= 1.0 / nn;
    VectorField phi = scenario.phi + delta * noise;
    if (scenario.grid().bc == Boundary::Periodic) phi = project_solenoidal(phi);
    zero_boundary(phi);
    twin.phi = std::move(phi);
  }
  const Trajectory a = run(scenario, {}, stride);
  const Trajectory b = run(twin, {}, stride);
  const VectorField v0 = b.states[0].velocity - a.states[0].velocity;
  const double v0_sq = inner_l2(v0, v0);
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    const VectorField v = b.states[k].velocity - a.states[k].velocity;
    const double tk = a.states[k].time;
    rep.records.push_back(make_record("perturbation_growth_bound", tk, inner_l2(v, v), std::exp(c.a4 * tk) * v0_sq,
                                      tol));
  }
  rep.observations.push_back({"constant_A4", 0.0, c.a4});
  rep.observations.push_back({"initial_perturbation_l2_sq", 0.0, v0_sq});
  return rep;
}

ClaimReport energy_residual_report(const Trajectory& traj) {
  ClaimReport rep;
  rep.kind = "energy_residual";
  if (traj.scenario) rep.scenario = traj.scenario->spec.name;
  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
    const double tm = 0.5 * (traj.states[k].time + traj.states[k + 1].time);
    rep.observations.push_back(
        {"energy_residual_l2", tm, norm_l2(energy_equation_residual(traj, static_cast<int>(k)))});
  }
  if (traj.states.size() > 1)
    rep.observations.push_back({"energy_residual_l2q", traj.states.back().time, energy_residual_norm(traj)});
  return rep;
}

}  // namespace nsmp
