// Copyright 2026 The respkern Authors
// SPDX-License-Identifier: Apache-2.0

#include "respkern/demos.hpp"

#include <algorithm>
#include <cmath>

#include "respkern/numerics.hpp"

namespace respkern {

namespace {

// Radial parts R_{nl}(r) = P(r) exp(-beta r) with polynomial P, so that
// derivatives stay in the same family.
struct RadialFunction {
  std::vector<double> poly;  // P(r) = sum poly[k] r^k
  double beta = 0;

  double eval(double r) const {
    double p = 0, rp = 1;
    for (double c : poly) {
      p += c * rp;
      rp *= r;
    }
    return p * std::exp(-beta * r);
  }
  RadialFunction derivative() const {
    std::vector<double> d(poly.size() + 1, 0.0);
    for (std::size_t k = 1; k < poly.size(); ++k) d[k - 1] += k * poly[k];
    for (std::size_t k = 0; k < poly.size(); ++k) d[k] -= beta * poly[k];
    while (d.size() > 1 && d.back() == 0.0) d.pop_back();
    return RadialFunction{d, beta};
  }
};

enum class Angular { s, px, py };

struct BasisFunction {
  std::string label;
  RadialFunction radial;
  Angular angular;
};

BasisFunction make_basis(const std::string& label) {
  const double c20 = 1.0 / (2.0 * std::sqrt(2.0));
  const double c21 = 1.0 / (2.0 * std::sqrt(6.0));
  const double c31 = 8.0 / (27.0 * std::sqrt(6.0));
  if (label == "2s") return {label, {{2.0 * c20, -c20}, 0.5}, Angular::s};
  if (label == "2p_x") return {label, {{0.0, c21}, 0.5}, Angular::px};
  if (label == "2p_y") return {label, {{0.0, c21}, 0.5}, Angular::py};
  if (label == "3p_x")
    return {label, {{0.0, c31, -c31 / 6.0}, 1.0 / 3.0}, Angular::px};
  fail("unsupported-label", "basis state '" + label + "'");
}

struct RadialRule {
  Quadrature q;
  double integrate(const std::function<double(double)>& f) const {
    double acc = 0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
      acc += q.weights[i] * f(q.nodes[i]);
    return acc;
  }
};

// <p_a| x |s_b> = (1/sqrt(3)) Int R_a R_b r^3 dr, from the angular factor
// Int (x/r)^2 dOmega = 4 pi / 3.
double dipole_element(const RadialRule& rule, const RadialFunction& rp,
                      const RadialFunction& rs) {
  return (1.0 / std::sqrt(3.0)) * rule.integrate([&](double r) {
           return rp.eval(r) * rs.eval(r) * r * r * r;
         });
}

// <p_a| d^3/dx^3 |s_b>. With f the radial part of the s state,
// d^3/dx^3 f = f''' u^3 + 3 f'' u(1-u^2)/r - 3 f' u(1-u^2)/r^2, u = x/r,
// and the angular integrals give
// sqrt(3) Int r^2 R_a [ f'''/5 + (2/5)(f''/r - f'/r^2) ] dr.
double d3x_element(const RadialRule& rule, const RadialFunction& rp,
                   const RadialFunction& rs) {
  RadialFunction d1 = rs.derivative();
  RadialFunction d2 = d1.derivative();
  RadialFunction d3 = d2.derivative();
  return std::sqrt(3.0) * rule.integrate([&](double r) {
           return r * r * rp.eval(r) *
                  (d3.eval(r) / 5.0 +
                   0.4 * (d2.eval(r) / r - d1.eval(r) / (r * r)));
         });
}

// <s| d^2/dx^2 |s> = Int r^2 R [ R''/3 + (2/3) R'/r ] dr.
double d2x_expectation(const RadialRule& rule, const RadialFunction& rs) {
  RadialFunction d1 = rs.derivative();
  RadialFunction d2 = d1.derivative();
  return rule.integrate([&](double r) {
    return r * r * rs.eval(r) * (d2.eval(r) / 3.0 + (2.0 / 3.0) * d1.eval(r) / r);
  });
}

double overlap_element(const RadialRule& rule, const BasisFunction& a,
                       const BasisFunction& b) {
  if (a.angular != b.angular) return 0.0;
  return rule.integrate(
      [&](double r) { return a.radial.eval(r) * b.radial.eval(r) * r * r; });
}

}  // namespace

int HydrogenSpace::index_of_basis(const std::string& label) const {
  auto it = std::find(basis.begin(), basis.end(), label);
  if (it == basis.end()) fail("unsupported-label", "basis '" + label + "'");
  return static_cast<int>(it - basis.begin());
}

int HydrogenSpace::index_of_op(const std::string& label) const {
  auto it = std::find(op_labels.begin(), op_labels.end(), label);
  if (it == op_labels.end()) fail("unsupported-label", "operator '" + label + "'");
  return static_cast<int>(it - op_labels.begin());
}

HydrogenSpace hydrogen_matrix_elements(const std::vector<std::string>& basis,
                                       const std::vector<std::string>& ops) {
  const Complex I(0, 1);
  RadialRule rule{gauss_half_line(200, 2.0)};
  std::vector<BasisFunction> funcs;
  funcs.reserve(basis.size());
  for (const auto& label : basis) funcs.push_back(make_basis(label));
  const int dim = static_cast<int>(funcs.size());

  HydrogenSpace space;
  space.basis = basis;
  space.op_labels = ops;
  space.overlaps = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      space.overlaps(i, j) = overlap_element(rule, funcs[i], funcs[j]);

  for (const auto& op : ops) {
    Matrix m = Matrix::Zero(dim, dim);
    if (op == "1") {
      m = Matrix::Identity(dim, dim);
    } else if (op == "x" || op == "y") {
      const Angular pa = (op == "x") ? Angular::px : Angular::py;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          if (funcs[i].angular == pa && funcs[j].angular == Angular::s) {
            double v = dipole_element(rule, funcs[i].radial, funcs[j].radial);
            m(i, j) = v;
            m(j, i) = v;
          }
        }
    } else if (op == "ipx3") {
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          if (funcs[i].angular == Angular::px &&
              funcs[j].angular == Angular::s) {
            double v = d3x_element(rule, funcs[i].radial, funcs[j].radial);
            m(i, j) = I * v;
            m(j, i) = -I * v;
          }
        }
    } else {
      fail("unsupported-label", "operator '" + op + "'");
    }
    space.elements.push_back(std::move(m));
  }

  // Operator-level commutator expectations on |2s>. The only non-commuting
  // pair is (x, ipx3) with [x, i d^3/dx^3] = -3 i d^2/dx^2.
  const int nops = static_cast<int>(ops.size());
  space.commutators = Matrix::Zero(nops, nops);
  auto has = [&](const std::string& s) {
    return std::find(ops.begin(), ops.end(), s) != ops.end();
  };
  bool have_2s =
      std::find(basis.begin(), basis.end(), std::string("2s")) != basis.end();
  if (have_2s && has("x") && has("ipx3")) {
    const RadialFunction r2s = make_basis("2s").radial;
    Complex val = -3.0 * I * d2x_expectation(rule, r2s);
    int ix = space.index_of_op("x");
    int ip = space.index_of_op("ipx3");
    space.commutators(ix, ip) = val;
    space.commutators(ip, ix) = -val;
  }
  return space;
}

HydrogenKernelCases hydrogen_example_kernels() {
  HydrogenKernelCases out;
  const std::vector<std::string> basis3 = {"2s", "2p_x", "2p_y"};
  const std::vector<std::string> basis4 = {"2s", "2p_x", "2p_y", "3p_x"};
  const std::vector<double> s_samples = {0.5, 1.0, 2.0};

  auto to_set = [](const HydrogenSpace& hs) {
    OperatorSet set;
    for (std::size_t i = 0; i < hs.elements.size(); ++i)
      set.ops.push_back(ManyBodyOperator{hs.op_labels[i], hs.elements[i],
                                         std::nullopt});
    return set;
  };
  auto degenerate_gs = [](int dim, double omega_last) {
    Matrix h = Matrix::Zero(dim, dim);
    if (omega_last > 0) h(dim - 1, dim - 1) = omega_last;
    GroundStateSolution gs = solve_ground(ManyBodyOperator{"H0", h, {}});
    Vector psi0 = Vector::Zero(dim);
    psi0(0) = 1.0;  // |2s>
    set_initial_state(gs, psi0);
    return gs;
  };

  // (a) {1, x, y} on the fully degenerate 3-space.
  {
    HydrogenSpace hs = hydrogen_matrix_elements(basis3, {"1", "x", "y"});
    OperatorSet set = to_set(hs);
    GroundStateSolution gs = degenerate_gs(3, 0.0);
    KernelOptions opts;
    opts.commutator_expectations = hs.commutators;
    out.case_a = kernel_by_conditions(set, gs, opts);
    TransitionMoments tm = transition_moments(set, gs);
    auto chi = kernel_by_chi_nullspace(tm, s_samples);
    out.agreement_a =
        max_principal_sine(out.case_a.basis_matrix(), chi.basis_matrix());
    for (int gi = 0; gi < 100; ++gi) {
      double t = 0.1 * gi;
      for (int i = 0; i < set.size(); ++i)
        for (int j = 0; j < set.size(); ++j)
          out.chi_grid_max_a =
              std::max(out.chi_grid_max_a, std::abs(chi_time(tm, i, j, t)));
    }
  }

  // (b) |3p_x> added at Omega = 5/72 (the hydrogen E3 - E2 splitting);
  // the x operator now violates the first condition.
  {
    HydrogenSpace hs = hydrogen_matrix_elements(basis4, {"1", "x", "y"});
    OperatorSet set = to_set(hs);
    GroundStateSolution gs = degenerate_gs(4, 5.0 / 72.0);
    KernelOptions opts;
    opts.commutator_expectations = hs.commutators;
    out.case_b = kernel_by_conditions(set, gs, opts);
    TransitionMoments tm = transition_moments(set, gs);
    auto chi = kernel_by_chi_nullspace(tm, s_samples);
    out.agreement_b =
        max_principal_sine(out.case_b.basis_matrix(), chi.basis_matrix());
  }

  // (c) operators {1, x, y, ipx3} on the 3-space; the commutator condition
  // expels both x and ipx3.
  {
    HydrogenSpace hs = hydrogen_matrix_elements(basis3, {"1", "x", "y", "ipx3"});
    OperatorSet set = to_set(hs);
    GroundStateSolution gs = degenerate_gs(3, 0.0);
    KernelOptions opts;
    opts.commutator_expectations = hs.commutators;
    out.case_c = kernel_by_conditions(set, gs, opts);
    TransitionMoments tm = transition_moments(set, gs);
    auto chi = kernel_by_chi_nullspace(tm, s_samples);
    out.agreement_c =
        max_principal_sine(out.case_c.basis_matrix(), chi.basis_matrix());
    out.comm_x_ipx3 =
        hs.commutators(hs.index_of_op("x"), hs.index_of_op("ipx3"));
  }
  return out;
}

GridWavefunction GridWavefunction::sample(
    const std::function<double(double, double)>& f, double half_extent, int n) {
  GridWavefunction w;
  w.spacing = 2.0 * half_extent / (n - 1);
  w.origin = -half_extent;
  w.values = RealMatrix(n, n);
  double norm2 = 0;
  for (int i = 0; i < n; ++i) {
    double x = w.origin + i * w.spacing;
    double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    for (int j = 0; j < n; ++j) {
      double y = w.origin + j * w.spacing;
      double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      double v = f(x, y);
      w.values(i, j) = v;
      norm2 += wx * wy * v * v;
    }
  }
  norm2 *= w.spacing * w.spacing;
  w.values /= std::sqrt(norm2);
  return w;
}

DivergenceTable nodal_potential_divergence(
    const std::function<double(double, double)>& psi0,
    const std::function<double(double, double)>& psiK, const Strip& strip,
    int base_n, int refinements, double half_extent) {
  DivergenceTable table;
  int n = base_n;
  for (int level = 0; level <= refinements; ++level) {
    GridWavefunction w0 = GridWavefunction::sample(psi0, half_extent, n);
    GridWavefunction wk = GridWavefunction::sample(psiK, half_extent, n);
    const double h = w0.spacing;
    const double floor0 = 1e-14 * w0.values.cwiseAbs().maxCoeff();
    double integral = 0;
    int used = 0, in_strip = 0;
    for (int i = 0; i < n; ++i) {
      double x = w0.origin + i * h;
      if (std::abs(x - strip.x_center) > strip.half_width) continue;
      for (int j = 0; j < n; ++j) {
        double y = w0.origin + j * h;
        if (y < strip.y_lo || y > strip.y_hi) continue;
        ++in_strip;
        double p0 = w0.values(i, j);
        if (std::abs(p0) <= floor0) continue;  // exclude the nodal set itself
        double v = wk.values(i, j) / p0;
        integral += h * h * v * v;
        ++used;
      }
    }
    if (in_strip == 0 || used == 0)
      fail("coincident-nodes",
           "psi0 vanishes on the whole strip, the ratio potential is undefined");
    table.grid_sizes.push_back(n);
    table.integrals.push_back(integral);
    n = 2 * n - 1;
  }
  for (std::size_t k = 0; k + 1 < table.integrals.size(); ++k)
    table.ratios.push_back(table.integrals[k + 1] / table.integrals[k]);
  table.divergent = !table.ratios.empty() &&
                    std::all_of(table.ratios.begin(), table.ratios.end(),
                                [](double r) { return r >= 1.5; });
  return table;
}

}  // namespace respkern
