#include "psm/matching.hpp"

#include "psm/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace psm {

double MatchSolution::param(const std::string &name) const {
  for (const auto &p : param_map)
    if (p.name == name) return p.value;
  throw Error(ErrorCode::invalid_parameter, "no parameter named '" + name + "' in match");
}

double matching_lhs(const DimensionlessTISE &tise, double x) {
  const double b = tise.b(x);
  return tise.k_squared(x) + 0.5 * tise.b_prime(x) - 0.25 * b * b;
}

namespace {

struct PathIntegrand {
  const RealFunction &P;
  const RealFunction &Q;
  const RealFunction &b;
  double reference_sign;

  double operator()(double t) const {
    const double p = P(t);
    if (p == 0.0 || !std::isfinite(p) || (p > 0.0 ? 1.0 : -1.0) != reference_sign) {
      std::ostringstream os;
      os << "template coefficient P vanishes or changes sign on the path at x = " << t;
      throw Error(ErrorCode::singular_path, os.str());
    }
    const double value = (Q(t) + b(t) * p) / (2.0 * p);
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os << "integrating-factor integrand is not finite at x = " << t;
      throw Error(ErrorCode::singular_path, os.str());
    }
    return value;
  }
};

double simpson(double fa, double fm, double fb, double width) {
  return width / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const PathIntegrand &f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrating_factor(const RealFunction &template_P, const RealFunction &template_Q,
                          const RealFunction &b, double x, double x_ref,
                          const IntegratingFactorOptions &options) {
  const double p_ref = template_P(x_ref);
  if (p_ref == 0.0 || !std::isfinite(p_ref)) {
    std::ostringstream os;
    os << "template coefficient P vanishes at the reference point x = " << x_ref;
    throw Error(ErrorCode::singular_path, os.str());
  }
  const PathIntegrand f{template_P, template_Q, b, p_ref > 0.0 ? 1.0 : -1.0};
  if (x == x_ref) return 1.0;
  const double fa = f(x_ref);
  const double fb = f(x);
  const double fm = f(0.5 * (x_ref + x));
  const double whole = simpson(fa, fm, fb, x - x_ref);
  return std::exp(adaptive_simpson(f, x_ref, x, fa, fm, fb, whole, options.tolerance,
                                   options.max_depth));
}

double integrating_factor(const TemplateODE &t, const RealFunction &b, double x,
                          double x_ref, const IntegratingFactorOptions &options) {
  const Interval dom = t.domain();
  if (!dom.interior(x) || !dom.interior(x_ref)) {
    std::ostringstream os;
    os << "integration path [" << x_ref << ", " << x << "] leaves the interior of the "
       << to_string(t.family) << " domain";
    throw Error(ErrorCode::singular_path, os.str());
  }
  const RealFunction P = [&](double s) { return template_coefficients(t, s).P; };
  const RealFunction Q = [&](double s) { return template_coefficients(t, s).Q; };
  return integrating_factor(P, Q, b, x, x_ref, options);
}

double verify_match(const DimensionlessTISE &tise, const TemplateODE &t,
                    const Grid &grid, const VerifyOptions &options) {
  const double margin = options.singular_margin * (grid.x_max() - grid.x_min());
  const Interval dom = t.domain();
  const auto singular = t.singular_points();
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.at(i);
    bool bad = !dom.interior(x) || !tise.domain.interior(x);
    for (double s : singular) bad = bad || std::abs(x - s) < margin;
    if (bad) {
      std::ostringstream os;
      os << "verification node x = " << x << " is within " << margin
         << " of a singular point or outside the domain";
      throw Error(ErrorCode::grid, os.str());
    }
    worst = std::max(worst, std::abs(matching_lhs(tise, x) - template_G(t, x)));
  }
  return worst;
}

RealFunction wavefunction_from_match(const MatchSolution &solution,
                                     const PolynomialSpec &spec) {
  spec.validate();
  const TemplateODE &t = solution.template_ode;
  if (spec.family != t.family || static_cast<double>(spec.degree) != t.degree ||
      std::abs(spec.order - t.order) > 1e-12 * std::max(1.0, std::abs(t.order))) {
    std::ostringstream os;
    os << "polynomial spec (" << to_string(spec.family) << ", " << spec.degree << ", "
       << spec.order << ") does not match the solved template ("
       << to_string(t.family) << ", " << t.degree << ", " << t.order << ")";
    throw Error(ErrorCode::invalid_spec, os.str());
  }
  return [g = solution.g, spec](double x) { return g(x) * eval_polynomial(spec, x); };
}

MorseBranchAssessment assess_morse_branch(double delta, double epsilon,
                                          MorseBranch branch) {
  MorseBranchAssessment out;
  if (!(epsilon <= 0.0)) {
    out.reason = "sqrt(-eps) is not real for eps > 0: no bound state";
    out.a = out.c = std::nan("");
    return out;
  }
  const double s = std::sqrt(-epsilon);
  const double sign = branch == MorseBranch::retained ? 1.0 : -1.0;
  out.a = 0.5 - delta + sign * s;
  out.c = 1.0 + sign * 2.0 * s;

  const double n = -out.a;
  const bool integral_a =
      std::abs(n - std::round(n)) <= 1e-9 * std::max(1.0, std::abs(n)) && n > -1e-9;
  std::ostringstream os;
  if (!integral_a) {
    os << "a = " << out.a << " is not a non-positive integer: 1F1 does not terminate";
  } else if (!(out.c > 0.0)) {
    os << "c = " << out.c << " is not positive";
  } else if (branch == MorseBranch::rejected) {
    os << "polynomial at this point, but the branch admits at most one state "
          "(count does not increase with delta)";
  } else if (!(s > 0.0)) {
    os << "sqrt(-eps) = 0 sits at the dissociation threshold";
  } else {
    out.admissible = true;
    os << "a = -" << std::round(n) << " and c > 0: terminating polynomial";
  }
  out.reason = os.str();
  return out;
}

int morse_admissible_count(double delta, MorseBranch branch) {
  int count = 0;
  if (branch == MorseBranch::retained) {
    // sqrt(-eps) = delta - 1/2 - n > 0
    for (int n = 0; delta - 0.5 - n > 0.0; ++n) ++count;
  } else {
    // sqrt(-eps) = n + 1/2 - delta >= 0 and c = 1 - 2 sqrt(-eps) > 0
    for (int n = 0; n < delta; ++n) {
      const double s = n + 0.5 - delta;
      if (s >= 0.0 && 1.0 - 2.0 * s > 0.0) ++count;
    }
  }
  return count;
}

} // namespace psm
