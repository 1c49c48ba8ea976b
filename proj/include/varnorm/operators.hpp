#pragma once

#include <vector>

#include "varnorm/function.hpp"
#include "varnorm/numerics.hpp"

namespace varnorm {

struct RadiusGrid {
  std::vector<double> radii;
  double r_min = 0.0;
  double r_max = 0.0;
  int count = 0;
};

/// `count` log-spaced radii in [r_min, r_max].
RadiusGrid make_radius_grid(double r_min = 1e-3, double r_max = 128.0, int count = 96);

/// Adds radii to a grid, keeping it sorted and duplicate free.
RadiusGrid with_radii(RadiusGrid rg, const std::vector<double>& extra);

/// max over the grid of (1/2r) int_{x-r}^{x+r} |f|; a lower bound on Mf(x).
double maximal(const RealFunction& f, double x, const RadiusGrid& rg,
               const QuadratureSettings& quad = {});

/// Integral of the unnormalized standard bump over [-1, 1], computed once.
double standard_bump_mass();

/// phi_eps(x) = c / eps * exp(-1 / (1 - (x/eps)^2)) with int phi_eps = 1.
struct Mollifier {
  double epsilon = 1.0;
  double normalization = 1.0;

  double operator()(double x) const;
};

Mollifier make_mollifier(double epsilon);

/// (phi_eps * f)(x).
double mollify(const RealFunction& f, double epsilon, double x);

/// (1/2r) int_{x-r}^{x+r} f.
double ball_average(const RealFunction& f, double x, double r);

/// x -> (phi_eps * f)(x) as a RealFunction; derivatives are the mollified
/// derivatives of f when f has them.
RealFunction mollified(const RealFunction& f, double epsilon);

/// x -> ball_average(f, x, r) as a RealFunction.
RealFunction averaged(const RealFunction& f, double r);

}  // namespace varnorm
