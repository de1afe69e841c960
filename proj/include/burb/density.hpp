#ifndef BURB_DENSITY_HPP
#define BURB_DENSITY_HPP

#include <vector>

#include "burb/bgamma.hpp"

namespace burb {

struct SupportInfo {
    enum class Kind { bounded, unbounded, degenerate };
    Kind kind = Kind::unbounded;
    double right_endpoint = 0.0;  // phi(inf)^t when bounded, the atom when degenerate
};

struct SmoothnessInfo {
    double n_phi = 0.0;  // +inf allowed
    double n_of_t = 0.0; // floor(n_phi * t) - 1, +inf when n_phi is
};

struct SectorInfo {
    enum class Method { drift_rule, regvar_rule, numeric };
    double theta = 0.0;  // in [0, pi/2]
    Method method = Method::numeric;
    bool unconverged = false;
    double sector_at(double t) const;  // min(theta * t, pi)
};

struct DensityPoint {
    double x = 0.0;
    double value = 0.0;
    double abs_error = 0.0;
};

struct ContourInfo {
    double c = 1.0;
    double b_used = 0.0;
};

struct DensityGrid {
    double t = 0.0;
    int order = 0;
    std::vector<DensityPoint> points;
    ContourInfo contour;  // of the last converged point
};

// Support of nu_t per the boundedness of phi.
SupportInfo support(const BernsteinFunction &phi, double t);

// Smoothness order: N_phi = inf for drift / Condition-j families, else
// v(0+)/phi(inf); n(t) = floor(N_phi t) - 1. Throws when phi is outside the
// applicable class or t <= 1/N_phi.
SmoothnessInfo smoothness_order(const BernsteinFunction &phi, double t);

// Sector half-angle Theta_phi: pi/2 under drift, alpha*pi/2 under declared
// regular variation, otherwise the numeric average of arg phi(1+iu).
SectorInfo theta_phi(const BernsteinFunction &phi, double b_max);

// Mellin-Barnes inversion of the density (order-n derivative) at x:
//   (-1)^n/(2 pi) Int x^{-(c+ib)-n} P_n(c+ib) W^t(c+ib) db
// with P_n the rising factorial polynomial. Returns (value, abs error).
DensityPoint mellin_barnes_density(const BernsteinGammaEvaluator &ev, double t, double x,
                                   int n, double tol, ContourInfo *contour_out = nullptr,
                                   double b_start = 0.0);

DensityGrid density_grid(const BernsteinGammaEvaluator &ev, double t, int n,
                         const std::vector<double> &xs, double tol);

// Density of X^t via the power identity sigma_t(x) = (1/t) x^{(1-t)/t} nu_1(x^{1/t}).
double power_density(const BernsteinGammaEvaluator &ev, double t, double x, double tol);

// Log-scale density f_t(y) = e^y nu_t(e^y) and its derivatives via the
// Stirling-number chain rule over e^{(k+1)y} nu_t^{(k)}(e^y).
double levy_density(const BernsteinGammaEvaluator &ev, double t, double y, int n, double tol);

// Chain-rule coefficients c_{n,k} with d^n/dy^n [e^y g(e^y)] =
// sum_k c_{n,k} e^{(k+1)y} g^{(k)}(e^y).
std::vector<double> log_chain_coefficients(int n);

// Conformance probe of the Laplace identity for phi(u) = u, where kappa is
// Lebesgue measure: |Int_0^inf e^{-uy} dy - phi'(u)/phi(u)|.
double kappa_check_identity(double u);

} // namespace burb

#endif
