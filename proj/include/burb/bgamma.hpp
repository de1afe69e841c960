#ifndef BURB_BGAMMA_HPP
#define BURB_BGAMMA_HPP

#include <vector>

#include "burb/bernstein.hpp"
#include "burb/special.hpp"

namespace burb {

struct GammaPhiResult {
    double value = 0.0;
    double error_bound = 0.0;
};

// gamma_phi = lim_n sum_{k<=n} phi'(k)/phi(k) - log phi(n). The monotone
// bracket
//   sum - log phi(n+1)  <=  gamma_phi  <=  sum - log phi(n)
// encloses the limit; an Euler-Maclaurin corrected midpoint converges at
// O(n^-6) and is clamped into the bracket.
GammaPhiResult compute_gamma_phi(const BernsteinFunction &phi, double tol);

struct MomentSequence {
    double t = 0.0;
    std::vector<double> log_values;  // log of (prod phi(k))^t, n = 0..N
    double value(int n) const;
    int n_max() const { return static_cast<int>(log_values.size()) - 1; }
};

// Integer moments (prod_{k=1}^n phi(k))^t, accumulated in log space.
MomentSequence moments(const BernsteinFunction &phi, double t, int n_max);

struct WEval {
    cdouble log_value;
    double err_estimate = 0.0;
    bool precision_warning = false;
};

class BernsteinGammaEvaluator {
public:
    explicit BernsteinGammaEvaluator(BernsteinFunction phi, double tol = 1e-12);

    const BernsteinFunction &phi() const { return phi_; }
    double tol() const { return tol_; }
    double gamma_phi() const { return gamma_.value; }
    double gamma_phi_error() const { return gamma_.error_bound; }

    // Continuous branch of Log W on Re z > 0 (log-modulus + argument tracked
    // from the real axis); this is the branch that makes W^t a Mellin
    // transform.
    cdouble log_W(cdouble z) const;
    WEval log_W_detailed(cdouble z) const;

    cdouble eval_W(cdouble z) const;
    cdouble eval_W_power(double t, cdouble z) const;

    // Psi(z) = Log W(z+1) for Re z > -1; e^{t Psi(n)} are the moments.
    cdouble psi(cdouble z) const;

private:
    BernsteinFunction phi_;
    double tol_;
    GammaPhiResult gamma_;
    std::vector<double> log_phi_k_;  // log phi(k), k = 1..cache
    std::vector<double> ratio_k_;    // phi'(k)/phi(k)

    double log_phi_at(std::size_t k) const;
    double ratio_at(std::size_t k) const;
    cdouble tail_correction(std::size_t K, cdouble z) const;
    WEval log_W_shifted(cdouble z) const;  // requires Re z >= 1
};

// G(x) = int_1^x log phi(r) dr by adaptive quadrature.
double stirling_G(const BernsteinFunction &phi, double x);

struct CPhiResult {
    double c_phi = 0.0;         // constant of the density asymptotics
    double ratio_limit = 0.0;   // lim W(n+1) / (sqrt(phi(n)) e^{G(n)})
    double error_estimate = 0.0;
};

// Richardson-extrapolated ratio W(n+1)/(sqrt(phi(n)) e^{G(n)}) at n = 20,40,80.
// The density constant differs from the raw ratio limit by the head factor
// e^{int_k^{phi(1)} varphi(r)/r dr} / phi(1).
CPhiResult calibrate_C_phi(const BernsteinFunction &phi);

// Predicted W(n+1) from the calibrated Stirling form ratio*sqrt(phi(n))e^{G(n)}.
double stirling_asymptotic(const BernsteinFunction &phi, double n);

} // namespace burb

#endif
