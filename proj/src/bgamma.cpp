#include "burb/bgamma.hpp"

#include <cmath>

#include "burb/errors.hpp"
#include "burb/quadrature.hpp"

namespace burb {

namespace {

void kahan_add(double &sum, double &comp, double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

} // namespace

// ---------------------------------------------------------------------------
// gamma_phi

GammaPhiResult compute_gamma_phi(const BernsteinFunction &phi, double tol) {
    if (phi.is_constant())
        throw domain_error("compute_gamma_phi: phi must be non-constant");
    if (!(tol > 0.0)) throw domain_error("compute_gamma_phi: tol must be positive");

    auto r = [&](double u) { return phi.log_derivative(u); };

    double sum = 0.0, comp = 0.0;
    std::size_t n = 0;
    double prev_est = std::numeric_limits<double>::quiet_NaN();
    double prev_step = std::numeric_limits<double>::infinity();
    GammaPhiResult out;
    constexpr std::size_t cap = std::size_t(1) << 22;

    for (std::size_t target = 64; target <= cap; target *= 2) {
        while (n < target) {
            ++n;
            kahan_add(sum, comp, r(static_cast<double>(n)));
        }
        const double nn = static_cast<double>(n);
        const double lo = sum - std::log(phi.eval(nn + 1.0));
        const double hi = sum - std::log(phi.eval(nn));

        // Euler-Maclaurin corrected estimate: hi - r/2 - r'/12 + r'''/720,
        // with r' from the 4th-order five-point stencil.
        const double h = std::max(0.5, nn / 64.0);
        const double r0 = r(nn);
        const double rm2 = r(nn - 2.0 * h), rm1 = r(nn - h);
        const double rp1 = r(nn + h), rp2 = r(nn + 2.0 * h);
        const double rp = (-rp2 + 8.0 * rp1 - 8.0 * rm1 + rm2) / (12.0 * h);
        const double rppp = (rp2 - 2.0 * rp1 + 2.0 * rm1 - rm2) / (2.0 * h * h * h);
        double est = hi - 0.5 * r0 - rp / 12.0 + rppp / 720.0;
        est = std::min(std::max(est, lo), hi);

        const double width = hi - lo;
        const double step = std::isnan(prev_est)
                                ? width
                                : std::max(std::fabs(est - prev_est), 1e-16);
        out.value = est;
        out.error_bound = std::min(std::max(step, prev_step / 4.0), width);
        if (out.error_bound < tol) return out;
        prev_est = est;
        prev_step = step;
    }
    throw convergence_error("compute_gamma_phi", tol, out.error_bound);
}

// ---------------------------------------------------------------------------
// Moments

double MomentSequence::value(int n) const { return std::exp(log_values.at(n)); }

MomentSequence moments(const BernsteinFunction &phi, double t, int n_max) {
    if (t < 0.0 || n_max < 0) throw domain_error("moments: requires t >= 0, n_max >= 0");
    MomentSequence seq;
    seq.t = t;
    seq.log_values.resize(n_max + 1);
    double acc = 0.0, comp = 0.0;
    seq.log_values[0] = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        kahan_add(acc, comp, std::log(phi.eval(static_cast<double>(n))));
        seq.log_values[n] = t * acc;
    }
    return seq;
}

// ---------------------------------------------------------------------------
// Evaluator

BernsteinGammaEvaluator::BernsteinGammaEvaluator(BernsteinFunction phi, double tol)
    : phi_(std::move(phi)), tol_(tol) {
    if (phi_.is_constant())
        throw domain_error("BernsteinGammaEvaluator: constant family not supported");
    if (!(tol_ > 0.0)) throw domain_error("BernsteinGammaEvaluator: tol must be positive");

    // tol/100 per the caching policy, floored at the lgamma roundoff level of
    // the ratio families.
    gamma_ = compute_gamma_phi(phi_, std::max(tol_ / 100.0, 1e-13));

    const std::size_t cache =
        phi_.family() == BernsteinFunction::Family::generic ? 512 : 8192;
    log_phi_k_.resize(cache);
    ratio_k_.resize(cache);
    for (std::size_t k = 1; k <= cache; ++k) {
        const double u = static_cast<double>(k);
        log_phi_k_[k - 1] = std::log(phi_.eval(u));
        ratio_k_[k - 1] = phi_.log_derivative(u);
    }
}

double BernsteinGammaEvaluator::log_phi_at(std::size_t k) const {
    if (k <= log_phi_k_.size()) return log_phi_k_[k - 1];
    return std::log(phi_.eval(static_cast<double>(k)));
}

double BernsteinGammaEvaluator::ratio_at(std::size_t k) const {
    if (k <= ratio_k_.size()) return ratio_k_[k - 1];
    return phi_.log_derivative(static_cast<double>(k));
}

// Tail of the log-product beyond K: sum_{k>K} [F(k) - F(k+z) + z F'(k)] with
// F = Log phi. Euler-Maclaurin: the integral reduces to a segment integral
// z*int_0^1 [F(a+sz) - F(a)] ds with a = K+1, plus endpoint derivative terms.
cdouble BernsteinGammaEvaluator::tail_correction(std::size_t K, cdouble z) const {
    const double a = static_cast<double>(K + 1);
    auto F = [&](cdouble w) { return std::log(phi_.eval_complex(w)); };
    const double Fa = log_phi_at(K + 1);

    const double quad_tol = tol_ / (20.0 * std::max(1.0, std::abs(z)));
    auto seg = integrate<cdouble>(
        [&](double s) { return F(a + s * z) - Fa; }, 0.0, 1.0, quad_tol, 4000);

    auto g = [&](double u) {
        return F(u + z) - std::log(phi_.eval(u)) - z * phi_.log_derivative(u);
    };
    const cdouble ga = F(a + z) - Fa - z * ratio_at(K + 1);
    const cdouble gp = (g(a + 0.5) - g(a - 0.5));  // h = 1/2 central difference

    return z * seg.value - 0.5 * ga + gp / 12.0;
}

WEval BernsteinGammaEvaluator::log_W_shifted(cdouble z) const {
    std::size_t K = std::max<std::size_t>(64, 2 * static_cast<std::size_t>(std::ceil(std::abs(z))));
    constexpr std::size_t K_cap = std::size_t(1) << 21;

    const cdouble base = -gamma_.value * z - std::log(phi_.eval_complex(z));

    cdouble sum = 0.0;
    std::size_t done = 0;
    auto extend = [&](std::size_t K_new) {
        for (std::size_t k = done + 1; k <= K_new; ++k) {
            const double u = static_cast<double>(k);
            sum += log_phi_at(k) - std::log(phi_.eval_complex(u + z)) + z * ratio_at(k);
        }
        done = K_new;
    };

    extend(K);
    cdouble candidate = base + sum + tail_correction(K, z);
    double prev_change = std::numeric_limits<double>::infinity();
    while (true) {
        const std::size_t K_next = 2 * K;
        if (K_next > K_cap) {
            return {candidate, std::min(prev_change, tol_), true};
        }
        extend(K_next);
        const cdouble next = base + sum + tail_correction(K_next, z);
        const double change = std::abs(next - candidate);
        K = K_next;
        candidate = next;
        if (change <= tol_ / 10.0) return {candidate, change, false};
        // Rounding of the partial sums floors the achievable change at about
        // sqrt(K)*eps*|z|; once the changes stop halving near that floor,
        // more terms only accumulate noise.
        if (change >= 0.5 * prev_change && change <= 1e3 * tol_)
            return {candidate, change, false};
        prev_change = change;
    }
}

WEval BernsteinGammaEvaluator::log_W_detailed(cdouble z) const {
    if (!(z.real() > 0.0)) throw domain_error("eval_W: requires Re z > 0");
    if (z.real() >= 1.0) return log_W_shifted(z);
    // Pre-shift: evaluate at z+N and unwind through the functional equation.
    const int N = static_cast<int>(std::ceil(2.0 - z.real()));
    WEval shifted = log_W_shifted(z + static_cast<double>(N));
    cdouble unwind = 0.0;
    for (int j = 0; j < N; ++j)
        unwind += std::log(phi_.eval_complex(z + static_cast<double>(j)));
    shifted.log_value -= unwind;
    return shifted;
}

cdouble BernsteinGammaEvaluator::log_W(cdouble z) const { return log_W_detailed(z).log_value; }

cdouble BernsteinGammaEvaluator::eval_W(cdouble z) const { return std::exp(log_W(z)); }

cdouble BernsteinGammaEvaluator::eval_W_power(double t, cdouble z) const {
    if (t == 0.0) {
        if (!(z.real() > 0.0)) throw domain_error("eval_W_power: requires Re z > 0");
        return 1.0;
    }
    return std::exp(t * log_W(z));
}

cdouble BernsteinGammaEvaluator::psi(cdouble z) const {
    if (!(z.real() > -1.0)) throw domain_error("psi: requires Re z > -1");
    return log_W(z + 1.0);
}

// ---------------------------------------------------------------------------
// Stirling route

double stirling_G(const BernsteinFunction &phi, double x) {
    if (!(x > 0.0)) throw domain_error("stirling_G: requires x > 0");
    auto res = integrate<double>([&](double r) { return std::log(phi.eval(r)); }, 1.0, x,
                                 1e-11 * std::max(1.0, std::fabs(x)), 4000);
    return res.value;
}

CPhiResult calibrate_C_phi(const BernsteinFunction &phi) {
    if (std::isfinite(phi.phi_infinity()))
        throw domain_error("calibrate_C_phi: asymptotic regime absent for bounded phi");

    BernsteinGammaEvaluator ev(phi, 1e-12);
    auto ratio = [&](double n) {
        const double logW = ev.log_W(cdouble(n + 1.0, 0.0)).real();
        return std::exp(logW - 0.5 * std::log(phi.eval(n)) - stirling_G(phi, n));
    };
    const double r20 = ratio(20.0), r40 = ratio(40.0), r80 = ratio(80.0);
    const double rich1 = 2.0 * r40 - r20;
    const double rich2 = 2.0 * r80 - r40;

    // Head normalization: the ratio limit is C_phi * phi(1) * e^{-I} with
    // I = int_k^{phi(1)} varphi(r)/r dr = int_0^1 u phi'(u)/phi(u) du.
    auto head = integrate<double>(
        [&](double u) { return u * phi.log_derivative(u); }, 0.0, 1.0, 1e-12, 4000);
    const double factor = std::exp(head.value) / phi.eval(1.0);

    CPhiResult out;
    out.ratio_limit = rich2;
    out.c_phi = rich2 * factor;
    out.error_estimate = std::fabs(rich2 - rich1) * factor;
    return out;
}

double stirling_asymptotic(const BernsteinFunction &phi, double n) {
    if (!(n >= 1.0)) throw domain_error("stirling_asymptotic: requires n >= 1");
    const CPhiResult cal = calibrate_C_phi(phi);
    return cal.ratio_limit * std::sqrt(phi.eval(n)) * std::exp(stirling_G(phi, n));
}

} // namespace burb
