#include "burb/density.hpp"

#include <cmath>
#include <unordered_map>

#include "burb/errors.hpp"
#include "burb/quadrature.hpp"

namespace burb {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Contour abscissa. The representation holds for any c > 0; conditioning picks
// it. For bounded families the factor x^{-c} rewards a large c outside the
// support and near the inside edge, where the saddle sits at c ~ t/|log(x/R)|.
double choose_contour(const BernsteinFunction &phi, double t, double x) {
    const double pinf = phi.phi_infinity();
    if (!std::isfinite(pinf)) return 1.0;
    const double r = std::pow(pinf, t);
    if (x >= r) {
        const double lr = std::max(std::log(x / r), 1e-3);
        return std::min(3000.0, 1.0 + 21.0 * std::max(1.0, t) / lr);
    }
    if (x > 0.7 * r) {
        const double lr = std::max(-std::log(x / r), 1e-3);
        return std::min(2000.0, 1.0 + t / lr);
    }
    return 1.0;
}

} // namespace

double SectorInfo::sector_at(double t) const { return std::min(theta * t, M_PI); }

SupportInfo support(const BernsteinFunction &phi, double t) {
    if (!(t > 0.0)) throw domain_error("support: requires t > 0");
    SupportInfo info;
    if (phi.is_constant()) {
        info.kind = SupportInfo::Kind::degenerate;
        info.right_endpoint = std::pow(phi.eval(0.0), t);
        return info;
    }
    const double pinf = phi.phi_infinity();
    if (std::isfinite(pinf)) {
        info.kind = SupportInfo::Kind::bounded;
        info.right_endpoint = std::pow(pinf, t);
    } else {
        info.kind = SupportInfo::Kind::unbounded;
        info.right_endpoint = inf;
    }
    return info;
}

SmoothnessInfo smoothness_order(const BernsteinFunction &phi, double t) {
    if (!(t > 0.0)) throw domain_error("smoothness_order: requires t > 0");
    const ClassFlags &fl = phi.flags();
    SmoothnessInfo info;
    if (fl.has_drift || std::isinf(fl.v_at_zero)) {
        info.n_phi = inf;
        info.n_of_t = inf;
        return info;
    }
    const double pinf = phi.phi_infinity();
    if (phi.triplet().form == LevyForm::density && fl.v_at_zero > 0.0 &&
        std::isfinite(pinf)) {
        info.n_phi = fl.v_at_zero / pinf;
        const double n_t = std::floor(info.n_phi * t) - 1.0;
        if (n_t < 0.0)
            throw domain_error("smoothness_order: t <= 1/N_phi, no density guarantee");
        info.n_of_t = n_t;
        return info;
    }
    throw domain_error("smoothness_order: phi outside the B_N class");
}

SectorInfo theta_phi(const BernsteinFunction &phi, double b_max) {
    SectorInfo info;
    if (phi.flags().has_drift) {
        info.theta = 0.5 * M_PI;
        info.method = SectorInfo::Method::drift_rule;
        return info;
    }
    if (phi.regvar() && phi.regvar()->alpha > 0.0 && phi.regvar()->alpha < 1.0) {
        info.theta = phi.regvar()->alpha * 0.5 * M_PI;
        info.method = SectorInfo::Method::regvar_rule;
        return info;
    }
    if (!(b_max > 4.0)) throw domain_error("theta_phi: b_max too small");
    auto avg_arg = [&](double b) {
        auto r = integrate<double>(
            [&](double u) { return std::arg(phi.eval_complex(cdouble(1.0, u))); }, 0.0, b,
            1e-9 * b, 4000);
        return r.value / b;
    };
    const double t1 = avg_arg(b_max / 4.0);
    const double t2 = avg_arg(b_max / 2.0);
    const double t3 = avg_arg(b_max);
    info.theta = std::min({t1, t2, t3});
    info.method = SectorInfo::Method::numeric;
    info.unconverged = std::fabs(t3 - t2) > std::max(0.01, 0.02 * std::fabs(t3));
    return info;
}

DensityPoint mellin_barnes_density(const BernsteinGammaEvaluator &ev, double t, double x,
                                   int n, double tol, ContourInfo *contour_out,
                                   double b_start) {
    if (!(x > 0.0) || !(t > 0.0) || n < 0 || !(tol > 0.0))
        throw domain_error("mellin_barnes_density: requires x > 0, t > 0, n >= 0, tol > 0");

    // Smoothness gate: reject orders the Mellin-Barnes representation does not
    // cover when N_phi is known finite.
    try {
        SmoothnessInfo sm = smoothness_order(ev.phi(), t);
        if (std::isfinite(sm.n_of_t) && n > sm.n_of_t)
            throw domain_error("mellin_barnes_density: n exceeds the n(t) smoothness gate");
    } catch (const domain_error &e) {
        const std::string what = e.what();
        if (what.find("n(t)") != std::string::npos || what.find("1/N_phi") != std::string::npos)
            throw;
        // outside B_N: no gate information, let the tail adaptivity decide
    }

    const double c = choose_contour(ev.phi(), t, x);
    const double log_x = std::log(x);

    std::unordered_map<double, double> memo;  // b -> Re integrand
    auto f = [&](double b) {
        auto it = memo.find(b);
        if (it != memo.end()) return it->second;
        const cdouble z(c, b);
        const cdouble v = std::exp(-(z + static_cast<double>(n)) * log_x +
                                   t * ev.log_W(z)) * rising_factorial(z, n);
        memo.emplace(b, v.real());
        return v.real();
    };
    auto trap = [&](double a, double b, double d) {
        double s = 0.5 * (f(a) + f(b));
        const long steps = std::lround((b - a) / d);
        for (long k = 1; k < steps; ++k) s += f(a + k * d);
        return s * d;
    };

    const double quad_budget = M_PI * tol / 4.0;
    const double tail_budget = M_PI * tol / 4.0;

    double B = b_start > 0.0 ? b_start : 16.0;
    double d = 0.5;
    double core = trap(0.0, B, d);
    double quad_change = inf;
    for (int halvings = 0; halvings < 16; ++halvings) {
        const double refined = trap(0.0, B, 0.5 * d);
        quad_change = std::fabs(refined - core);
        core = refined;
        d *= 0.5;
        if (quad_change < quad_budget) break;
    }
    if (quad_change >= quad_budget)
        throw convergence_error("mellin_barnes_density.quad", tol, quad_change / M_PI);

    double tail = inf;
    while (true) {
        const double seg = trap(B, 2.0 * B, d);
        tail = std::fabs(seg);
        if (tail < tail_budget) break;
        core += seg;
        B *= 2.0;
        if (B > 1.05e6)
            throw convergence_error(
                "mellin_barnes_density.tail (check the n(t) smoothness gate)", tol,
                tail / M_PI);
    }

    DensityPoint out;
    out.x = x;
    const double sign = n % 2 ? -1.0 : 1.0;
    out.value = sign * core / M_PI;
    out.abs_error = (tail + quad_change) / M_PI;
    if (contour_out) {
        contour_out->c = c;
        contour_out->b_used = B;
    }
    return out;
}

DensityGrid density_grid(const BernsteinGammaEvaluator &ev, double t, int n,
                         const std::vector<double> &xs, double tol) {
    DensityGrid grid;
    grid.t = t;
    grid.order = n;
    double warm_b = 0.0;
    for (double x : xs) {
        try {
            ContourInfo ci;
            DensityPoint p = mellin_barnes_density(ev, t, x, n, tol, &ci, warm_b);
            warm_b = ci.b_used;
            grid.contour = ci;
            grid.points.push_back(p);
        } catch (const convergence_error &) {
            grid.points.push_back({x, std::numeric_limits<double>::quiet_NaN(), inf});
        }
    }
    return grid;
}

double power_density(const BernsteinGammaEvaluator &ev, double t, double x, double tol) {
    if (!(t > 0.0) || !(x > 0.0))
        throw domain_error("power_density: requires t > 0, x > 0");
    const double xr = std::pow(x, 1.0 / t);
    const double scale = std::pow(x, (1.0 - t) / t) / t;
    DensityPoint p = mellin_barnes_density(ev, 1.0, xr, 0,
                                           tol / std::max(scale, 1e-6), nullptr);
    return scale * p.value;
}

std::vector<double> log_chain_coefficients(int n) {
    std::vector<double> c = {1.0};
    for (int step = 0; step < n; ++step) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k] += (k + 1.0) * c[k];
            next[k + 1] += c[k];
        }
        c = std::move(next);
    }
    return c;
}

double levy_density(const BernsteinGammaEvaluator &ev, double t, double y, int n,
                    double tol) {
    const double x = std::exp(y);
    const std::vector<double> coeff = log_chain_coefficients(n);
    double out = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double weight = coeff[k] * std::exp((k + 1.0) * y);
        const double sub_tol = tol / ((n + 1.0) * std::max(weight, 1e-12));
        DensityPoint p = mellin_barnes_density(ev, t, x, k, sub_tol, nullptr);
        out += weight * p.value;
    }
    return out;
}

double kappa_check_identity(double u) {
    if (!(u > 0.0)) throw domain_error("kappa_check_identity: requires u > 0");
    auto r = integrate_to_inf<double>([&](double y) { return std::exp(-u * y); }, 0.0,
                                      1e-13, 4000);
    return std::fabs(r.value - 1.0 / u);
}

} // namespace burb
