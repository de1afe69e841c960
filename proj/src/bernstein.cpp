#include "burb/bernstein.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "burb/errors.hpp"
#include "burb/quadrature.hpp"

namespace burb {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// (1 - e^{-w})/w, stable near 0.
double one_minus_exp_over(double w) {
    if (w == 0.0) return 1.0;
    return -std::expm1(-w) / w;
}

double real_gamma_ratio(double alpha, double a, double b, double u) {
    if (alpha * u + b == 0.0) return 0.0;  // 1/Gamma(0)
    return std::exp(log_gamma_ratio_affine(alpha, cdouble(u, 0.0), a, b).real());
}

} // namespace

// ---------------------------------------------------------------------------
// LevyDensity

double LevyDensity::operator()(double y) const {
    switch (kind) {
    case Kind::exp_over_y: return scale * std::exp(-lambda * y) / y;
    case Kind::exp_decay: return scale * std::exp(-lambda * y);
    }
    return 0.0;
}

double LevyDensity::v_at_zero() const {
    return kind == Kind::exp_over_y ? inf : scale;
}

double LevyDensity::tail_mass(double y) const {
    switch (kind) {
    case Kind::exp_over_y:
        // ∫_y^∞ e^{-λr}/r dr = E1(λy) = -Ei(-λy)
        return y <= 0.0 ? inf : -scale * std::expint(-lambda * y);
    case Kind::exp_decay:
        return scale * std::exp(-lambda * y) / lambda;
    }
    return 0.0;
}

double LevyDensity::total_mass() const {
    return kind == Kind::exp_over_y ? inf : scale / lambda;
}

// ---------------------------------------------------------------------------
// LevyTriplet

void LevyTriplet::validate() const {
    if (killing < 0.0 || drift < 0.0)
        throw domain_error("LevyTriplet: killing and drift must be non-negative");
    for (const auto &[y, w] : atoms) {
        if (y <= 0.0 || w < 0.0)
            throw domain_error("LevyTriplet: atoms need y > 0, w >= 0");
    }
    if (form == LevyForm::density) {
        if (!density)
            throw domain_error("LevyTriplet: density form without a descriptor");
        // ∫(1 ∧ y) μ(dy) < ∞: head with the y weight, tail by closed form.
        const LevyDensity &v = *density;
        auto head = integrate<double>([&](double y) { return y * v(y); }, 0.0, 1.0, 1e-10);
        if (!head.converged || !std::isfinite(head.value) || !std::isfinite(v.tail_mass(1.0)))
            throw domain_error("LevyTriplet: ∫(1∧y)μ(dy) diverges");
    }
    const bool has_mass = form != LevyForm::none || !atoms.empty();
    if (killing == 0.0 && drift == 0.0 && !has_mass)
        throw domain_error("LevyTriplet: trivial (k = d = 0, no measure)");
}

// ---------------------------------------------------------------------------
// Construction

bool BernsteinFunction::is_catalog() const {
    switch (family_) {
    case Family::identity:
    case Family::constant:
    case Family::power_shifted:
    case Family::gamma_ratio:
    case Family::log_family:
    case Family::bounded_ratio:
        return true;
    default:
        return false;
    }
}

double BernsteinFunction::param(int i) const {
    return i == 0 ? p1_ : (i == 1 ? p2_ : p3_);
}

BernsteinFunction BernsteinFunction::identity() {
    BernsteinFunction f;
    f.family_ = Family::identity;
    f.triplet_.drift = 1.0;
    f.flags_ = {true, false, true, true, true, 0.0};
    f.beta_ = f.delta_ = 1.0;
    f.regvar_ = RegVar{1.0, 1.0};
    f.limsup_finite_ = true;
    f.name_ = "identity";
    return f;
}

BernsteinFunction BernsteinFunction::constant(double k) {
    if (k <= 0.0) throw domain_error("constant: requires k > 0");
    BernsteinFunction f;
    f.family_ = Family::constant;
    f.p1_ = k;
    f.triplet_.killing = k;
    f.flags_ = {false, true, true, true, true, 0.0};
    f.beta_ = f.delta_ = 0.0;
    f.limsup_finite_ = true;
    f.name_ = "constant";
    return f;
}

BernsteinFunction BernsteinFunction::power_shifted(double alpha, double m) {
    if (!(alpha > 0.0 && alpha < 1.0) || m < 0.0)
        throw domain_error("power_shifted: requires alpha in (0,1), m >= 0");
    BernsteinFunction f;
    f.family_ = Family::power_shifted;
    f.p1_ = alpha;
    f.p2_ = m;
    f.triplet_.killing = m > 0.0 ? std::pow(m, alpha) : 0.0;
    f.triplet_.form = LevyForm::density;  // CM density, not executable here
    f.flags_ = {false, false, true, true, true, inf};
    f.beta_ = f.delta_ = alpha;
    f.regvar_ = RegVar{alpha, 1.0};
    f.limsup_finite_ = true;
    f.name_ = "power_shifted";
    return f;
}

BernsteinFunction BernsteinFunction::gamma_ratio(double alpha, double a, double b) {
    if (!(alpha > 0.0 && alpha <= 1.0) || !(b >= 0.0 && b < a && a < b + 1.0))
        throw domain_error("gamma_ratio: requires alpha in (0,1], 0 <= b < a < b+1");
    BernsteinFunction f;
    f.family_ = Family::gamma_ratio;
    f.p1_ = alpha;
    f.p2_ = a;
    f.p3_ = b;
    f.triplet_.killing = b == 0.0 ? 0.0 : std::exp(std::lgamma(a) - std::lgamma(b));
    f.triplet_.form = LevyForm::density;  // exists (complete BF), not executable
    f.flags_ = {false, false, true, true, true, inf};
    f.beta_ = f.delta_ = a - b;
    f.regvar_ = RegVar{a - b, std::pow(alpha, a - b)};
    f.limsup_finite_ = true;
    f.name_ = "gamma_ratio";
    return f;
}

BernsteinFunction BernsteinFunction::gauss_laguerre(double alpha, double m) {
    BernsteinFunction f = gamma_ratio(alpha, alpha * m + 1.0, alpha * m + 1.0 - alpha);
    f.name_ = "gauss_laguerre";
    return f;
}

BernsteinFunction BernsteinFunction::log_family(double lambda) {
    if (!(lambda > 0.0)) throw domain_error("log_family: requires lambda > 0");
    BernsteinFunction f;
    f.family_ = Family::log_family;
    f.p1_ = lambda;
    f.triplet_.form = LevyForm::density;
    f.triplet_.density = LevyDensity{LevyDensity::Kind::exp_over_y, lambda, 1.0};
    f.flags_ = {false, false, true, true, true, inf};
    f.beta_ = f.delta_ = 0.0;
    f.limsup_finite_ = false;  // limsup phi(u) = inf at beta = 0
    f.name_ = "log";
    return f;
}

BernsteinFunction BernsteinFunction::bounded_ratio() {
    BernsteinFunction f;
    f.family_ = Family::bounded_ratio;
    f.triplet_.form = LevyForm::density;
    f.triplet_.density = LevyDensity{LevyDensity::Kind::exp_decay, 1.0, 1.0};
    f.flags_ = {false, true, true, true, true, 1.0};
    f.beta_ = f.delta_ = 0.0;
    f.limsup_finite_ = true;
    f.name_ = "bounded_ratio";
    return f;
}

BernsteinFunction BernsteinFunction::generic(LevyTriplet triplet) {
    triplet.validate();
    BernsteinFunction f;
    f.family_ = Family::generic;
    f.triplet_ = std::move(triplet);

    const LevyTriplet &t = f.triplet_;
    const bool pure_density = t.atoms.empty();
    f.flags_.has_drift = t.drift > 0.0;
    double mass = 0.0;
    for (const auto &[y, w] : t.atoms) {
        (void)y;
        mass += w;
    }
    if (t.form == LevyForm::density) mass += t.density->total_mass();
    f.flags_.is_bounded = t.drift == 0.0 && std::isfinite(mass);
    f.flags_.in_jurek =
        pure_density && (t.form != LevyForm::density || t.density->non_increasing());
    f.flags_.is_complete =
        pure_density && (t.form != LevyForm::density || t.density->completely_monotone());
    f.flags_.power_jurek = f.flags_.is_complete;
    f.flags_.v_at_zero = t.form == LevyForm::density ? t.density->v_at_zero() : 0.0;
    f.limsup_finite_ = f.flags_.has_drift;
    f.name_ = "generic";

    IndexPair est = estimate_indices_numeric(f, 1e2, 1e8);
    f.beta_ = est.beta;
    f.delta_ = est.delta;
    return f;
}

BernsteinFunction BernsteinFunction::sum(std::vector<BernsteinFunction> parts) {
    if (parts.empty()) throw domain_error("sum: needs at least one part");
    BernsteinFunction f;
    f.family_ = Family::sum;
    f.children_ = std::move(parts);
    f.name_ = "sum";
    f.derive_combinator_metadata();
    return f;
}

BernsteinFunction BernsteinFunction::compose(BernsteinFunction outer, BernsteinFunction inner) {
    BernsteinFunction f;
    f.family_ = Family::composition;
    f.children_.push_back(std::move(outer));
    f.children_.push_back(std::move(inner));
    f.name_ = "composition";
    f.derive_combinator_metadata();
    return f;
}

void BernsteinFunction::derive_combinator_metadata() {
    if (family_ == Family::sum) {
        bool all_jurek = true, all_complete = true, all_bounded = true;
        bool atoms_free = true;
        double v0 = 0.0;
        for (const auto &c : children_) {
            triplet_.killing += c.triplet_.killing;
            triplet_.drift += c.triplet_.drift;
            all_jurek &= c.flags_.in_jurek;
            all_complete &= c.flags_.is_complete;
            all_bounded &= c.flags_.is_bounded;
            atoms_free &= c.triplet_.atoms.empty();
            v0 += c.flags_.v_at_zero;
            beta_ = std::max(beta_, c.beta_);
            delta_ = std::max(delta_, c.delta_);
            if (c.triplet_.form != LevyForm::none) triplet_.form = LevyForm::density;
            for (const auto &a : c.triplet_.atoms) triplet_.atoms.push_back(a);
        }
        flags_.has_drift = triplet_.drift > 0.0;
        flags_.is_bounded = all_bounded && triplet_.drift == 0.0;
        flags_.in_jurek = all_jurek && atoms_free;
        flags_.is_complete = all_complete && atoms_free;
        flags_.power_jurek = flags_.is_complete;
        flags_.v_at_zero = v0;
        limsup_finite_ = flags_.has_drift;
        return;
    }

    // Composition: only what is provable without the measure.
    const BernsteinFunction &outer = children_[0];
    const BernsteinFunction &inner = children_[1];
    triplet_.killing = outer.eval(inner.triplet_.killing);
    const bool inner_unbounded = !inner.flags_.is_bounded;
    triplet_.drift = inner_unbounded ? outer.triplet_.drift * inner.triplet_.drift : 0.0;
    flags_.has_drift = triplet_.drift > 0.0;
    flags_.is_bounded = outer.flags_.is_bounded || inner.flags_.is_bounded;
    limsup_finite_ = flags_.has_drift;
    IndexPair est = estimate_indices_numeric(*this, 1e2, 1e8);
    beta_ = est.beta;
    delta_ = est.delta;
}

// ---------------------------------------------------------------------------
// Evaluation

double BernsteinFunction::eval(double u) const {
    if (!(u >= 0.0)) throw domain_error("eval: requires u >= 0");
    switch (family_) {
    case Family::identity: return u;
    case Family::constant: return p1_;
    case Family::power_shifted: return std::pow(u + p2_, p1_);
    case Family::gamma_ratio: return real_gamma_ratio(p1_, p2_, p3_, u);
    case Family::log_family: return std::log1p(u / p1_);
    case Family::bounded_ratio: return u / (u + 1.0);
    case Family::sum: {
        double s = 0.0;
        for (const auto &c : children_) s += c.eval(u);
        return s;
    }
    case Family::composition: return children_[0].eval(children_[1].eval(u));
    case Family::generic: break;
    }

    const LevyTriplet &t = triplet_;
    double v = t.killing + t.drift * u;
    for (const auto &[y, w] : t.atoms) v += w * (1.0 - std::exp(-u * y));
    if (t.form == LevyForm::density && u > 0.0) {
        const LevyDensity &den = *t.density;
        // Head: integrate u*y*v(y)*(1-e^{-uy})/(uy) so the small-y cancellation
        // is explicit.
        auto head = integrate<double>(
            [&](double y) { return u * y * den(y) * one_minus_exp_over(u * y); }, 0.0, 1.0,
            1e-12, 4000);
        auto tail = integrate_to_inf<double>(
            [&](double y) { return (1.0 - std::exp(-u * y)) * den(y); }, 1.0, 1e-12, 4000);
        const double budget = 1e-12 + 1e-13 * (std::fabs(head.value) + std::fabs(tail.value));
        if (head.error + tail.error > budget)
            throw convergence_error("bernstein.eval", 1e-12, head.error + tail.error);
        v += head.value + tail.value;
    }
    return v;
}

cdouble BernsteinFunction::eval_complex(cdouble z) const {
    // Closed forms extend continuously to the punctured imaginary axis.
    const bool boundary_ok = family_ != Family::generic && z.real() == 0.0 && z != 0.0;
    if (!(z.real() > 0.0) && !boundary_ok)
        throw domain_error("eval_complex: requires Re z > 0");
    switch (family_) {
    case Family::identity: return z;
    case Family::constant: return p1_;
    case Family::power_shifted: return std::exp(p1_ * std::log(z + p2_));
    case Family::gamma_ratio:
        return std::exp(log_gamma_ratio_affine(p1_, z, p2_, p3_));
    case Family::log_family: return std::log(1.0 + z / p1_);
    case Family::bounded_ratio: return z / (z + 1.0);
    case Family::sum: {
        cdouble s = 0.0;
        for (const auto &c : children_) s += c.eval_complex(z);
        return s;
    }
    case Family::composition: return children_[0].eval_complex(children_[1].eval_complex(z));
    case Family::generic: break;
    }

    if (std::fabs(z.imag()) > 1e3)
        throw domain_error("eval_complex: generic triplets restricted to |Im z| <= 1e3");
    const LevyTriplet &t = triplet_;
    cdouble v = t.killing + t.drift * z;
    for (const auto &[y, w] : t.atoms) v += w * (1.0 - std::exp(-z * y));
    if (t.form == LevyForm::density) {
        const LevyDensity &den = *t.density;
        auto cancel = [&](cdouble w) -> cdouble {
            return std::abs(w) < 1e-8 ? cdouble(1.0) : (1.0 - std::exp(-w)) / w;
        };
        auto head = integrate<cdouble>(
            [&](double y) { return z * y * den(y) * cancel(z * y); }, 0.0, 1.0, 1e-12, 4000);
        auto tail = integrate_to_inf<cdouble>(
            [&](double y) { return (1.0 - std::exp(-z * y)) * den(y); }, 1.0, 1e-12, 4000);
        const double budget = 1e-12 + 1e-13 * (std::abs(head.value) + std::abs(tail.value));
        if (head.error + tail.error > budget)
            throw convergence_error("bernstein.eval_complex", 1e-12, head.error + tail.error);
        v += head.value + tail.value;
    }
    return v;
}

double BernsteinFunction::derivative(double u) const {
    if (!(u > 0.0)) throw domain_error("derivative: requires u > 0");
    switch (family_) {
    case Family::identity: return 1.0;
    case Family::constant: return 0.0;
    case Family::power_shifted: return p1_ * std::pow(u + p2_, p1_ - 1.0);
    case Family::gamma_ratio:
        return eval(u) * p1_ * digamma_diff(p1_ * u + p2_, p1_ * u + p3_);
    case Family::log_family: return 1.0 / (p1_ + u);
    case Family::bounded_ratio: {
        const double s = u + 1.0;
        return 1.0 / (s * s);
    }
    case Family::sum: {
        double s = 0.0;
        for (const auto &c : children_) s += c.derivative(u);
        return s;
    }
    case Family::composition:
        return children_[0].derivative(children_[1].eval(u)) * children_[1].derivative(u);
    case Family::generic: break;
    }

    const LevyTriplet &t = triplet_;
    double v = t.drift;
    for (const auto &[y, w] : t.atoms) v += w * y * std::exp(-u * y);
    if (t.form == LevyForm::density) {
        const LevyDensity &den = *t.density;
        auto head = integrate<double>(
            [&](double y) { return y * std::exp(-u * y) * den(y); }, 0.0, 1.0, 1e-12, 4000);
        auto tail = integrate_to_inf<double>(
            [&](double y) { return y * std::exp(-u * y) * den(y); }, 1.0, 1e-12, 4000);
        if (head.error + tail.error > 1e-11)
            throw convergence_error("bernstein.derivative", 1e-12, head.error + tail.error);
        v += head.value + tail.value;
    }
    return v;
}

double BernsteinFunction::phi_infinity() const {
    switch (family_) {
    case Family::identity:
    case Family::power_shifted:
    case Family::gamma_ratio:
    case Family::log_family:
        return inf;
    case Family::constant: return p1_;
    case Family::bounded_ratio: return 1.0;
    case Family::sum: {
        double s = 0.0;
        for (const auto &c : children_) s += c.phi_infinity();
        return s;
    }
    case Family::composition: {
        const double inner_inf = children_[1].phi_infinity();
        return std::isfinite(inner_inf) ? children_[0].eval(inner_inf)
                                        : children_[0].phi_infinity();
    }
    case Family::generic: break;
    }
    const LevyTriplet &t = triplet_;
    if (t.drift > 0.0) return inf;
    double mass = t.killing;
    for (const auto &[y, w] : t.atoms) {
        (void)y;
        mass += w;
    }
    if (t.form == LevyForm::density) mass += t.density->total_mass();
    return mass;
}

double BernsteinFunction::inverse(double y) const {
    if (is_constant()) throw domain_error("inverse: phi is constant");
    const double k = eval(0.0);
    const double top = phi_infinity();
    if (!(y >= k) || !(y < top)) {
        std::ostringstream os;
        os << "inverse: y outside [" << k << ", " << top << ")";
        throw domain_error(os.str());
    }
    if (y == k) return 0.0;

    double lo = 0.0, hi = 1.0;
    while (eval(hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw domain_error("inverse: bracket overflow");
    }
    while (hi - lo > 1e-14 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (eval(mid) < y ? lo : hi) = mid;
    }
    double u = 0.5 * (lo + hi);
    for (int i = 0; i < 2 && u > 0.0; ++i) {
        const double fp = derivative(u);
        if (!(fp > 0.0)) break;
        const double step = (eval(u) - y) / fp;
        const double next = u - step;
        if (next > 0.0 && std::isfinite(next)) u = next;
    }
    return u;
}

bool BernsteinFunction::levy_tail_available() const {
    switch (family_) {
    case Family::identity:
    case Family::constant:
        return true;
    case Family::log_family:
    case Family::bounded_ratio:
        return true;
    case Family::generic:
        return triplet_.form != LevyForm::density || triplet_.density.has_value();
    case Family::sum:
        return std::all_of(children_.begin(), children_.end(),
                           [](const BernsteinFunction &c) { return c.levy_tail_available(); });
    default:
        return false;
    }
}

double BernsteinFunction::levy_tail(double y) const {
    if (!levy_tail_available())
        throw domain_error("levy_tail: measure not executable for family " + name_);
    if (family_ == Family::sum) {
        double s = 0.0;
        for (const auto &c : children_) s += c.levy_tail(y);
        return s;
    }
    double s = 0.0;
    for (const auto &[yi, w] : triplet_.atoms)
        if (yi >= y) s += w;
    if (triplet_.form == LevyForm::density && triplet_.density)
        s += triplet_.density->tail_mass(std::max(y, 0.0));
    return s;
}

// ---------------------------------------------------------------------------
// Index estimation

IndexPair estimate_indices_numeric(const BernsteinFunction &phi, double u_lo, double u_hi) {
    if (!(u_lo >= 1.0) || !(u_hi > u_lo))
        throw domain_error("estimate_indices: degenerate grid (need 1 <= u_lo < u_hi)");
    constexpr int n = 33;
    double xs[n], ls[n];
    const double step = (std::log(u_hi) - std::log(u_lo)) / (n - 1);
    for (int i = 0; i < n; ++i) {
        xs[i] = std::log(u_lo) + i * step;
        ls[i] = std::log(phi.eval(std::exp(xs[i])));
    }
    double smin = inf, smax = -inf;
    for (int i = 0; i + 1 < n; ++i) {
        const double s = (ls[i + 1] - ls[i]) / (xs[i + 1] - xs[i]);
        smin = std::min(smin, s);
        smax = std::max(smax, s);
    }
    if (smax - smin < 0.02) {
        double xm = 0.0, lm = 0.0;
        for (int i = 0; i < n; ++i) {
            xm += xs[i];
            lm += ls[i];
        }
        xm /= n;
        lm /= n;
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += (xs[i] - xm) * (ls[i] - lm);
            den += (xs[i] - xm) * (xs[i] - xm);
        }
        const double slope = num / den;
        return {slope, slope};
    }
    return {smax, smin};
}

IndexPair estimate_indices(const BernsteinFunction &phi, double u_lo, double u_hi) {
    if (phi.is_constant()) throw domain_error("estimate_indices: phi is constant");
    if (!(u_lo >= 1.0) || !(u_hi > u_lo))
        throw domain_error("estimate_indices: degenerate grid (need 1 <= u_lo < u_hi)");
    if (phi.is_catalog()) return {phi.beta(), phi.delta()};
    return estimate_indices_numeric(phi, u_lo, u_hi);
}

// ---------------------------------------------------------------------------
// Ratio condition and reference potential density

RatioCondition ratio_condition(const BernsteinFunction &phi, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw domain_error("ratio_condition: requires alpha in (0,1)");
    if (!phi.flags().has_drift)
        throw domain_error("ratio_condition: requires a drift family");
    const double d = phi.triplet().drift;
    const double k = phi.triplet().killing;
    const double threshold = d * (1.0 - alpha);

    auto exceeds = [&](double y) { return y * phi.levy_tail(y) > threshold; };

    // Scan a log grid (plus atom locations) for the first exceedance, then
    // bisect the boundary.
    std::vector<double> grid;
    for (int i = 0; i <= 600; ++i) grid.push_back(std::pow(10.0, -9.0 + 21.0 * i / 600.0));
    for (const auto &[y, w] : phi.triplet().atoms) {
        (void)w;
        grid.push_back(y);
        grid.push_back(std::nextafter(y, 0.0));
    }
    std::sort(grid.begin(), grid.end());

    RatioCondition rc;
    rc.y_alpha = inf;
    double lo = 0.0;
    for (double y : grid) {
        if (exceeds(y)) {
            double hi = y;
            while (hi - lo > 1e-12 * std::max(1.0, hi)) {
                const double mid = 0.5 * (lo + hi);
                (exceeds(mid) ? hi : lo) = mid;
            }
            rc.y_alpha = hi;
            break;
        }
        lo = y;
    }
    const double tail_at_half =
        std::isfinite(rc.y_alpha) ? phi.levy_tail(0.5 * rc.y_alpha) : phi.levy_tail(1e300);
    rc.m_min = (tail_at_half + k) / d;
    rc.holds = std::isfinite(rc.m_min);
    return rc;
}

double potential_density_reference(double alpha, double m, double y) {
    if (!(alpha > 0.0 && alpha < 1.0) || m < 0.0 || !(y > 0.0))
        throw domain_error("potential_density_reference: alpha in (0,1), m >= 0, y > 0");
    return std::exp(-m * y + (alpha - 1.0) * std::log(y) - std::lgamma(alpha));
}

// ---------------------------------------------------------------------------
// Config grammar

std::vector<std::pair<std::string, std::string>> parse_kv_config(const std::string &text) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::string item;
    auto flush = [&] {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            if (item.find_first_not_of(" \t\r\n") != std::string::npos)
                throw domain_error("config: expected key = value, got '" + item + "'");
            item.clear();
            return;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            const auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(item.substr(0, eq));
        std::string val = trim(item.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);
        if (key.empty()) throw domain_error("config: empty key");
        kv.emplace_back(key, val);
        item.clear();
    };
    for (char c : text) {
        if (c == ',' || c == '\n') {
            flush();
            continue;
        }
        if (c == '#') {  // comment to end of line
            while (!item.empty() && item.back() != '\n') item.pop_back();
            flush();
            continue;
        }
        item.push_back(c);
    }
    flush();
    return kv;
}

BernsteinFunction parse_family_config(const std::string &text) {
    const auto kv = parse_kv_config(text);
    auto find = [&](const std::string &key) -> const std::string * {
        for (const auto &[k, v] : kv)
            if (k == key) return &v;
        return nullptr;
    };
    auto num = [&](const std::string &key, double fallback, bool required = false) {
        const std::string *s = find(key);
        if (!s) {
            if (required) throw domain_error("config: missing parameter '" + key + "'");
            return fallback;
        }
        try {
            return std::stod(*s);
        } catch (const std::exception &) {
            throw domain_error("config: bad number for '" + key + "': " + *s);
        }
    };

    const std::string *fam = find("family");
    if (!fam) throw domain_error("config: missing 'family'");
    const std::string &f = *fam;
    if (f == "identity") return BernsteinFunction::identity();
    if (f == "constant") return BernsteinFunction::constant(num("k", 1.0, true));
    if (f == "power_shifted")
        return BernsteinFunction::power_shifted(num("alpha", 0.0, true), num("m", 0.0));
    if (f == "gamma_ratio")
        return BernsteinFunction::gamma_ratio(num("alpha", 0.0, true), num("a", 0.0, true),
                                              num("b", 0.0, true));
    if (f == "gauss_laguerre")
        return BernsteinFunction::gauss_laguerre(num("alpha", 0.0, true), num("m", 0.0, true));
    if (f == "log") return BernsteinFunction::log_family(num("lambda", 1.0));
    if (f == "bounded_ratio") return BernsteinFunction::bounded_ratio();
    if (f == "generic") {
        LevyTriplet t;
        t.killing = num("k", 0.0);
        t.drift = num("d", 0.0);
        if (const std::string *v = find("v")) {
            t.form = LevyForm::density;
            LevyDensity den;
            if (*v == "exp_over_y") den.kind = LevyDensity::Kind::exp_over_y;
            else if (*v == "exp") den.kind = LevyDensity::Kind::exp_decay;
            else throw domain_error("config: unknown density '" + *v + "'");
            den.lambda = num("lambda", 1.0);
            den.scale = num("scale", 1.0);
            t.density = den;
        }
        if (const std::string *a = find("atoms")) {
            std::stringstream ss(*a);
            std::string part;
            while (std::getline(ss, part, ';')) {
                const auto colon = part.find(':');
                if (colon == std::string::npos)
                    throw domain_error("config: atoms expect 'y:w;y:w'");
                t.atoms.emplace_back(std::stod(part.substr(0, colon)),
                                     std::stod(part.substr(colon + 1)));
            }
        }
        return BernsteinFunction::generic(std::move(t));
    }
    throw domain_error("config: unknown family '" + f + "'");
}

} // namespace burb
