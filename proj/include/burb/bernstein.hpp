#ifndef BURB_BERNSTEIN_HPP
#define BURB_BERNSTEIN_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "burb/special.hpp"

namespace burb {

// Built-in Levy density descriptors. No arbitrary code loading: densities are
// referenced by name in configs and everything about them (value, tail mass,
// monotonicity) is known here.
struct LevyDensity {
    enum class Kind { exp_over_y, exp_decay };

    Kind kind = Kind::exp_decay;
    double lambda = 1.0;
    double scale = 1.0;

    double operator()(double y) const;
    double v_at_zero() const;      // v(0+), may be +inf
    double tail_mass(double y) const;  // ∫_y^∞ v(r) dr, closed form
    double total_mass() const;         // ∫_0^∞ v(r) dr, may be +inf
    bool non_increasing() const { return true; }
    bool completely_monotone() const { return true; }
};

enum class LevyForm { none, density, atoms };

struct LevyTriplet {
    double killing = 0.0;
    double drift = 0.0;
    LevyForm form = LevyForm::none;
    std::optional<LevyDensity> density;             // executable density, if any
    std::vector<std::pair<double, double>> atoms;   // (y_i, w_i)

    // Checks k,d >= 0, ∫(1∧y)μ(dy) < ∞ and non-triviality; throws domain_error.
    void validate() const;
};

struct ClassFlags {
    bool has_drift = false;
    bool is_bounded = false;
    bool in_jurek = false;
    bool power_jurek = false;
    bool is_complete = false;
    double v_at_zero = 0.0;  // +inf allowed
};

// Declared regular variation at infinity: phi(u) ~ C * u^alpha.
struct RegVar {
    double alpha = 0.0;
    double coeff = 1.0;
};

struct IndexPair {
    double beta = 0.0;
    double delta = 0.0;
};

struct RatioCondition {
    double y_alpha = 0.0;  // may be +inf
    double m_min = 0.0;
    bool holds = false;
};

class BernsteinFunction {
public:
    enum class Family {
        identity,
        constant,
        power_shifted,
        gamma_ratio,
        log_family,
        bounded_ratio,
        generic,
        sum,
        composition,
    };

    static BernsteinFunction identity();
    static BernsteinFunction constant(double k);
    static BernsteinFunction power_shifted(double alpha, double m);
    static BernsteinFunction gamma_ratio(double alpha, double a, double b);
    // Gauss-Laguerre family: gamma_ratio(alpha, alpha*m+1, alpha*m+1-alpha).
    static BernsteinFunction gauss_laguerre(double alpha, double m);
    static BernsteinFunction log_family(double lambda);
    static BernsteinFunction bounded_ratio();
    static BernsteinFunction generic(LevyTriplet triplet);
    static BernsteinFunction sum(std::vector<BernsteinFunction> parts);
    static BernsteinFunction compose(BernsteinFunction outer, BernsteinFunction inner);

    Family family() const { return family_; }
    const std::string &name() const { return name_; }
    const ClassFlags &flags() const { return flags_; }
    const LevyTriplet &triplet() const { return triplet_; }
    double beta() const { return beta_; }
    double delta() const { return delta_; }
    const std::optional<RegVar> &regvar() const { return regvar_; }
    bool limsup_finite() const { return limsup_finite_; }
    bool is_constant() const { return family_ == Family::constant; }
    bool is_catalog() const;
    double param(int i) const;  // p1/p2/p3 by index, for reports

    double eval(double u) const;
    cdouble eval_complex(cdouble z) const;
    double derivative(double u) const;
    double log_derivative(double u) const { return derivative(u) / eval(u); }
    double inverse(double y) const;
    double phi_infinity() const;

    // Tail of the Levy measure ∫_y^∞ μ(dr); throws domain_error for families
    // whose measure is not executable (gamma_ratio, power_shifted, ...).
    double levy_tail(double y) const;
    bool levy_tail_available() const;

private:
    BernsteinFunction() = default;

    Family family_ = Family::identity;
    double p1_ = 0.0, p2_ = 0.0, p3_ = 0.0;
    std::vector<BernsteinFunction> children_;
    LevyTriplet triplet_;
    ClassFlags flags_;
    double beta_ = 0.0;
    double delta_ = 0.0;
    std::optional<RegVar> regvar_;
    bool limsup_finite_ = false;
    std::string name_;

    void derive_combinator_metadata();
};

// Least-squares / secant-slope index estimate on a geometric grid in
// [u_lo, u_hi]. Declared catalog indices take precedence; the numeric helper
// is exposed for the synthetic interval-report path.
IndexPair estimate_indices(const BernsteinFunction &phi, double u_lo, double u_hi);
IndexPair estimate_indices_numeric(const BernsteinFunction &phi, double u_lo, double u_hi);

// Proposition-4.1-style sufficient condition for phi/phi_{alpha,m} to stay
// Bernstein: y_alpha = inf{y >= 0 : y*mubar(y) > d(1-alpha)} and
// m_min = (mubar(y_alpha/2)+k)/d.
RatioCondition ratio_condition(const BernsteinFunction &phi, double alpha);

// Potential density of (u+m)^alpha: e^{-m y} y^{alpha-1} / Gamma(alpha).
double potential_density_reference(double alpha, double m, double y);

// Structured text family config: `family = "power_shifted", alpha = 0.5, m = 1`.
BernsteinFunction parse_family_config(const std::string &text);
std::vector<std::pair<std::string, std::string>> parse_kv_config(const std::string &text);

} // namespace burb

#endif
