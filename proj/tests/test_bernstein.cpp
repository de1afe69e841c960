#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "burb/bernstein.hpp"
#include "burb/errors.hpp"
#include "oracles.hpp"

using burb::BernsteinFunction;
using burb::LevyDensity;
using burb::LevyForm;
using burb::LevyTriplet;
using cdouble = std::complex<double>;

namespace {

std::vector<BernsteinFunction> catalog() {
    return {
        BernsteinFunction::identity(),
        BernsteinFunction::power_shifted(0.5, 1.0),
        BernsteinFunction::gamma_ratio(1.0, 1.0, 0.3),
        BernsteinFunction::gauss_laguerre(0.5, 1.0),
        BernsteinFunction::log_family(1.0),
        BernsteinFunction::bounded_ratio(),
    };
}

} // namespace

TEST_CASE("eval: catalog point values") {
    CHECK(BernsteinFunction::identity().eval(3.0) == 3.0);
    CHECK(std::fabs(BernsteinFunction::log_family(1.0).eval(M_E - 1.0) - 1.0) < 1e-14);
    // Gamma(2)/Gamma(1.5) by an independent gamma implementation
    const double want =
        (oracles::lanczos_gamma(cdouble(2.0)) / oracles::lanczos_gamma(cdouble(1.5))).real();
    CHECK(oracles::rel_err(BernsteinFunction::gamma_ratio(1.0, 1.0, 0.5).eval(1.0), want) < 1e-13);
    CHECK(std::fabs(want - 1.1283791) < 1e-6);
}

TEST_CASE("eval_complex: point values and symmetry") {
    CHECK(BernsteinFunction::identity().eval_complex(cdouble(1, 1)) == cdouble(1, 1));

    cdouble got = BernsteinFunction::power_shifted(0.5, 0.0).eval_complex(cdouble(0, 2));
    cdouble want = std::sqrt(2.0) * std::exp(cdouble(0.0, M_PI / 4.0));
    CHECK(std::abs(got - want) < 1e-14);

    got = BernsteinFunction::log_family(1.0).eval_complex(cdouble(1, 1));
    CHECK(std::fabs(got.real() - 0.8047190) < 1e-7);
    CHECK(std::fabs(got.imag() - 0.4636476) < 1e-7);

    CHECK_THROWS_AS(BernsteinFunction::identity().eval_complex(cdouble(-1, 1)),
                    burb::domain_error);
}

TEST_CASE("derivative and log_derivative") {
    CHECK(BernsteinFunction::identity().derivative(5.0) == 1.0);
    CHECK(BernsteinFunction::identity().log_derivative(5.0) == doctest::Approx(0.2));

    auto ps = BernsteinFunction::power_shifted(0.5, 0.0);
    CHECK(ps.derivative(4.0) == doctest::Approx(0.25));
    CHECK(ps.log_derivative(4.0) == doctest::Approx(0.125));

    auto lg = BernsteinFunction::log_family(1.0);
    CHECK(lg.derivative(1.0) == doctest::Approx(0.5));
    CHECK(lg.log_derivative(1.0) == doctest::Approx(1.0 / (2.0 * std::log(2.0))));
    // cross-check against a central finite difference
    const double fd =
        oracles::central_diff([&](double u) { return lg.eval(u); }, 1.0, 1e-6);
    CHECK(std::fabs(lg.derivative(1.0) - fd) < 1e-9);
}

TEST_CASE("inverse: point values, round trip, domain errors") {
    CHECK(BernsteinFunction::identity().inverse(7.0) == doctest::Approx(7.0).epsilon(1e-13));
    CHECK(BernsteinFunction::log_family(1.0).inverse(1.0) ==
          doctest::Approx(M_E - 1.0).epsilon(1e-12));
    CHECK(BernsteinFunction::power_shifted(0.5, 1.0).inverse(2.0) ==
          doctest::Approx(3.0).epsilon(1e-12));

    for (const auto &phi : catalog()) {
        const double k = phi.eval(0.0);
        const double top = std::min(phi.phi_infinity(), phi.eval(1e4));
        for (int i = 1; i <= 100; ++i) {
            const double y = k + (top - k) * i / 101.0;
            const double u = phi.inverse(y);
            CHECK(std::fabs(phi.eval(u) - y) <= 1e-10 * std::max(1.0, std::fabs(y)));
        }
    }

    CHECK_THROWS_AS(BernsteinFunction::bounded_ratio().inverse(1.5), burb::domain_error);
    CHECK_THROWS_AS(BernsteinFunction::constant(2.0).inverse(2.0), burb::domain_error);
}

TEST_CASE("phi_infinity") {
    CHECK(BernsteinFunction::bounded_ratio().phi_infinity() == 1.0);
    CHECK(std::isinf(BernsteinFunction::identity().phi_infinity()));
    CHECK(BernsteinFunction::constant(2.0).phi_infinity() == 2.0);
    // generic with finite mass: k + total mass
    LevyTriplet t;
    t.form = LevyForm::density;
    t.density = LevyDensity{LevyDensity::Kind::exp_decay, 2.0, 2.0};
    CHECK(BernsteinFunction::generic(t).phi_infinity() == doctest::Approx(1.0));
}

TEST_CASE("estimate_indices") {
    auto id = burb::estimate_indices(BernsteinFunction::identity(), 1e2, 1e8);
    CHECK(id.beta == 1.0);
    CHECK(id.delta == 1.0);

    // numeric regression path on the power family
    auto ps = burb::estimate_indices_numeric(BernsteinFunction::power_shifted(0.3, 5.0), 1e4, 1e10);
    CHECK(std::fabs(ps.beta - 0.3) < 0.01);
    CHECK(std::fabs(ps.delta - 0.3) < 0.01);

    // declared indices take precedence for catalog families
    auto lg = burb::estimate_indices(BernsteinFunction::log_family(1.0), 1e2, 1e8);
    CHECK(lg.beta < 0.05);
    CHECK(lg.delta < 0.05);
    // the raw slopes of a slowly varying family drift to 0 like 1/log(u)
    auto lg_lo = burb::estimate_indices_numeric(BernsteinFunction::log_family(1.0), 1e2, 1e8);
    auto lg_hi = burb::estimate_indices_numeric(BernsteinFunction::log_family(1.0), 1e6, 1e12);
    CHECK(lg_lo.beta < 0.25);
    CHECK(lg_hi.beta < lg_lo.beta);

    // interval-report path: drift plus a slowly-saturating bounded part has
    // visibly varying local slopes over a short window
    LevyTriplet t;
    t.drift = 1.0;
    t.form = LevyForm::density;
    t.density = LevyDensity{LevyDensity::Kind::exp_decay, 0.01, 5.0};
    auto mixed = burb::estimate_indices_numeric(BernsteinFunction::generic(t), 1.0, 100.0);
    CHECK(mixed.beta > mixed.delta);

    CHECK_THROWS_AS(burb::estimate_indices(BernsteinFunction::identity(), 10.0, 10.0),
                    burb::domain_error);
}

TEST_CASE("index consistency: every declared catalog index within 0.02") {
    for (const auto &phi : catalog()) {
        auto est = burb::estimate_indices(phi, 1e4, 1e10);
        CHECK(std::fabs(est.beta - phi.beta()) <= 0.02);
        CHECK(std::fabs(est.delta - phi.delta()) <= 0.02);
        // the numeric route agrees for the power-type families
        if (phi.beta() > 0.0) {
            auto num = burb::estimate_indices_numeric(phi, 1e4, 1e10);
            CHECK(std::fabs(num.beta - phi.beta()) <= 0.02);
            CHECK(std::fabs(num.delta - phi.delta()) <= 0.02);
        }
    }
}

TEST_CASE("ratio_condition") {
    auto rc = burb::ratio_condition(BernsteinFunction::identity(), 0.5);
    CHECK(std::isinf(rc.y_alpha));
    CHECK(rc.m_min == 0.0);
    CHECK(rc.holds);

    // phi(u) = u + 1
    auto shifted = BernsteinFunction::sum(
        {BernsteinFunction::identity(), BernsteinFunction::constant(1.0)});
    rc = burb::ratio_condition(shifted, 0.5);
    CHECK(rc.m_min == doctest::Approx(1.0));

    // drift + atom at y=1 with weight 1
    LevyTriplet t;
    t.drift = 1.0;
    t.atoms = {{1.0, 1.0}};
    rc = burb::ratio_condition(BernsteinFunction::generic(t), 0.5);
    CHECK(rc.y_alpha == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(rc.m_min == doctest::Approx(1.0));

    CHECK_THROWS_AS(burb::ratio_condition(BernsteinFunction::log_family(1.0), 0.5),
                    burb::domain_error);
    CHECK_THROWS_AS(
        burb::ratio_condition(
            BernsteinFunction::sum({BernsteinFunction::identity(),
                                    BernsteinFunction::power_shifted(0.5, 0.0)}),
            0.5),
        burb::domain_error);
}

TEST_CASE("potential density reference") {
    CHECK(burb::potential_density_reference(0.5, 0.0, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-12));
    const double g09 = std::exp(oracles::lanczos_log_gamma(cdouble(0.9)).real());
    CHECK(burb::potential_density_reference(0.9, 2.0, 1.0) ==
          doctest::Approx(std::exp(-2.0) / g09).epsilon(1e-12));

    // Laplace transform of U_{1/2,0} is u^{-1/2}: check at u=4 with the
    // y = w^2 substitution that removes the endpoint singularity
    double acc = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double w = (i + 0.5) * 5e-4;
        acc += std::exp(-4.0 * w * w) *
               burb::potential_density_reference(0.5, 0.0, w * w) * 2.0 * w * 5e-4;
    }
    CHECK(std::fabs(acc - 0.5) < 1e-4);

    // ODE U' = -U (m + (1-alpha)/y)
    const double y0 = 0.7, a = 0.5, m = 1.5;
    const double fd = oracles::central_diff(
        [&](double y) { return burb::potential_density_reference(a, m, y); }, y0, 1e-6);
    const double rhs = -burb::potential_density_reference(a, m, y0) * (m + (1.0 - a) / y0);
    CHECK(std::fabs(fd - rhs) < 1e-6 * std::fabs(rhs));
}

TEST_CASE("monotonicity on [0, 1e6]") {
    for (const auto &phi : catalog()) {
        double prev = phi.eval(0.0);
        for (double u = 1e-3; u <= 1e6; u *= 3.7) {
            const double cur = phi.eval(u);
            CHECK(cur >= prev * (1.0 - 1e-13));
            prev = cur;
        }
    }
}

TEST_CASE("sampled complete monotonicity of phi'") {
    for (const auto &phi : catalog()) {
        for (double u0 : {0.5, 2.0, 10.0, 100.0}) {
            const double h = 0.05 * u0;
            for (int n = 0; n <= 3; ++n) {
                double dn = 0.0;
                for (int j = 0; j <= n; ++j) {
                    const double c = std::tgamma(n + 1.0) /
                                     (std::tgamma(j + 1.0) * std::tgamma(n - j + 1.0));
                    dn += ((n - j) % 2 ? -1.0 : 1.0) * c * phi.derivative(u0 + j * h);
                }
                const double signed_dn = (n % 2 ? -1.0 : 1.0) * dn;
                CHECK(signed_dn >= -1e-6 * std::fabs(phi.derivative(u0)));
            }
        }
    }
}

TEST_CASE("conjugate symmetry and modulus bound") {
    for (const auto &phi : catalog()) {
        for (double a : {0.5, 1.0, 2.0}) {
            for (double b = 0.25; b <= 100.0; b *= 2.1) {
                const cdouble z(a, b);
                const cdouble w = phi.eval_complex(z);
                const cdouble wc = phi.eval_complex(std::conj(z));
                CHECK(wc == std::conj(w));
                CHECK(std::abs(w) >= phi.eval(a) * (1.0 - 1e-12));
            }
        }
    }
}

TEST_CASE("generic triplet cross-checks against closed forms") {
    LevyTriplet drift_only;
    drift_only.drift = 1.0;
    auto gen_id = BernsteinFunction::generic(drift_only);

    LevyTriplet logt;
    logt.form = LevyForm::density;
    logt.density = LevyDensity{LevyDensity::Kind::exp_over_y, 1.0, 1.0};
    auto gen_log = BernsteinFunction::generic(logt);

    auto id = BernsteinFunction::identity();
    auto lg = BernsteinFunction::log_family(1.0);
    for (double u = 0.01; u <= 100.0; u *= 1.9) {
        CHECK(oracles::rel_err(gen_id.eval(u), id.eval(u)) < 1e-12);
        CHECK(oracles::rel_err(gen_log.eval(u), lg.eval(u)) < 1e-8);
    }
    // complex agreement too
    const cdouble z(1.0, 3.0);
    CHECK(std::abs(gen_log.eval_complex(z) - lg.eval_complex(z)) < 1e-8);
}

TEST_CASE("triplet validation") {
    LevyTriplet bad;
    CHECK_THROWS_AS(BernsteinFunction::generic(bad), burb::domain_error);  // trivial
    bad.drift = -1.0;
    CHECK_THROWS_AS(BernsteinFunction::generic(bad), burb::domain_error);
}

TEST_CASE("combinator flags") {
    auto s = BernsteinFunction::sum(
        {BernsteinFunction::identity(), BernsteinFunction::log_family(1.0)});
    CHECK(s.flags().has_drift);
    CHECK(!s.flags().is_bounded);
    CHECK(s.flags().in_jurek);
    CHECK(s.flags().is_complete);
    CHECK(s.flags().power_jurek);
    CHECK(s.beta() == 1.0);

    auto c = BernsteinFunction::compose(BernsteinFunction::power_shifted(0.5, 0.0),
                                        BernsteinFunction::identity());
    CHECK(!c.flags().power_jurek);  // conservative
    CHECK(std::fabs(c.beta() - 0.5) < 0.02);
    CHECK(c.eval(4.0) == doctest::Approx(2.0));
}

TEST_CASE("config grammar") {
    auto phi = burb::parse_family_config("family = \"power_shifted\", alpha = 0.5, m = 1.0");
    CHECK(phi.name() == "power_shifted");
    CHECK(phi.eval(3.0) == doctest::Approx(2.0));

    auto gen = burb::parse_family_config("family = \"generic\", v = \"exp_over_y\", lambda = 1.0");
    CHECK(oracles::rel_err(gen.eval(1.0), std::log(2.0)) < 1e-9);

    auto atoms = burb::parse_family_config("family = \"generic\", d = 1.0, atoms = \"1.0:1.0\"");
    CHECK(atoms.eval(1.0) == doctest::Approx(1.0 + 1.0 - std::exp(-1.0)));

    CHECK_THROWS_AS(burb::parse_family_config("family = \"nope\""), burb::domain_error);
    CHECK_THROWS_AS(burb::parse_family_config("alpha = 0.5"), burb::domain_error);
    CHECK_THROWS_AS(burb::parse_family_config("family = \"gamma_ratio\", alpha = 1.0, a = 2.0, b = 0.5"),
                    burb::domain_error);
}
