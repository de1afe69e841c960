#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "burb/bgamma.hpp"
#include "burb/errors.hpp"
#include "oracles.hpp"

using burb::BernsteinFunction;
using burb::BernsteinGammaEvaluator;
using cdouble = std::complex<double>;

namespace {

constexpr double euler_mascheroni = 0.57721566490153286;

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

TEST_CASE("gamma_phi: Euler-Mascheroni and a-priori brackets") {
    auto id = burb::compute_gamma_phi(BernsteinFunction::identity(), 1e-10);
    CHECK(std::fabs(id.value - euler_mascheroni) < 1e-10);
    CHECK(id.error_bound < 1e-10);

    auto ps = burb::compute_gamma_phi(BernsteinFunction::power_shifted(0.5, 1.0), 1e-10);
    const double lo = -std::log(std::sqrt(2.0));
    CHECK(ps.value >= lo);
    CHECK(ps.value <= 0.25 + lo);

    auto lg = burb::compute_gamma_phi(BernsteinFunction::log_family(1.0), 1e-10);
    const double l2 = std::log(std::log(2.0));
    CHECK(lg.value >= -l2 - 1e-12);
    CHECK(lg.value <= 1.0 / (2.0 * std::log(2.0)) - l2);

    CHECK_THROWS_AS(burb::compute_gamma_phi(BernsteinFunction::constant(2.0), 1e-8),
                    burb::domain_error);
}

TEST_CASE("eval_W: gamma values for the identity family") {
    BernsteinGammaEvaluator ev(BernsteinFunction::identity());
    CHECK(std::abs(ev.eval_W(4.0) - cdouble(6.0)) < 1e-9);
    CHECK(std::abs(ev.eval_W(0.5) - cdouble(std::sqrt(M_PI))) < 1e-10);
    CHECK(std::abs(ev.eval_W(1.0) - cdouble(1.0)) < 1e-12);
    CHECK_THROWS_AS(ev.eval_W(cdouble(-0.5, 1.0)), burb::domain_error);
}

TEST_CASE("eval_W: Gauss-Laguerre closed form") {
    BernsteinGammaEvaluator ev(BernsteinFunction::gauss_laguerre(0.5, 1.0));
    CHECK(std::abs(ev.eval_W(3.0) - cdouble(1.5)) < 1e-9);
    // W(z) = Gamma(z/2+1)/Gamma(3/2) on the real segment
    for (double x = 0.5; x <= 6.0; x += 0.5) {
        const cdouble want = oracles::lanczos_gamma(cdouble(0.5 * x + 1.0)) /
                             oracles::lanczos_gamma(cdouble(1.5));
        CHECK(oracles::rel_err(ev.eval_W(x), want) < 1e-8);
    }
}

TEST_CASE("eval_W_power") {
    BernsteinGammaEvaluator ev(BernsteinFunction::identity());
    CHECK(std::abs(ev.eval_W_power(2.0, 4.0) - cdouble(36.0)) < 1e-8);
    CHECK(ev.eval_W_power(0.0, cdouble(0.7, 3.0)) == cdouble(1.0));
    CHECK(std::abs(ev.eval_W_power(0.5, 0.5) - cdouble(std::pow(M_PI, 0.25))) < 1e-10);
}

TEST_CASE("moments") {
    auto id = burb::moments(BernsteinFunction::identity(), 1.0, 5);
    const double want[] = {1, 1, 2, 6, 24, 120};
    for (int n = 0; n <= 5; ++n) CHECK(id.value(n) == doctest::Approx(want[n]).epsilon(1e-12));

    CHECK(burb::moments(BernsteinFunction::identity(), 2.0, 3).value(3) ==
          doctest::Approx(36.0).epsilon(1e-12));
    CHECK(burb::moments(BernsteinFunction::bounded_ratio(), 1.0, 4).value(4) ==
          doctest::Approx(0.2).epsilon(1e-12));

    // agreement with W^t(n+1)
    for (const auto &phi : catalog()) {
        BernsteinGammaEvaluator ev(phi);
        auto seq = burb::moments(phi, 1.7, 8);
        for (int n = 0; n <= 8; ++n) {
            const double got = seq.value(n);
            const double want_w = ev.eval_W_power(1.7, cdouble(n + 1.0)).real();
            CHECK(oracles::rel_err(got, want_w) < 1e-9);
        }
    }
}

TEST_CASE("psi") {
    BernsteinGammaEvaluator ev(BernsteinFunction::identity());
    CHECK(std::abs(ev.psi(3.0) - cdouble(std::log(6.0))) < 1e-10);
    CHECK(std::abs(ev.psi(0.0)) < 1e-12);
    CHECK(std::abs(ev.psi(1.0)) < 1e-12);
    CHECK_THROWS_AS(ev.psi(cdouble(-1.5, 0.0)), burb::domain_error);
}

TEST_CASE("functional equation on the declared grid") {
    for (const auto &phi : catalog()) {
        BernsteinGammaEvaluator ev(phi);
        for (double a : {0.25, 0.5, 1.0, 2.0}) {
            for (double b = -50.0; b <= 50.0; b += 10.0) {
                const cdouble z(a, b);
                const cdouble lhs = ev.log_W(z + 1.0);
                const cdouble rhs = std::log(phi.eval_complex(z)) + ev.log_W(z);
                const double rel = std::abs(1.0 - std::exp(rhs - lhs));
                CHECK(rel <= 1e-10);
            }
        }
    }
}

TEST_CASE("normalization, integer consistency, modulus bound") {
    for (const auto &phi : catalog()) {
        BernsteinGammaEvaluator ev(phi);
        CHECK(std::abs(ev.eval_W(1.0) - cdouble(1.0)) <= 1e-12);

        double prod = 1.0;
        for (int n = 1; n <= 30; ++n) {
            prod *= phi.eval(static_cast<double>(n));
            const double got = ev.eval_W(cdouble(n + 1.0)).real();
            CHECK(oracles::rel_err(got, prod) < 1e-10);
        }

        for (double a : {0.25, 1.0, 2.0}) {
            const double wa = ev.eval_W(a).real();
            for (double b : {1.0, 7.0, 26.0, 50.0}) {
                CHECK(std::abs(ev.eval_W(cdouble(a, b))) <= wa * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("power coherence") {
    BernsteinGammaEvaluator ev(BernsteinFunction::gauss_laguerre(0.5, 1.0));
    for (double b : {0.0, 3.0, 11.0}) {
        const cdouble z(1.3, b);
        const cdouble lhs = ev.eval_W_power(2.0, z);
        const cdouble rhs = ev.eval_W_power(0.7, z) * ev.eval_W_power(1.3, z);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
    }
}

TEST_CASE("gamma conformance sample for the identity family") {
    BernsteinGammaEvaluator ev(BernsteinFunction::identity());
    for (double a : {0.1, 0.5, 1.0, 2.5, 6.0, 10.0}) {
        for (double b : {-20.0, -7.5, 0.0, 1.0, 13.0, 20.0}) {
            const cdouble z(a, b);
            CHECK(oracles::rel_err(ev.eval_W(z), oracles::lanczos_gamma(z)) < 1e-9);
        }
    }
}

TEST_CASE("decay along imaginary lines") {
    for (const auto &phi : {BernsteinFunction::identity(), BernsteinFunction::gauss_laguerre(0.5, 1.0)}) {
        BernsteinGammaEvaluator ev(phi);
        double prev = std::numeric_limits<double>::infinity();
        for (double b = 20.0; b <= 200.0; b += 30.0) {
            const double v = std::exp(ev.log_W(cdouble(1.0, b)).real()) * std::pow(b, 4.0);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("stirling route") {
    auto id = BernsteinFunction::identity();
    CHECK(burb::stirling_G(id, 10.0) ==
          doctest::Approx(10.0 * std::log(10.0) - 9.0).epsilon(1e-10));

    auto cal = burb::calibrate_C_phi(id);
    CHECK(std::fabs(cal.c_phi - std::sqrt(2.0 * M_PI)) < 0.005 * std::sqrt(2.0 * M_PI));
    CHECK(std::fabs(cal.c_phi - std::sqrt(2.0 * M_PI)) < 10.0 * std::max(cal.error_estimate, 1e-9));

    // direct ratio oracle at n = 80: n! / (sqrt(n) e^{n ln n - n + 1})
    const double n = 80.0;
    const double lg = std::lgamma(n + 1.0);
    const double ratio80 = std::exp(lg - 0.5 * std::log(n) - (n * std::log(n) - n + 1.0));
    CHECK(std::fabs(cal.ratio_limit - ratio80) < 2e-3 * ratio80);

    CHECK(oracles::rel_err(burb::stirling_asymptotic(id, 20.0), std::tgamma(21.0)) < 1e-2);

    // Gauss-Laguerre: ratio against the closed-form W at n = 80
    auto gl = BernsteinFunction::gauss_laguerre(0.5, 1.0);
    auto cal_gl = burb::calibrate_C_phi(gl);
    const double logW81 = std::lgamma(0.5 * 81.0 + 1.0) - std::lgamma(1.5);
    const double gl_ratio80 =
        std::exp(logW81 - 0.5 * std::log(gl.eval(80.0)) - burb::stirling_G(gl, 80.0));
    CHECK(std::fabs(cal_gl.ratio_limit - gl_ratio80) <
          std::max(5.0 * cal_gl.error_estimate, 2e-3 * gl_ratio80));

    CHECK_THROWS_AS(burb::calibrate_C_phi(BernsteinFunction::bounded_ratio()),
                    burb::domain_error);
}
