#include "burb/special.hpp"

#include <cmath>

#include "burb/errors.hpp"

namespace burb {

namespace {

// B_{2n} / (2n (2n-1)) for the Stirling series of log Gamma.
constexpr double stirling_coeff[7] = {
    1.0 / 12.0,   -1.0 / 360.0,     1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,
};

constexpr double half_log_two_pi = 0.91893853320467274178;

// log(1+w) without the 1+w rounding; assumes |1+w| bounded away from 0.
cdouble clog1p(cdouble w) {
    const double u = w.real(), v = w.imag();
    const double r2m1 = 2.0 * u + u * u + v * v;  // |1+w|^2 - 1
    return {0.5 * std::log1p(r2m1), std::atan2(v, 1.0 + u)};
}

} // namespace

cdouble log_gamma(cdouble z) {
    if (!(z.real() > 0.0))
        throw domain_error("log_gamma: requires Re z > 0");

    // Shift until |z| is in the asymptotic regime. Each factor stays in the
    // right half-plane, so principal logs stitch continuously.
    cdouble shift_log = 0.0;
    while (std::abs(z) < 12.0) {
        shift_log += std::log(z);
        z += 1.0;
    }

    const cdouble inv = 1.0 / z;
    const cdouble inv2 = inv * inv;
    cdouble series = 0.0;
    cdouble p = inv;
    for (double c : stirling_coeff) {
        series += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + half_log_two_pi + series - shift_log;
}

double digamma(double x) {
    if (!(x > 0.0))
        throw domain_error("digamma: requires x > 0");
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / x;
    const double r2 = r * r;
    // psi(x) ~ ln x - 1/(2x) - sum B_{2n}/(2n x^{2n})
    double series = r2 * (1.0 / 12.0 -
                    r2 * (1.0 / 120.0 -
                    r2 * (1.0 / 252.0 -
                    r2 * (1.0 / 240.0 -
                    r2 * (1.0 / 132.0)))));
    return acc + std::log(x) - 0.5 * r - series;
}

cdouble rising_factorial(cdouble z, int n) {
    cdouble p = 1.0;
    for (int j = 0; j < n; ++j) p *= z + static_cast<double>(j);
    return p;
}

cdouble log_gamma_diff(cdouble x, cdouble y) {
    if (!(x.real() > 0.0) || !(y.real() > 0.0))
        throw domain_error("log_gamma_diff: requires Re > 0");
    const cdouble delta = x - y;

    cdouble shift = 0.0;
    while (std::abs(x) < 12.0 || std::abs(y) < 12.0) {
        shift -= clog1p(delta / y);  // Log(y+j) - Log(x+j)
        x += 1.0;
        y += 1.0;
    }

    // Stirling difference: delta*Log y + (x-1/2)Log(x/y) - delta + series.
    cdouble out = shift + delta * std::log(y) + (x - 0.5) * clog1p(delta / y) - delta;
    const cdouble ix = 1.0 / x, iy = 1.0 / y;
    const cdouble ix2 = ix * ix, iy2 = iy * iy;
    out += stirling_coeff[0] * (-delta * ix * iy);  // 1/x - 1/y
    cdouble px = ix * ix2, py = iy * iy2;
    for (int j = 1; j < 7; ++j) {
        out += stirling_coeff[j] * (px - py);
        px *= ix2;
        py *= iy2;
    }
    return out;
}

namespace {

// s + e = alpha*z + c to second order (FMA product residue + TwoSum).
void compensated_arg(double alpha, cdouble z, double c, cdouble &s, cdouble &e) {
    const double pr = alpha * z.real();
    const double er = std::fma(alpha, z.real(), -pr);
    const double sr = pr + c;
    const double t = sr - pr;
    const double e2 = (pr - (sr - t)) + (c - t);
    const double pi = alpha * z.imag();
    const double ei = std::fma(alpha, z.imag(), -pi);
    s = {sr, pi};
    e = {er + e2, ei};
}

// Crude psi: only multiplies residues of size ~|arg| eps, so two terms do.
cdouble psi_approx(cdouble w) { return std::log(w) - 0.5 / w; }

} // namespace

cdouble log_gamma_ratio_affine(double alpha, cdouble z, double a, double b) {
    cdouble sx, ex, sy, ey;
    compensated_arg(alpha, z, a, sx, ex);
    compensated_arg(alpha, z, b, sy, ey);
    return log_gamma_diff(sx, sy) + ex * psi_approx(sx) - ey * psi_approx(sy);
}

double digamma_diff(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw domain_error("digamma_diff: requires x, y > 0");
    const double delta = x - y;
    double acc = 0.0;
    // The series truncation bias below is systematic; summing r(k) over many k
    // amplifies it, so shift far enough that it sits below 1e-22 per call.
    while (x < 32.0 || y < 32.0) {
        acc += delta / (x * y);  // 1/y - 1/x
        x += 1.0;
        y += 1.0;
    }
    // psi(x)-psi(y) ~ ln(x/y) - (1/2)(1/x-1/y) - sum B_{2n}/(2n) (x^-2n - y^-2n)
    double out = acc + std::log1p(delta / y) + 0.5 * delta / (x * y);
    const double ix2 = 1.0 / (x * x), iy2 = 1.0 / (y * y);
    static const double psi_coeff[6] = {1.0 / 12.0,  -1.0 / 120.0,      1.0 / 252.0,
                                        -1.0 / 240.0, 1.0 / 132.0,      -691.0 / 32760.0};
    double px = ix2, py = iy2;
    for (double c : psi_coeff) {
        out -= c * (px - py);
        px *= ix2;
        py *= iy2;
    }
    return out;
}

} // namespace burb
