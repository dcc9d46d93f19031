#include "beq/normal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace beq::normal {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kInvSqrt2 = 0.7071067811865475244008444;

// Wichura's PPND16 (Algorithm AS 241), relative accuracy ~1e-16.
double ppnd16(double p) {
    static constexpr double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e+2,
        1.9715909503065514427e+3, 1.3731693765509461125e+4,
        4.5921953931549871457e+4, 6.7265770927008700853e+4,
        3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static constexpr double b[8] = {
        1.0,                      4.2313330701600911252e+1,
        6.8718700749205790830e+2, 5.3941960214247511077e+3,
        2.1213794301586595867e+4, 3.9307895800092710610e+4,
        2.8729085735721942674e+4, 5.2264952788528545610e+3};
    static constexpr double c[8] = {
        1.42343711074968357734e0,  4.63033784615654529590e0,
        5.76949722146069140550e0,  3.64784832476320460504e0,
        1.27045825245236838258e0,  2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[8] = {
        1.0,                       2.05319162663775882187e0,
        1.67638483018380384940e0,  6.89767334985100004550e-1,
        1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static constexpr double e[8] = {
        6.65790464350110377720e0,  5.46378491116411436990e0,
        1.78482653991729133580e0,  2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[8] = {
        1.0,                       5.99832206555887937690e-1,
        1.36929880922735805310e-1, 1.48753612908506148525e-2,
        7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    auto poly = [](const double (&coef)[8], double x) {
        double r = coef[7];
        for (int i = 6; i >= 0; --i) r = r * x + coef[i];
        return r;
    };

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = poly(c, r) / poly(d, r);
    } else {
        r -= 5.0;
        x = poly(e, r) / poly(f, r);
    }
    return q < 0.0 ? -x : x;
}

// Gauss-Legendre nodes/weights on [-1,1], computed once by Newton
// iteration on the Legendre recurrence.
template <int N>
struct GaussLegendre {
    std::array<double, N> node;
    std::array<double, N> weight;

    GaussLegendre() {
        for (int i = 0; i < (N + 1) / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= N; ++j) {
                    const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            node[i] = -x;
            node[N - 1 - i] = x;
            weight[i] = weight[N - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

// After the substitution r = sin(theta) the correlation integral
// (1/2pi) int_0^{asin rho} exp(-(h^2+k^2-2hk sin t)/(2 cos^2 t)) dt
// has an analytic integrand on the closed interval, so fixed-order
// Gauss-Legendre panels converge fast even for |rho| near 1.
double angular_integrand(double h, double k, double t) {
    const double s = std::sin(t);
    const double c2 = 1.0 - s * s;
    if (c2 <= 0.0) {
        // t = +-pi/2 exactly; limit is exp(-hk... ) only when h == k.
        return h == k ? std::exp(-0.5 * h * h) : 0.0;
    }
    return std::exp(-0.5 * (h * h + k * k - 2.0 * h * k * s) / c2);
}

template <int N>
double panel(const GaussLegendre<N>& gl, double h, double k, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < N; ++i)
        sum += gl.weight[i] * angular_integrand(h, k, mid + half * gl.node[i]);
    return sum * half;
}

double adaptive(double h, double k, double a, double b, double tol, int depth) {
    static const GaussLegendre<10> gl10;
    static const GaussLegendre<21> gl21;
    const double coarse = panel(gl10, h, k, a, b);
    const double fine = panel(gl21, h, k, a, b);
    if (std::fabs(fine - coarse) <= tol || depth >= 24)
        return fine;
    const double mid = 0.5 * (a + b);
    return adaptive(h, k, a, mid, 0.5 * tol, depth + 1) +
           adaptive(h, k, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

namespace {

// Newton-refined inverse for p in (0, 0.5].  In this half cdf(x) is the
// lower tail of erfc and relative-accurate, so the refinement never
// loses precision.
double quantile_lower_half(double p) {
    double x = ppnd16(p);
    const double d = pdf(x);
    if (d > 1e-300) x -= (cdf(x) - p) / d;
    return x;
}

}  // namespace

double quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal::quantile: p must lie in (0,1)");
    // 1-p is exact for p >= 0.5, making the reflection bitwise antisymmetric.
    return p <= 0.5 ? quantile_lower_half(p) : -quantile_lower_half(1.0 - p);
}

double bivariate_excess(double h, double k, double rho) {
    if (std::fabs(rho) > 1.0)
        throw std::domain_error("normal::bivariate_cdf: |rho| must be <= 1");
    if (rho == 0.0 || !std::isfinite(h) || !std::isfinite(k)) return 0.0;
    if (rho == 1.0) return cdf(std::min(h, k)) - cdf(h) * cdf(k);
    if (rho == -1.0) return std::max(0.0, cdf(h) + cdf(k) - 1.0) - cdf(h) * cdf(k);
    const double theta = std::asin(rho);
    const double raw = adaptive(h, k, 0.0, theta, 1e-13, 0) / (2.0 * M_PI);
    // The exact excess is bounded by the Frechet limits at rho = +-1.
    const double upper = cdf(std::min(h, k)) - cdf(h) * cdf(k);
    const double lower = std::max(0.0, cdf(h) + cdf(k) - 1.0) - cdf(h) * cdf(k);
    return std::clamp(raw, lower, upper);
}

double bivariate_cdf(double h, double k, double rho) {
    if (std::fabs(rho) > 1.0)
        throw std::domain_error("normal::bivariate_cdf: |rho| must be <= 1");
    if (std::isnan(h) || std::isnan(k))
        return std::numeric_limits<double>::quiet_NaN();
    if (h == -std::numeric_limits<double>::infinity() ||
        k == -std::numeric_limits<double>::infinity())
        return 0.0;
    if (h == std::numeric_limits<double>::infinity()) return cdf(k);
    if (k == std::numeric_limits<double>::infinity()) return cdf(h);
    return cdf(h) * cdf(k) + bivariate_excess(h, k, rho);
}

double bivariate_cdf(const BivariateArgs& args) {
    return bivariate_cdf(args.h, args.k, args.rho);
}

}  // namespace beq::normal
