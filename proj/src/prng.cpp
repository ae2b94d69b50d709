#include "roughhj/prng.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace roughhj {

SplitMix64 component_stream(std::uint64_t seed, int component) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(component + 1);
    SplitMix64 warm(s);
    // decorrelate nearby seeds
    std::uint64_t s2 = warm.next_u64();
    return SplitMix64(s2);
}

double det_log(double x) {
    if (!(x > 0.0))
        throw std::domain_error("det_log: nonpositive argument");
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    int exponent = static_cast<int>((bits >> 52) & 0x7ffull);
    std::uint64_t mant = bits & 0xfffffffffffffull;
    double m;
    if (exponent == 0) { // subnormal: renormalize
        double xn = x * 0x1.0p64;
        const std::uint64_t nb = std::bit_cast<std::uint64_t>(xn);
        exponent = static_cast<int>((nb >> 52) & 0x7ffull) - 64;
        mant = nb & 0xfffffffffffffull;
    }
    int e = exponent - 1023;
    m = std::bit_cast<double>((static_cast<std::uint64_t>(1023) << 52) | mant); // in [1,2)
    if (m > 1.4142135623730951) {
        m *= 0.5;
        e += 1;
    }
    // ln(m) = 2 atanh((m-1)/(m+1)), |z| <= 0.1716
    const double z = (m - 1.0) / (m + 1.0);
    const double z2 = z * z;
    double s = 1.0 / 19.0;
    s = s * z2 + 1.0 / 17.0;
    s = s * z2 + 1.0 / 15.0;
    s = s * z2 + 1.0 / 13.0;
    s = s * z2 + 1.0 / 11.0;
    s = s * z2 + 1.0 / 9.0;
    s = s * z2 + 1.0 / 7.0;
    s = s * z2 + 1.0 / 5.0;
    s = s * z2 + 1.0 / 3.0;
    s = s * z2 + 1.0;
    const double ln2 = 0.69314718055994530941723212145818;
    return 2.0 * z * s + static_cast<double>(e) * ln2;
}

double normal_inv_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_inv_cdf: p outside (0,1)");
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    const double phigh = 1.0 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * det_log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > phigh) {
        q = std::sqrt(-2.0 * det_log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double SplitMix64::next_normal() { return normal_inv_cdf(next_uniform()); }

} // namespace roughhj
