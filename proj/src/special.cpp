#include "gl4bessel/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include "gl4bessel/errors.hpp"

namespace gl4 {

namespace {

constexpr double kLanczosG = 671.0 / 128.0;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kSqrt2Pi = 2.5066282746310005024;

cplx lgamma_right(cplx x) {
    cplx tmp = x + kLanczosG;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    cplx ser = 0.999999999999997092;
    cplx y = x;
    for (double c : kLanczos) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(kSqrt2Pi * ser / x);
}

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
    const cplx I(0, 1);
    if (z.imag() > 0)
        return -I * kPi * z + std::log((std::exp(2.0 * I * kPi * z) - 1.0) / (2.0 * I));
    return I * kPi * z + std::log((1.0 - std::exp(-2.0 * I * kPi * z)) / (2.0 * I));
}

}  // namespace

cplx i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

bool near_integer(cplx z, double tol) {
    return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

bool near_nonpositive_integer(cplx z, double tol) {
    return near_integer(z, tol) && std::round(z.real()) <= 0;
}

cplx lgamma_c(cplx z) {
    if (z.real() >= 0.5) return lgamma_right(z);
    return std::log(kPi) - log_sin_pi(z) - lgamma_right(1.0 - z);
}

cplx gamma_c(cplx z) {
    if (near_nonpositive_integer(z))
        throw PoleError("gamma: pole at " + std::to_string(z.real()));
    if (near_integer(z, 1e-14) && z.real() < 25) {
        double f = 1;
        for (int k = 2; k < static_cast<int>(std::round(z.real())); ++k) f *= k;
        return f;
    }
    return std::exp(lgamma_c(z));
}

cplx rgamma_c(cplx z) {
    if (near_nonpositive_integer(z)) return 0.0;
    return std::exp(-lgamma_c(z));
}

cplx gamma_ratio(cplx a, cplx b) {
    if (near_nonpositive_integer(a))
        throw PoleError("gamma_ratio: numerator pole");
    if (near_nonpositive_integer(b)) return 0.0;
    return std::exp(lgamma_c(a) - lgamma_c(b));
}

cplx pochhammer(cplx s, int j) {
    cplx r = 1.0;
    for (int k = 0; k < j; ++k) r *= s + static_cast<double>(k);
    return r;
}

cplx g_eta(int eta, cplx s) {
    const int e = parity(eta);
    const cplx num = (static_cast<double>(e) + s) / 2.0;
    if (near_nonpositive_integer(num))
        throw PoleError("G_eta: pole at s=" + std::to_string(s.real()));
    const cplx den = (1.0 + e - s) / 2.0;
    if (near_nonpositive_integer(den)) return 0.0;
    return i_pow(e) * std::exp((0.5 - s) * std::log(kPi) + lgamma_c(num) - lgamma_c(den));
}

cplx r_eta(int eta, cplx s) {
    const int e = parity(eta);
    return i_pow(e) * std::cos(kPi * (s - static_cast<double>(e)) / 2.0);
}

cplx g_vec(int ell, cplx s, std::span<const cplx> t, std::span<const int> eta) {
    if (t.size() != eta.size()) throw DomainError("g_vec: length mismatch");
    cplx r = 1.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        try {
            r *= g_eta(ell + eta[j], s + t[j]);
        } catch (const PoleError&) {
            throw PoleError("g_vec: factor " + std::to_string(j) + " at a pole");
        }
    }
    return r;
}

cplx residue_g(int eta, int n) {
    if (n < 0 || parity(n) != parity(eta))
        throw NotAPole("residue_g: s=-" + std::to_string(n) + " is not a pole of G_" +
                       std::to_string(eta));
    cplx r = 2.0;
    for (int k = 1; k <= n; ++k) r *= cplx(0, 2 * kPi) / static_cast<double>(k);
    return r;
}

cplx residue_inv_r(int eta, int n) {
    if (parity(n) != parity(eta + 1)) return 0.0;
    return cplx(0, 2 / kPi) * (parity(eta) ? -1.0 : 1.0) * i_pow(n);
}

double stirling_abs_gamma(double sigma, double t) {
    return std::tgamma(sigma) * std::pow(std::hypot(1.0, t / sigma), sigma - 0.5) *
           std::exp(-std::abs(t) * std::atan(std::abs(t) / sigma));
}

namespace {

cplx ascending(cplx nu, double x, double sign) {
    const double h = x / 2;
    const double q = sign * h * h;
    cplx sum = 0;
    cplx lead = std::exp(nu * std::log(h));
    double qk = 1, kfact = 1;
    for (int k = 0; k < 400; ++k) {
        if (k > 0) {
            qk *= q;
            kfact *= k;
        }
        const cplx term = lead * (qk / kfact) * rgamma_c(nu + static_cast<double>(k + 1));
        sum += term;
        if (k > 4 && std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

cplx bessel_j(cplx nu, double x) { return ascending(nu, x, -1.0); }
cplx bessel_i(cplx nu, double x) { return ascending(nu, x, 1.0); }

cplx bessel_k(cplx nu, double x) {
    if (!(x > 0)) throw DomainError("bessel_k: x must be positive");
    if (std::abs(nu.imag()) > 4 && !near_integer(nu, 1e-3)) {
        return kPi / 2.0 * (bessel_i(-nu, x) - bessel_i(nu, x)) / std::sin(kPi * nu);
    }
    // trapezoid on the integral of exp(-x cosh t) cosh(nu t)
    const double h = 0.02;
    const double tmax = std::acosh((750.0 + 2 * std::abs(nu.real()) * 10) / x + 1.0) + 1.0;
    cplx sum = 0.5 * std::exp(-x);
    for (double t = h; t < tmax; t += h) sum += std::exp(-x * std::cosh(t)) * std::cosh(nu * t);
    return sum * h;
}

cplx classical_z(cplx s, int eta, double a) {
    if (a == 0) throw DomainError("classical_z: a = 0");
    if (std::abs(s.real()) >= 2) throw DomainError("classical_z: |Re s| >= 2");
    const double x = 4 * kPi * std::sqrt(std::abs(a));
    if (a < 0) {
        return 4.0 * i_pow(eta) * bessel_k(s, x) *
               std::cos(kPi * (s - static_cast<double>(eta)) / 2.0);
    }
    const cplx sn = std::sin(kPi * (s + static_cast<double>(eta)) / 2.0);
    if (std::abs(sn) < kPoleTol) throw PoleError("classical_z: sin(pi(s+eta)/2) vanishes");
    const double sg = parity(eta) ? -1.0 : 1.0;
    return kPi * i_pow(eta) * (bessel_j(-s, x) - sg * bessel_j(s, x)) / sn;
}

}  // namespace gl4
