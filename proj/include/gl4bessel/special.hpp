#pragma once

#include <complex>
#include <span>

namespace gl4 {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kPoleTol = 1e-12;

// i^n for integer n, exact.
cplx i_pow(int n);

// Reduced parity in {0,1}.
inline int parity(int eta) { return ((eta % 2) + 2) % 2; }

// log Gamma; the branch may differ from the principal one by 2*pi*i,
// callers only exponentiate sums and differences.
cplx lgamma_c(cplx z);
cplx gamma_c(cplx z);
// 1/Gamma, exactly 0 on the pole lattice.
cplx rgamma_c(cplx z);
// Gamma(a)/Gamma(b) through lgamma, 0 when b is a pole.
cplx gamma_ratio(cplx a, cplx b);

bool near_nonpositive_integer(cplx z, double tol = kPoleTol);
bool near_integer(cplx z, double tol = kPoleTol);

cplx pochhammer(cplx s, int j);

cplx g_eta(int eta, cplx s);
cplx r_eta(int eta, cplx s);
cplx g_vec(int ell, cplx s, std::span<const cplx> t, std::span<const int> eta);

cplx residue_g(int eta, int n);
// Residue of 1/R_eta at the integer n (zero when n has the wrong parity).
cplx residue_inv_r(int eta, int n);

// Right-hand side of the Stirling magnitude estimate for |Gamma(sigma+it)|.
double stirling_abs_gamma(double sigma, double t);

cplx bessel_j(cplx nu, double x);
cplx bessel_i(cplx nu, double x);
cplx bessel_k(cplx nu, double x);

// Z^eta_s(a) for real a != 0.
cplx classical_z(cplx s, int eta, double a);

}  // namespace gl4
