#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "gl4bessel/exec.hpp"
#include "gl4bessel/power_weyl.hpp"

namespace gl4 {

enum class CoefForm { a, b, c, d, e, f };
CoefForm coef_form_from_char(char c);

// Dense coefficient box [0, order]^dim.
class Lattice {
  public:
    Lattice() = default;
    Lattice(int dim, int order);

    int dim() const { return dim_; }
    int order() const { return order_; }
    std::size_t size() const { return data_.size(); }
    // 0 for any index outside the box, in particular negative ones
    cplx at(std::span<const int> m) const;
    cplx& operator[](std::size_t flat) { return data_[flat]; }
    const cplx& operator[](std::size_t flat) const { return data_[flat]; }
    std::vector<int> point(std::size_t flat) const;
    std::size_t flat(std::span<const int> m) const;
    bool contains(std::span<const int> m) const;
    double max_abs() const;

  private:
    int dim_ = 0;
    int order_ = 0;
    std::vector<cplx> data_;
};

// Normalized coefficients a*_{211} and a*_{1111}.
cplx star_211(const Mu& mu, int m1, int m2, CoefForm form = CoefForm::a);
cplx star_1111(const Mu& mu, int m1, int m2, int m3, CoefForm form = CoefForm::a);

// Full Frobenius coefficient a_{w,m}(mu). Forms apply to w211 (a-c) and
// w1111 (a-f). Negative indices give 0.
cplx series_coefficient(const WeylElement& w, const Mu& mu, std::span<const int> m,
                        CoefForm form = CoefForm::a);

Lattice coefficient_lattice(const WeylElement& w, const Mu& mu, int order,
                            CoefForm form = CoefForm::a, Exec exec = Exec::parallel);

// Leading exponent for each free coordinate (in free_coordinates order).
std::vector<cplx> leading_exponents(const WeylElement& w, const Mu& mu);

struct SeriesValue {
    cplx value;
    double truncation;  // magnitude of the outermost shell
    bool truncation_warning;
};

// J_w(y, mu, delta) = sign character of delta at y times J_w(y, mu).
SeriesValue j_series(const WeylElement& w, const YPoint& y, const SpectralParams& p, int order);
SeriesValue j_series(const WeylElement& w, const YPoint& y, const SpectralParams& p,
                     const Lattice& coeffs);
// prod sgn(a_i)^delta_i for a = diag(y)
double delta_sign(const YPoint& y, const Delta& delta);

// Max normalized residual of the recurrences for w at lattice point m.
double recurrence_residual(const WeylElement& w, const Mu& mu, std::span<const int> m);

// R_{n,k}(mu) of Hashizume's recurrence for n = 4.
cplx hashizume_r(const Mu& mu, int k1, int k2, int k3);
// G_{4,m} by pure recurrence.
Lattice recurrence_oracle_wl(const Mu& mu, int order);

void dump_lattice_csv(std::ostream& out, const Lattice& lat);

}  // namespace gl4
