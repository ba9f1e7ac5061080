#include "gl4bessel/series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "gl4bessel/errors.hpp"
#include "gl4bessel/hypergeometric.hpp"

namespace gl4 {

namespace {

const double k16Pi4 = 16 * std::pow(kPi, 4);
const double k8Pi3 = 8 * std::pow(kPi, 3);
const double k4Pi2 = 4 * kPi * kPi;

cplx real_pow(double base, cplx e) { return std::exp(e * std::log(base)); }

double factorial(int n) {
    double r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

cplx P(cplx s, int j) { return pochhammer(s, j); }

cplx F(std::vector<cplx> a, std::vector<cplx> b) { return hyp(std::move(a), std::move(b), 1.0); }

double sign_pow(int k) { return k % 2 ? -1.0 : 1.0; }

void require_distinct(const Mu& mu) {
    SpectralParams p{mu, {}};
    if (!p.distinct(1e-9)) throw DegenerateParameters("mu coordinates not distinct modulo Z");
}

cplx a31(const Mu& u, int m) {
    cplx r = real_pow(k16Pi4, -u[3]) * std::pow(-k16Pi4, m) / factorial(m);
    for (int j = 0; j < 3; ++j) r *= rgamma_c(1.0 + u[j] - u[3] + double(m));
    return r;
}

cplx a22(const Mu& u, int m) {
    const cplx s = u[0] + u[1];
    const double md = m;
    return real_pow(k16Pi4, s) * std::pow(k16Pi4, m) / factorial(m) * P(1.0 + 2.0 * s + md, m) *
           rgamma_c(1.0 + u[0] - u[2] + md) * rgamma_c(1.0 + u[0] - u[3] + md) *
           rgamma_c(1.0 + u[1] - u[2] + md) * rgamma_c(1.0 + u[1] - u[3] + md);
}

// a_{121} without the (8 pi^3 i)^{k1} (-8 pi^3 i)^{k2} factor
cplx a121_core(const Mu& u, int k1, int k2) {
    const double x = k1, z = k2;
    return real_pow(k8Pi3, u[0] - u[3]) / (factorial(k1) * factorial(k2)) *
           P(1.0 + u[0] - u[3] + x, k2) * rgamma_c(1.0 + u[0] - u[1] + x) *
           rgamma_c(1.0 + u[0] - u[2] + x) * rgamma_c(1.0 + u[0] - u[3] + z) *
           rgamma_c(1.0 + u[1] - u[3] + z) * rgamma_c(1.0 + u[2] - u[3] + z);
}

cplx a121(const Mu& u, int k1, int k2) {
    return a121_core(u, k1, k2) * std::pow(k8Pi3, k1 + k2) * i_pow(k1) * i_pow(-k2);
}

// Sum of terms divided by the largest term.
double normalized(std::initializer_list<cplx> terms) {
    cplx s = 0;
    double mag = 0;
    for (auto t : terms) {
        s += t;
        mag = std::max(mag, std::abs(t));
    }
    return mag == 0 ? 0 : std::abs(s) / mag;
}

}  // namespace

CoefForm coef_form_from_char(char c) {
    if (c < 'a' || c > 'f') throw DomainError(std::string("unknown coefficient form '") + c + "'");
    return static_cast<CoefForm>(c - 'a');
}

Lattice::Lattice(int dim, int order) : dim_(dim), order_(order) {
    std::size_t n = 1;
    for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(order + 1);
    data_.assign(n, 0.0);
}

bool Lattice::contains(std::span<const int> m) const {
    if (static_cast<int>(m.size()) != dim_) return false;
    return std::all_of(m.begin(), m.end(), [&](int v) { return v >= 0 && v <= order_; });
}

std::size_t Lattice::flat(std::span<const int> m) const {
    std::size_t f = 0;
    for (int i = dim_ - 1; i >= 0; --i) f = f * (order_ + 1) + m[i];
    return f;
}

std::vector<int> Lattice::point(std::size_t flat) const {
    std::vector<int> m(dim_);
    for (int i = 0; i < dim_; ++i) {
        m[i] = static_cast<int>(flat % (order_ + 1));
        flat /= (order_ + 1);
    }
    return m;
}

cplx Lattice::at(std::span<const int> m) const { return contains(m) ? data_[flat(m)] : 0.0; }

double Lattice::max_abs() const {
    double r = 0;
    for (const auto& v : data_) r = std::max(r, std::abs(v));
    return r;
}

cplx star_211(const Mu& u, int k1, int k2, CoefForm form) {
    if (k1 < 0 || k2 < 0) return 0.0;
    const double x = k1, z = k2;
    const double pre = sign_pow(k1) / (factorial(k1) * factorial(k2));
    switch (form) {
        case CoefForm::a:
            return pre / (P(1.0 + u[0] - u[3], k1) * P(1.0 + u[1] - u[3], k1) * P(1.0 + u[2] - u[3], k2)) *
                   F({-x, 1.0 + 2.0 * u[0] + 2.0 * u[1] + x, u[3] - u[2] - z},
                     {1.0 + u[0] - u[2], 1.0 + u[1] - u[2]});
        case CoefForm::b:
            return pre / (P(1.0 + u[0] - u[2], k1) * P(1.0 + u[1] - u[2], k1) * P(1.0 + u[0] - u[3], k2)) *
                   F({u[2] - u[0] - x, 1.0 + u[1] - u[3] + x, -z},
                     {1.0 + u[1] - u[3], 1.0 + u[2] - u[3]});
        case CoefForm::c:
            return pre / (P(1.0 + u[0] - u[2], k1) * P(1.0 + u[1] - u[2], k1) * P(1.0 + u[2] - u[3], k2)) *
                   F({-x, 1.0 + 2.0 * u[0] + 2.0 * u[1] + x, -z},
                     {1.0 + u[0] - u[3], 1.0 + u[1] - u[3]});
        default:
            throw DomainError("w211 coefficients have forms a, b, c only");
    }
}

cplx star_1111(const Mu& mu, int m1, int m2, int m3, CoefForm form) {
    if (m1 < 0 || m2 < 0 || m3 < 0) return 0.0;
    const cplx u1 = mu[0], u2 = mu[1], u3 = mu[2], u4 = mu[3];
    const cplx s = 2.0 * (u1 + u2);
    const double x1 = m1, x2 = m2, x3 = m3;
    const double fm = factorial(m1) * factorial(m2) * factorial(m3);
    switch (form) {
        case CoefForm::a:
            return P(1.0 + s, m2 + m3) * P(1.0 + u1 - u3, m1 + m2) /
                   (fm * P(1.0 + u1 - u2, m1) * P(1.0 + s, m2) * P(1.0 + u1 - u3, m1) *
                    P(1.0 + u1 - u3, m2) * P(1.0 + u2 - u3, m2) * P(1.0 + u1 - u4, m3) *
                    P(1.0 + u2 - u4, m3)) *
                   F({-x1 - u1 + u3, -x2 - u2 + u3, -x2 - u1 + u3, -x3},
                     {1.0 + u3 - u4, -x1 - x2 - u1 + u3, -x2 - x3 - s});
        case CoefForm::b:
            return P(1.0 + u1 - u4, m2 + m3) * P(1.0 + u1 - u3, m1 + m2) /
                   (fm * P(1.0 + u1 - u2, m1) * P(1.0 + u1 - u3, m1) * P(1.0 + u1 - u3, m2) *
                    P(1.0 + u2 - u3, m2) * P(1.0 + u1 - u4, m2) * P(1.0 + u1 - u4, m3) *
                    P(1.0 + u3 - u4, m3)) *
                   F({-x1 - u1 + u2, -x2, -x2 - u1 + u3, -x3},
                     {1.0 + u2 - u4, -x1 - x2 - u1 + u3, -x2 - x3 - u1 + u4});
        case CoefForm::c:
            return P(1.0 + u1 - u4, m2 + m3) * P(1.0 + u1 - u4, m1 + m2) /
                   (fm * P(1.0 + u1 - u2, m1) * P(1.0 + u1 - u3, m2) * P(1.0 + u1 - u4, m1) *
                    P(1.0 + u1 - u4, m2) * P(1.0 + u1 - u4, m3) * P(1.0 + u2 - u4, m2) *
                    P(1.0 + u3 - u4, m3)) *
                   F({-x1 - u1 + u2, -x2, -x2 - u1 + u4, -x3 - u3 + u4},
                     {1.0 + u2 - u3, -x1 - x2 - u1 + u4, -x2 - x3 - u1 + u4});
        case CoefForm::d:
            return P(1.0 + u2 - u4, m2 + m3) * P(1.0 + u1 - u3, m1 + m2) /
                   (fm * P(1.0 + u1 - u2, m1) * P(1.0 + u1 - u3, m1) * P(1.0 + u1 - u3, m2) *
                    P(1.0 + u2 - u3, m2) * P(1.0 + u2 - u4, m2) * P(1.0 + u2 - u4, m3) *
                    P(1.0 + u3 - u4, m3)) *
                   F({-x1, -x2, -x2 - u2 + u3, -x3},
                     {1.0 + u1 - u4, -x1 - x2 - u1 + u3, -x2 - x3 - u2 + u4});
        case CoefForm::e:
            return P(1.0 + u2 - u4, m2 + m3) * P(1.0 + u1 - u4, m1 + m2) /
                   (fm * P(1.0 + u1 - u2, m1) * P(1.0 + u2 - u3, m2) * P(1.0 + u1 - u4, m1) *
                    P(1.0 + u1 - u4, m2) * P(1.0 + u2 - u4, m2) * P(1.0 + u2 - u4, m3) *
                    P(1.0 + u3 - u4, m3)) *
                   F({-x1, -x2, -x2 - u2 + u4, -x3 - u3 + u4},
                     {1.0 + u1 - u3, -x1 - x2 - u1 + u4, -x2 - x3 - u2 + u4});
        case CoefForm::f:
            return P(1.0 + u2 - u4, m2 + m3) * P(1.0 + s, m1 + m2) /
                   (fm * P(1.0 + s, m2) * P(1.0 + u1 - u3, m1) * P(1.0 + u2 - u3, m2) *
                    P(1.0 + u1 - u4, m1) * P(1.0 + u2 - u4, m2) * P(1.0 + u2 - u4, m3) *
                    P(1.0 + u3 - u4, m3)) *
                   F({-x1, -x2 - u2 + u3, -x2 - u2 + u4, -x3 - u2 + u4},
                     {1.0 + u1 - u2, -x1 - x2 - s, -x2 - x3 - u2 + u4});
    }
    return 0.0;
}

cplx series_coefficient(const WeylElement& w, const Mu& mu, std::span<const int> m,
                        CoefForm form) {
    if (static_cast<int>(m.size()) != w.dimension())
        throw DomainError("series_coefficient: lattice point has wrong dimension");
    if (std::any_of(m.begin(), m.end(), [](int v) { return v < 0; })) return 0.0;
    const std::string n = w.name();
    if (n == "4") return 1.0;
    require_distinct(mu);
    if (n == "31") return a31(mu, m[0]);
    if (n == "22") return a22(mu, m[0]);
    if (n == "121") return a121(mu, m[0], m[1]);
    if (n == "211")
        return std::pow(k8Pi3, m[0]) * i_pow(m[0]) * std::pow(k4Pi2, m[1]) *
               star_211(mu, m[0], m[1], form) / lambda_w(mu, w);
    if (n == "1111")
        return std::pow(k4Pi2, m[0] + m[1] + m[2]) * star_1111(mu, m[0], m[1], m[2], form) /
               lambda_w(mu, w);
    throw DomainError("no Frobenius series for w" + n + "; evaluate its iota image");
}

Lattice coefficient_lattice(const WeylElement& w, const Mu& mu, int order, CoefForm form,
                            Exec exec) {
    if (order < 0) throw DomainError("order must be non-negative");
    Lattice lat(w.dimension(), order);
    if (w.dimension() == 0) {
        lat[0] = 1.0;
        return lat;
    }
    require_distinct(mu);
    parallel_for(lat.size(), exec, [&](std::size_t i) {
        const auto m = lat.point(i);
        lat[i] = series_coefficient(w, mu, m, form);
    });
    return lat;
}

std::vector<cplx> leading_exponents(const WeylElement& w, const Mu& u) {
    const std::string n = w.name();
    if (n == "4") return {};
    if (n == "31") return {1.5 - u[3]};
    if (n == "22") return {2.0 + u[0] + u[1]};
    if (n == "121") return {1.5 + u[0], 1.5 - u[3]};
    if (n == "211") return {2.0 + u[0] + u[1], 1.5 - u[3]};
    if (n == "1111") return {1.5 + u[0], 2.0 + u[0] + u[1], 1.5 - u[3]};
    throw DomainError("no Frobenius series for w" + n + "; evaluate its iota image");
}

double delta_sign(const YPoint& y, const Delta& delta) {
    const auto a = y.diagonal();
    double s = 1;
    for (int i = 0; i < 4; ++i)
        if (a[i] < 0 && parity(delta[i])) s = -s;
    return s;
}

SeriesValue j_series(const WeylElement& w, const YPoint& y, const SpectralParams& p, int order) {
    return j_series(w, y, p, coefficient_lattice(w, p.mu, order, CoefForm::a, Exec::serial));
}

SeriesValue j_series(const WeylElement& w, const YPoint& y, const SpectralParams& p,
                     const Lattice& coeffs) {
    y.validate_for(w);
    if (w.dimension() == 0) return {1.0, 0.0, false};
    const auto fr = free_coordinates(w);
    const auto alpha = leading_exponents(w, p.mu);
    cplx lead = delta_sign(y, p.delta);
    for (std::size_t i = 0; i < fr.size(); ++i)
        lead *= std::exp(alpha[i] * std::log(std::abs(y.y[fr[i]])));
    cplx sum = 0;
    double shell = 0;
    for (std::size_t f = 0; f < coeffs.size(); ++f) {
        const auto m = coeffs.point(f);
        cplx t = coeffs[f];
        for (std::size_t i = 0; i < fr.size(); ++i) t *= std::pow(y.y[fr[i]], m[i]);
        sum += t;
        if (*std::max_element(m.begin(), m.end()) == coeffs.order()) shell += std::abs(t);
    }
    const double trunc = shell * std::abs(lead);
    const cplx value = lead * sum;
    return {value, trunc, trunc > 1e-12 * std::abs(value)};
}

double recurrence_residual(const WeylElement& w, const Mu& u, std::span<const int> m) {
    if (static_cast<int>(m.size()) != w.dimension())
        throw DomainError("recurrence_residual: lattice point has wrong dimension");
    require_distinct(u);
    const std::string n = w.name();
    if (n == "31") {
        const int k = m[0];
        if (k < 1) return 0;
        const auto b = [&](int j) { return j < 0 ? cplx(0) : a31(u, j) / std::pow(k16Pi4, j); };
        cplx prod = double(k);
        for (int j = 0; j < 3; ++j) prod *= u[j] - u[3] + double(k);
        return normalized({b(k - 1), prod * b(k)});
    }
    if (n == "22") {
        const int k = m[0];
        if (k < 1) return 0;
        const double kd = k;
        const cplx s = u[0] + u[1];
        const auto b = [&](int j) { return j < 0 ? cplx(0) : a22(u, j) / std::pow(k16Pi4, j); };
        const cplx lhs = 2.0 * (s + kd) * (-1.0 + 2.0 * s + 2.0 * kd) * b(k - 1);
        const cplx rhs = kd * (2.0 * s + kd) * (u[0] - u[2] + kd) * (u[0] - u[3] + kd) *
                         (u[1] - u[2] + kd) * (u[1] - u[3] + kd) * b(k);
        return normalized({lhs, -rhs});
    }
    if (n == "121") {
        // both t variables are 8 pi^3 i y
        const auto f = [&](int k1, int k2) {
            if (k1 < 0 || k2 < 0) return cplx(0);
            return a121(u, k1, k2) / (std::pow(k8Pi3, k1 + k2) * i_pow(k1 + k2));
        };
        const int k1 = m[0], k2 = m[1];
        const double x = k1, z = k2;
        const cplx c1 = x * (u[0] - u[1] + x) * (u[0] - u[2] + x) -
                        z * (u[1] - u[3] + z) * (u[2] - u[3] + z) +
                        x * z * (2.0 * u[1] + 2.0 * u[2] - x + z);
        const double r1 = normalized({f(k1, k2 - 1), f(k1 - 1, k2), -c1 * f(k1, k2)});
        const double r2 =
            normalized({(u[0] - u[3] + x + z) * f(k1 - 1, k2),
                        -x * (u[0] - u[1] + x) * (u[0] - u[2] + x) * (u[0] - u[3] + x) * f(k1, k2)});
        return std::max(r1, r2);
    }
    if (n == "211") {
        const auto s = [&](int a, int b) { return star_211(u, a, b); };
        const int m1 = m[0], m2 = m[1];
        const double x = m1, z = m2;
        const double r1 = normalized(
            {s(m1 - 1, m2), -2.0 * (u[0] + u[1] + x) * s(m1, m2 - 1),
             (x * (u[0] - u[2] + x) * (u[1] - u[2] + x) +
              2.0 * z * (u[0] + u[1] + x) * (u[2] - u[3] + z - x)) *
                 s(m1, m2)});
        const cplx c2 = 2.0 * u[0] * u[0] + u[0] + u[1] * (5.0 * u[0] + 2.0 * u[1] + 1.0) +
                        u[2] * (-2.0 * u[2] - 3.0 * u[3] + 2.0) +
                        (x + 1.0) * (2.0 * u[0] + 2.0 * u[1] + x) +
                        2.0 * (z - 1.0) * (z - 2.0 * u[3]) + 1.0;
        const double r2 = normalized(
            {z * (u[0] - u[3] + z) * (u[1] - u[3] + z) * (u[2] - u[3] + z) * s(m1, m2),
             s(m1, m2 - 2), -c2 * s(m1, m2 - 1)});
        return std::max(r1, r2);
    }
    if (n == "1111") {
        const int m1 = m[0], m2 = m[1], m3 = m[2];
        if (m1 == 0 && m2 == 0 && m3 == 0) return 0;
        const auto G = [&](int a, int b, int c) { return star_1111(u, a, b, c); };
        const cplx d = hashizume_r(u, m1, m2, m3);
        return normalized(
            {d * G(m1, m2, m3), -G(m1 - 1, m2, m3), -G(m1, m2 - 1, m3), -G(m1, m2, m3 - 1)});
    }
    throw DomainError("no recurrence for w" + n);
}

cplx hashizume_r(const Mu& mu, int k1, int k2, int k3) {
    const int k[5] = {0, k1, k2, k3, 0};
    cplx r = 0;
    for (int j = 1; j <= 4; ++j) {
        const double dk = k[j] - k[j - 1];
        r += dk * dk;
        if (j < 4) r += 2.0 * double(k[j]) * (mu[j - 1] - mu[j]);
    }
    return r / 2.0;
}

Lattice recurrence_oracle_wl(const Mu& mu, int order) {
    Lattice g(3, order);
    for (int m1 = 0; m1 <= order; ++m1)
        for (int m2 = 0; m2 <= order; ++m2)
            for (int m3 = 0; m3 <= order; ++m3) {
                const int m[] = {m1, m2, m3};
                if (m1 + m2 + m3 == 0) {
                    g[g.flat(m)] = 1.0;
                    continue;
                }
                const cplx d = hashizume_r(mu, m1, m2, m3);
                if (std::abs(d) < 1e-12)
                    throw DegenerateParameters("Hashizume denominator vanishes");
                const int a[] = {m1 - 1, m2, m3}, b[] = {m1, m2 - 1, m3}, c[] = {m1, m2, m3 - 1};
                g[g.flat(m)] = (g.at(a) + g.at(b) + g.at(c)) / d;
            }
    return g;
}

void dump_lattice_csv(std::ostream& out, const Lattice& lat) {
    out.precision(17);
    for (int i = 0; i < lat.dim(); ++i) out << "m" << i + 1 << ",";
    out << "re,im\n";
    for (std::size_t f = 0; f < lat.size(); ++f) {
        for (int v : lat.point(f)) out << v << ",";
        out << lat[f].real() << "," << lat[f].imag() << "\n";
    }
}

}  // namespace gl4
