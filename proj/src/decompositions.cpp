#include "gl4bessel/decompositions.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <random>

#include "gl4bessel/errors.hpp"

namespace gl4 {

using Eigen::Matrix4d;

Matrix4d x_matrix(const UnipotentCoords& x) {
    Matrix4d m = Matrix4d::Identity();
    m(0, 1) = x[0];
    m(0, 2) = x[1];
    m(1, 2) = x[2];
    m(0, 3) = x[3];
    m(1, 3) = x[4];
    m(2, 3) = x[5];
    return m;
}

Matrix4d y_matrix(double y1, double y2, double y3, double y4) {
    return Eigen::Vector4d(y1 * y2 * y3 * y4, y2 * y3 * y4, y3 * y4, y4).asDiagonal();
}

Matrix4d a_matrix(double a1, double a2, double a3, double a4) {
    return Eigen::Vector4d(a1 / a2, a2 / a3, a3 / a4, a4).asDiagonal();
}

Matrix4d k_matrix(int i, int j, double x) {
    Matrix4d m = Matrix4d::Identity();
    const double c = 1 / std::sqrt(1 + x * x);
    --i;
    --j;
    m(i, i) = c;
    m(i, j) = -x * c;
    m(j, i) = x * c;
    m(j, j) = c;
    return m;
}

std::vector<int> used_coordinates(const WeylElement& w) {
    const std::string n = w.name();
    if (n == "31") return {0, 1, 3};
    if (n == "22") return {1, 2, 3, 4};
    if (n == "121") return {0, 1, 3, 4, 5};
    if (n == "211") return {0, 1, 2, 3, 4};
    if (n == "1111") return {0, 1, 2, 3, 4, 5};
    throw DomainError("no explicit decomposition for w" + n);
}

namespace {

Matrix4d X(double a, double b, double c, double d, double e, double f) { return x_matrix({a, b, c, d, e, f}); }

}  // namespace

std::pair<Matrix4d, Matrix4d> iwasawa_sides(const WeylElement& w, const UnipotentCoords& x) {
    const auto [x1, x2, x3, x4, x5, x6] = x;
    auto r = [&](int i) { return std::sqrt(1 + x[i - 1] * x[i - 1]); };
    auto xi = [&](std::initializer_list<int> ids) {
        double p = 1;
        for (int i : ids) p *= r(i);
        return p;
    };
    auto sq = [](double v) { return v * v; };
    const Matrix4d W = w.matrix();
    const std::string n = w.name();
    Matrix4d L, R;
    if (n == "31") {
        L = W * X(x1, x2 * xi({1}), 0, x4 * xi({1, 2}), 0, 0);
        R = X(-x1 * x2 / xi({1}), -x1 * x4 / xi({1, 2}), -x2 * x4 / xi({2}), x1 / sq(xi({1, 2, 4})),
              x2 / (xi({1}) * sq(xi({2, 4}))), x4 / (xi({1, 2}) * sq(xi({4})))) *
            y_matrix(xi({2}) / xi({1}), xi({4}) / xi({2}), 1 / (xi({1, 2}) * sq(xi({4}))), xi({1, 2, 4})) *
            k_matrix(3, 4, x4) * k_matrix(2, 4, x2) * k_matrix(1, 4, x1) * W;
    } else if (n == "22") {
        L = W * X(0, x2 * xi({3}), x3, x2 * x3 * x5 + x4 * xi({2, 5}), x5 * xi({3}), 0);
        R = X(-x3 * x5 / xi({3}) - x2 * x4 * xi({5}) / xi({2, 3}),
              -x3 * x4 * x5 / (xi({2, 3, 5}) * sq(xi({4}))) + x2 / (xi({3}) * sq(xi({2, 4}))),
              x4 / (xi({2, 5}) * sq(xi({4}))), x3 / sq(xi({3, 5})), x5 / (xi({3}) * sq(xi({5}))),
              x2 * x3 / xi({3}) + x4 * x5 * xi({2}) / xi({3, 5})) *
            y_matrix(xi({4, 5}) / xi({2, 3}), 1 / (xi({2, 5}) * sq(xi({4}))), xi({2, 4}) / xi({3, 5}), xi({3, 5})) *
            k_matrix(2, 3, x4) * k_matrix(1, 3, x2) * k_matrix(2, 4, x5) * k_matrix(1, 4, x3) * W;
    } else if (n == "121") {
        L = W * X(x1, x2 * xi({1}), 0, x4 * xi({1, 2}),
                  (x1 * x4 - x1 * x2 * x6 * xi({4})) / xi({1, 2}) + x5 * xi({4, 6}) / xi({1}),
                  (x2 * x4 + x6 * xi({4})) / xi({2}));
        R = X(x5 * xi({1}) / (xi({4, 6}) * sq(xi({5}))), x6 * xi({2}) / (xi({4}) * sq(xi({6}))),
              x5 * x6 * xi({2}) / xi({1, 6}) - x1 * x2 / xi({1}), x4 / (xi({1, 2}) * sq(xi({4}))),
              x1 / sq(xi({1, 2})) - x1 * x2 * x4 * x6 / (xi({4}) * sq(xi({1, 2}))) +
                  x4 * x5 * xi({6}) / (xi({2, 4}) * sq(xi({1}))),
              x2 / (xi({1}) * sq(xi({2}))) + x4 * x6 / (xi({1, 4}) * sq(xi({2})))) *
            y_matrix(xi({1}) / (xi({4, 6}) * sq(xi({5}))), xi({2, 5}) / xi({1, 6}),
                     xi({6}) / (xi({1, 4}) * sq(xi({2}))), xi({1, 2, 4})) *
            k_matrix(1, 2, x5) * k_matrix(1, 3, x6) * k_matrix(1, 4, x4) * k_matrix(3, 4, x2) *
            k_matrix(2, 4, x1) * W;
    } else if (n == "211") {
        L = W * X(x1, x2 * xi({1}), (x1 * x2 + x3 * xi({2})) / xi({1}), x4 * xi({1, 2}),
                  (x2 * x3 * x4 + x1 * x4 * xi({2}) + x5 * xi({3, 4})) / xi({1}), 0);
        R = X(-x2 * x4 / xi({2}) - x3 * x5 * xi({4}) / xi({2, 3}),
              x3 * xi({1}) / (xi({2}) * sq(xi({3, 5}))) - x2 * x4 * x5 * xi({1}) / (xi({2, 3, 4}) * sq(xi({5}))),
              x5 * xi({1}) / (xi({3, 4}) * sq(xi({5}))), x2 / (xi({1}) * sq(xi({2, 4}))),
              x4 / (xi({1, 2}) * sq(xi({4}))),
              x1 / sq(xi({1})) + x2 * x3 / (xi({2}) * sq(xi({1}))) +
                  x4 * x5 * xi({3}) / (xi({2, 4}) * sq(xi({1})))) *
            y_matrix(xi({4, 5}) / xi({2, 3}), xi({1}) / (xi({3, 4}) * sq(xi({5}))),
                     xi({3, 5}) / (xi({2, 4}) * sq(xi({1}))), xi({1, 2, 4})) *
            k_matrix(2, 3, x5) * k_matrix(1, 3, x3) * k_matrix(2, 4, x4) * k_matrix(1, 4, x2) *
            k_matrix(3, 4, x1) * W;
    } else if (n == "1111") {
        L = W * X(x1, x2 * xi({1}), (x1 * x2 + x3 * xi({2})) / xi({1}), x4 * xi({1, 2}),
                  (x2 * x3 * x4 + x1 * x4 * xi({2}) + x5 * xi({3, 4})) / xi({1}),
                  (x2 * x4 * xi({3}) + x3 * x5 * xi({4}) + x6 * xi({4, 5})) / xi({2, 3}));
        R = X(x6 * xi({2, 3}) / (xi({4, 5}) * sq(xi({6}))), x5 * xi({1}) / (xi({3, 4}) * sq(xi({5}))),
              (x3 * xi({1, 5}) + x5 * x6 * xi({1})) / (xi({2, 5}) * sq(xi({3}))),
              x4 / (xi({1, 2}) * sq(xi({4}))),
              (x3 * x4 * x5 + x2 * xi({3, 4}) + x4 * x6 * xi({5})) / (xi({1, 3, 4}) * sq(xi({2}))),
              (x1 * xi({2, 4}) + x2 * x3 * xi({4}) + x4 * x5 * xi({3})) / (xi({2, 4}) * sq(xi({1})))) *
            y_matrix(xi({2, 3}) / (xi({4, 5}) * sq(xi({6}))), xi({1, 6}) / (xi({2, 5}) * sq(xi({3}))),
                     xi({3, 5}) / (xi({2, 4}) * sq(xi({1}))), xi({1, 2, 4})) *
            k_matrix(1, 2, x6) * k_matrix(1, 3, x5) * k_matrix(2, 3, x3) * k_matrix(1, 4, x4) *
            k_matrix(2, 4, x2) * k_matrix(3, 4, x1) * W;
    } else {
        used_coordinates(w);
    }
    return {L, R};
}

std::vector<double> bruhat_denominators(const WeylElement& w, const UnipotentCoords& x) {
    const auto [x1, x2, x3, x4, x5, x6] = x;
    const std::string n = w.name();
    if (n == "31") return {x1, x2, x4};
    if (n == "22") return {x2, x3 * x4 - x2 * x5, x5};
    if (n == "121") return {x4 - x1 * x5 - x2 * x6, x4 - x2 * x6, x4};
    if (n == "211") return {x2 - x1 * x3, x3 * x4 - x2 * x5, x4};
    if (n == "1111") return {x4 - x1 * x5 - x2 * x6 + x1 * x3 * x6, x3 * x4 - x2 * x5, x4};
    used_coordinates(w);
    return {};
}

namespace {

struct BruhatFactors {
    Matrix4d lhs, left, middle, right;
};

BruhatFactors bruhat_factors(const WeylElement& w, const UnipotentCoords& x) {
    const auto [x1, x2, x3, x4, x5, x6] = x;
    const double z1 = x3 * x4 - x2 * x5, z2 = x4 - x2 * x6, z3 = x4 - x1 * x5 - x2 * x6, z4 = x4 - x1 * x5,
                 z5 = x2 - x1 * x3, z6 = x4 - x1 * x5 - x2 * x6 + x1 * x3 * x6, z7 = x5 - x3 * x6;
    const Matrix4d W = w.matrix();
    const std::string n = w.name();
    BruhatFactors f;
    if (n == "31") {
        f = {W * X(x1, x2, 0, x4, 0, 0), X(-x2 / x1, 0, -x4 / x2, 0, 0, 1 / x4), a_matrix(-1, x1, -x2, x4),
             X(1 / x1, 1 / x2, x1 / x2, 1 / x4, x1 / x4, x2 / x4)};
    } else if (n == "22") {
        f = {W * X(0, x2, x3, x4, x5, 0), X(-x4 / x2, -x5 / z1, x3 / z1, 0, 1 / x5, x4 / x5),
             a_matrix(1, -x2, -z1, x5), X(-x3 / x2, -x5 / z1, x4 / z1, 0, 1 / x5, x3 / x5)};
    } else if (n == "121") {
        f = {W * X(x1, x2, 0, x4, x5, x6), X(-x1 / z3, -x2 / z2, -x2 * x5 / z2, 1 / x4, x5 / x4, x6 / x4),
             a_matrix(-1, z3, z2, x4), X(-x5 / z3, -x6 / z2, -x1 * x6 / z2, 1 / x4, x1 / x4, x2 / x4)};
    } else if (n == "211") {
        f = {W * X(x1, x2, x3, x4, x5, 0), X(-z4 / z5, x4 / z1, -x2 / z1, 0, 1 / x4, x5 / x4),
             a_matrix(-1, z5, z1, x4), X(-x3 / z5, -x5 / z1, z4 / z1, 1 / x4, x1 / x4, x2 / x4)};
    } else {
        f = {W * x_matrix(x), X(-z5 / z6, -x2 / z1, z2 / z1, 1 / x4, x6 / x4, x5 / x4), a_matrix(1, -z6, z1, x4),
             X(-z7 / z6, -x5 / z1, z4 / z1, 1 / x4, x1 / x4, x2 / x4)};
    }
    return f;
}

}  // namespace

std::pair<Matrix4d, Matrix4d> bruhat_sides(const WeylElement& w, const UnipotentCoords& x, double threshold) {
    used_coordinates(w);
    for (double d : bruhat_denominators(w, x))
        if (!(std::abs(d) >= threshold))
            throw SingularCell("w" + w.name() + " x is outside the big Bruhat cell (denominator " +
                               std::to_string(d) + ")");
    const auto f = bruhat_factors(w, x);
    return {f.lhs, f.left * f.middle * f.right.transpose()};
}

std::pair<double, double> bruhat_determinants(const WeylElement& w, const UnipotentCoords& x) {
    used_coordinates(w);
    const auto f = bruhat_factors(w, x);
    // triangular factors: determinant is the diagonal product
    const Matrix4d W = w.matrix();
    const double lhs = W.determinant() * (W.transpose() * f.lhs).diagonal().prod();
    return {lhs, f.left.diagonal().prod() * f.middle.diagonal().prod() * f.right.diagonal().prod()};
}

double iwasawa_deviation(const WeylElement& w, const UnipotentCoords& x) {
    const auto [L, R] = iwasawa_sides(w, x);
    return (L - R).cwiseAbs().maxCoeff();
}

double bruhat_deviation(const WeylElement& w, const UnipotentCoords& x, double threshold) {
    const auto [L, R] = bruhat_sides(w, x, threshold);
    return (L - R).cwiseAbs().maxCoeff();
}

DecompReport check_decompositions(const WeylElement& w, int samples, std::uint64_t seed, Exec exec) {
    const auto used = used_coordinates(w);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<UnipotentCoords> xs;
    while (static_cast<int>(xs.size()) < samples) {
        UnipotentCoords x{};
        for (int i : used) x[i] = u(rng);
        const auto den = bruhat_denominators(w, x);
        if (std::all_of(den.begin(), den.end(), [](double d) { return std::abs(d) >= 1e-3; })) xs.push_back(x);
    }
    std::vector<std::array<double, 3>> dev(xs.size());
    parallel_for(xs.size(), exec, [&](std::size_t k) {
        const auto [Li, Ri] = iwasawa_sides(w, xs[k]);
        const auto [Lb, Rb] = bruhat_sides(w, xs[k], 1e-6);
        const double si = std::max(Li.cwiseAbs().maxCoeff(), Ri.cwiseAbs().maxCoeff());
        const double sb = std::max(Lb.cwiseAbs().maxCoeff(), Rb.cwiseAbs().maxCoeff());
        const auto [dl, dr] = bruhat_determinants(w, xs[k]);
        dev[k] = {(Li - Ri).cwiseAbs().maxCoeff() / si, (Lb - Rb).cwiseAbs().maxCoeff() / sb,
                  std::abs(dl - dr) / std::max(std::abs(dl), std::abs(dr))};
    });
    DecompReport r;
    r.samples = samples;
    for (const auto& d : dev) {
        r.iwasawa = std::max(r.iwasawa, d[0]);
        r.bruhat = std::max(r.bruhat, d[1]);
        r.determinant = std::max(r.determinant, d[2]);
    }
    return r;
}

}  // namespace gl4
