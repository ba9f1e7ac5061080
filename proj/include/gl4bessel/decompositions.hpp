#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "gl4bessel/exec.hpp"
#include "gl4bessel/power_weyl.hpp"

namespace gl4 {

// x = (x1, ..., x6) laid out as the upper triangle
// [[1, x1, x2, x4], [0, 1, x3, x5], [0, 0, 1, x6], [0, 0, 0, 1]].
using UnipotentCoords = std::array<double, 6>;

Eigen::Matrix4d x_matrix(const UnipotentCoords& x);
// diag(y1 y2 y3 y4, y2 y3 y4, y3 y4, y4)
Eigen::Matrix4d y_matrix(double y1, double y2, double y3, double y4);
// diag(a1/a2, a2/a3, a3/a4, a4)
Eigen::Matrix4d a_matrix(double a1, double a2, double a3, double a4);
// Rotation by arctan(x) in the (i, j) plane, 1-based.
Eigen::Matrix4d k_matrix(int i, int j, double x);

// 0-based coordinates that Ubar_w uses.
std::vector<int> used_coordinates(const WeylElement& w);

// Left and right sides of the explicit decompositions of w x.
std::pair<Eigen::Matrix4d, Eigen::Matrix4d> iwasawa_sides(const WeylElement& w, const UnipotentCoords& x);
std::pair<Eigen::Matrix4d, Eigen::Matrix4d> bruhat_sides(const WeylElement& w, const UnipotentCoords& x,
                                                         double threshold = 1e-6);

// Max absolute entrywise difference between the two sides.
double iwasawa_deviation(const WeylElement& w, const UnipotentCoords& x);
// Throws SingularCell if a denominator of the display is below threshold.
double bruhat_deviation(const WeylElement& w, const UnipotentCoords& x, double threshold = 1e-6);
// (det w x, det of the Bruhat product) from the factors, without the
// denominator threshold.
std::pair<double, double> bruhat_determinants(const WeylElement& w, const UnipotentCoords& x);
// Denominators of the Bruhat display (the relevant x_i and zeta_j).
std::vector<double> bruhat_denominators(const WeylElement& w, const UnipotentCoords& x);

struct DecompReport {
    int samples = 0;
    double iwasawa = 0;  // max deviation relative to the largest entry
    double bruhat = 0;
    double determinant = 0;  // max relative |det L - det R| for Bruhat
};

// Samples x uniformly in [-2, 2] on the used coordinates, rejecting
// Bruhat denominators below 1e-3.
DecompReport check_decompositions(const WeylElement& w, int samples, std::uint64_t seed,
                                  Exec exec = Exec::parallel);

}  // namespace gl4
