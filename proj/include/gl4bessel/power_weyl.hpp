#pragma once

#include <Eigen/Core>
#include <array>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gl4bessel/special.hpp"

namespace gl4 {

using Mu = std::array<cplx, 4>;
using Delta = std::array<int, 4>;
// 0-based permutation sigma with w e_i = e_{sigma(i)}.
using Perm = std::array<int, 4>;

inline constexpr std::array<double, 4> kRho = {1.5, 0.5, -0.5, -1.5};

struct SpectralParams {
    Mu mu{};
    Delta delta{};

    // Throws DomainError unless |sum mu| <= 1e-12.
    void validate() const;
    // mu_i - mu_j not within tol of an integer for i != j.
    bool distinct(double tol = 1e-9) const;
    int delta_sum() const { return delta[0] + delta[1] + delta[2] + delta[3]; }
};

struct WeylElement {
    std::vector<int> composition;
    Perm perm{};

    static WeylElement from_composition(std::vector<int> comp);
    // "4", "13", "31", "22", "112", "121", "211", "1111"
    static WeylElement from_name(const std::string& name);
    std::string name() const;
    Eigen::Matrix4d matrix() const;
    // number of free y coordinates
    int dimension() const { return static_cast<int>(composition.size()) - 1; }
    bool operator==(const WeylElement& o) const { return composition == o.composition; }
};

std::vector<WeylElement> relevant_weyl_list();

// diag(a) as y-coordinates with |y4| = 1: y = (y1, y2, y3) and the sign of y4.
struct YPoint {
    std::array<double, 3> y{1.0, 1.0, 1.0};
    int y4 = 1;

    // (y1 y2 y3 y4, y2 y3 y4, y3 y4, y4)
    std::array<double, 4> diagonal() const;
    // Throws DomainError unless the coordinates fixed by w equal 1 and the
    // free ones are nonzero.
    void validate_for(const WeylElement& w) const;
};

// Indices (0-based) of the free y coordinates of Y_w.
std::vector<int> free_coordinates(const WeylElement& w);

cplx chi(cplx s, int ell, double a);

enum class PowerVariant { standard, unnormalized, tilde, iota_dual };
cplx power_I(const SpectralParams& p, std::span<const double> a, PowerVariant variant);

Perm perm_identity();
Perm perm_compose(const Perm& a, const Perm& b);  // (a b)(i) = a(b(i))
Perm perm_inverse(const Perm& a);
// Cycle notation on 1..4, e.g. "(1 2)(3 4)" or "(1 4 2 3)".
Perm perm_from_cycles(const std::string& cycles);
Perm perm_from_matrix(const Eigen::Matrix4d& m);
Eigen::Matrix4d perm_matrix(const Perm& p);

SpectralParams weyl_action(const SpectralParams& p, const Perm& w);
template <class T>
std::array<T, 4> permute(const std::array<T, 4>& v, const Perm& w) {
    return {v[w[0]], v[w[1]], v[w[2]], v[w[3]]};
}

std::vector<Perm> weyl_subgroup(const WeylElement& w);
std::vector<Perm> coset_reps(const WeylElement& w);

// 1-based pairs (j, k), j < k.
using IndexPair = std::pair<int, int>;
std::vector<IndexPair> s_set(const WeylElement& w);
std::vector<IndexPair> inversion_pairs(const WeylElement& w);

cplx lambda_w(const Mu& mu, const WeylElement& w);
cplx c_w(const SpectralParams& p, const WeylElement& w);
std::array<cplx, 4> lambda_eigen(const Mu& mu);

struct IotaImage {
    YPoint y;
    SpectralParams params;
    WeylElement w;
};
IotaImage iota_transform(const YPoint& y, const SpectralParams& p, const WeylElement& w);
// w^iota = w_l w^{-T} w_l
WeylElement iota_weyl(const WeylElement& w);
// diagonal of v w v w^{-1}
std::array<int, 4> v_tilde(const WeylElement& w);

SpectralParams sample_tempered(std::mt19937_64& rng, int delta_max = 0);

}  // namespace gl4
