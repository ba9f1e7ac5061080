#include <Eigen/LU>
#include <map>
#include <set>

#include "doctest.h"
#include "gl4bessel/errors.hpp"
#include "gl4bessel/power_weyl.hpp"
#include "test_util.hpp"

using namespace gl4;
using gl4::test::rel_err;

TEST_CASE("chi") {
    CHECK(rel_err(chi(2.0, 0, -3), 9.0) < 1e-14);
    CHECK(rel_err(chi(1.0, 1, -2), -2.0) < 1e-14);
    CHECK_THROWS_AS(chi(1.0, 0, 0.0), DomainError);
    test::Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const cplx s = rng.disk(0, 2), t = rng.disk(0, 2);
        const int l = rng.integer(-3, 3), m = rng.integer(-3, 3);
        const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
        CHECK(rel_err(chi(s, l, a) * chi(t, m, a), chi(s + t, l + m, a)) < 1e-13);
        CHECK(rel_err(chi(s, l, a) * chi(s, l, b), chi(s, l, a * b)) < 1e-13);
    }
}

TEST_CASE("power functions") {
    SpectralParams zero;
    const double a[] = {0.3, -1.7, 2.2, -0.4};
    CHECK(rel_err(power_I(zero, a, PowerVariant::standard),
                  std::pow(0.3, 1.5) * std::pow(1.7, 0.5) * std::pow(2.2, -0.5) *
                      std::pow(0.4, -1.5)) < 1e-14);
    SpectralParams rho;
    for (int i = 0; i < 4; ++i) rho.mu[i] = kRho[i];
    // I* = I_{mu - rho}: at mu = rho the exponents cancel
    CHECK(rel_err(power_I(rho, a, PowerVariant::unnormalized),
                  std::pow(0.3, 1.5) * std::pow(1.7, 0.5) * std::pow(2.2, -0.5) *
                      std::pow(0.4, -1.5)) < 1e-14);
    SpectralParams shifted = rho;
    for (int i = 0; i < 4; ++i) shifted.mu[i] = 0.0;
    const double ones[] = {2.0, -3.0, 0.5, 7.0};
    SpectralParams m0;
    for (int i = 0; i < 4; ++i) m0.mu[i] = -kRho[i];
    CHECK(rel_err(power_I(m0, ones, PowerVariant::standard), 1.0) < 1e-14);

    std::mt19937_64 rng(9);
    const auto p = sample_tempered(rng, 1);
    const double y[] = {0.4, 1.3, 0.7};
    // iota-dual of -mu has the exponents 3/2 - mu1 - mu2 - mu3, 2 - mu1 - mu2, 3/2 - mu1
    SpectralParams neg = p;
    for (auto& m : neg.mu) m = -m;
    const cplx expect = chi(1.5 - p.mu[0] - p.mu[1] - p.mu[2], p.delta[3], y[0]) *
                        chi(2.0 - p.mu[0] - p.mu[1], p.delta[2] + p.delta[3], y[1]) *
                        chi(1.5 - p.mu[0], p.delta[1] + p.delta[2] + p.delta[3], y[2]);
    CHECK(rel_err(power_I(neg, y, PowerVariant::iota_dual), expect) < 1e-13);
    // iota-dual is I_{mu,delta} at y^iota for positive y
    YPoint yp{{0.4, 1.3, 0.7}, 1};
    const auto d = yp.diagonal();
    const double yi[] = {1 / d[3], 1 / d[2], 1 / d[1], 1 / d[0]};
    const double scale = yi[3];
    const double yin[] = {yi[0] / scale, yi[1] / scale, yi[2] / scale, 1.0};
    CHECK(rel_err(power_I(p, y, PowerVariant::iota_dual),
                  power_I(SpectralParams{p.mu, {0, 0, 0, 0}}, yin, PowerVariant::standard)) <
          1e-12);
    const double t3[] = {0.5, -2.0, 1.5};
    CHECK(rel_err(power_I(p, t3, PowerVariant::tilde),
                  chi(-1.0 + p.mu[1] - p.mu[0], p.delta[0] + p.delta[1], 0.5) *
                      chi(-1.0 + p.mu[2] - p.mu[1], p.delta[1] + p.delta[2], -2.0) *
                      chi(-1.0 + p.mu[3] - p.mu[2], p.delta[2] + p.delta[3], 1.5)) < 1e-14);
    CHECK_THROWS_AS(power_I(p, t3, PowerVariant::standard), DomainError);
}

TEST_CASE("I_{0,0} is invariant under iota") {
    test::Rng rng(8);
    SpectralParams zero;
    for (int i = 0; i < 20; ++i) {
        YPoint y{{rng.uniform(0.1, 3), rng.uniform(0.1, 3), rng.uniform(0.1, 3)}, 1};
        const auto d = y.diagonal();
        const double yi[] = {1 / d[3], 1 / d[2], 1 / d[1], 1 / d[0]};
        CHECK(rel_err(power_I(zero, d, PowerVariant::standard),
                      power_I(zero, yi, PowerVariant::standard)) < 1e-13);
    }
}

TEST_CASE("Weyl elements") {
    const auto rel = relevant_weyl_list();
    std::set<std::string> names;
    for (const auto& w : rel) names.insert(w.name());
    CHECK(names == std::set<std::string>{"4", "13", "31", "22", "112", "121", "211", "1111"});
    CHECK(WeylElement::from_name("4").matrix() == Eigen::Matrix4d::Identity());
    Eigen::Matrix4d wl = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i) wl(i, 3 - i) = 1;
    CHECK(WeylElement::from_name("1111").matrix() == wl);
    Eigen::Matrix4d w31 = Eigen::Matrix4d::Zero();
    w31(0, 1) = w31(1, 2) = w31(2, 3) = w31(3, 0) = 1;
    CHECK(WeylElement::from_name("31").matrix() == w31);
    CHECK_THROWS_AS(WeylElement::from_name("5"), DomainError);
    CHECK_THROWS_AS(WeylElement::from_name("12"), DomainError);

    for (const auto& w : rel) {
        const Eigen::Matrix4d m = w.matrix();
        const Eigen::Matrix4d iota = wl * m.inverse().transpose() * wl;
        CHECK(iota_weyl(w).matrix() == iota);
    }
    CHECK(iota_weyl(WeylElement::from_name("1111")).name() == "1111");
    CHECK(iota_weyl(WeylElement::from_name("211")).name() == "112");
    CHECK(iota_weyl(WeylElement::from_name("22")).name() == "22");
    CHECK(iota_weyl(WeylElement::from_name("121")).name() == "121");
    // v w_l v w_l^{-1} for n = 4 has entries v_i v_{5-i} = -1
    CHECK(v_tilde(WeylElement::from_name("1111")) == std::array<int, 4>{-1, -1, -1, -1});
    CHECK(v_tilde(WeylElement::from_name("4")) == std::array<int, 4>{1, 1, 1, 1});
}

TEST_CASE("conjugation reverses blocks on Y_w") {
    test::Rng rng(12);
    for (const auto& w : relevant_weyl_list()) {
        for (int i = 0; i < 10; ++i) {
            YPoint y;
            for (int k : free_coordinates(w)) y.y[k] = rng.uniform(-3, 3);
            y.y4 = i % 2 ? -1 : 1;
            const auto d = y.diagonal();
            Eigen::Matrix4d Y = Eigen::Matrix4d::Zero();
            Eigen::Matrix4d Yi = Eigen::Matrix4d::Zero();
            for (int k = 0; k < 4; ++k) {
                Y(k, k) = d[k];
                Yi(k, k) = d[3 - k];  // (y^iota)^{-1} = w_l y w_l
            }
            const Eigen::Matrix4d m = w.matrix();
            CHECK((m.inverse() * Y * m - Yi).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("permutations and the Weyl action") {
    const Perm id = perm_identity();
    std::mt19937_64 rng(1);
    const auto p = sample_tempered(rng, 1);
    CHECK(weyl_action(p, id).mu == p.mu);
    const auto sw = weyl_action(p, perm_from_cycles("(1 2)"));
    CHECK(sw.mu[0] == p.mu[1]);
    CHECK(sw.mu[1] == p.mu[0]);
    CHECK(sw.mu[2] == p.mu[2]);
    std::vector<Perm> all;
    Perm q = id;
    do all.push_back(q);
    while (std::next_permutation(q.begin(), q.end()));
    for (const auto& a : all)
        for (const auto& b : all) {
            const auto lhs = weyl_action(weyl_action(p, a), b);
            const auto rhs = weyl_action(p, perm_compose(a, b));
            CHECK(lhs.mu == rhs.mu);
            CHECK(lhs.delta == rhs.delta);
        }
    const Perm c = perm_from_cycles("(1 4 2 3)");
    CHECK(c == Perm{3, 2, 0, 1});
    CHECK(perm_compose(c, perm_inverse(c)) == id);
}

TEST_CASE("coset representatives tile W") {
    const std::map<std::string, std::size_t> sizes = {
        {"31", 4}, {"22", 6}, {"121", 12}, {"211", 12}, {"1111", 24}};
    for (const auto& [name, n] : sizes) {
        const auto w = WeylElement::from_name(name);
        const auto reps = coset_reps(w);
        const auto sub = weyl_subgroup(w);
        CHECK(reps.size() == n);
        CHECK(reps.size() * sub.size() == 24);
        std::set<Perm> tiles;
        for (const auto& r : reps)
            for (const auto& h : sub) tiles.insert(perm_compose(r, h));
        CHECK(tiles.size() == 24);
    }
    const auto w31 = weyl_subgroup(WeylElement::from_name("31"));
    for (const auto& h : w31) CHECK(h[3] == 3);
    CHECK(weyl_subgroup(WeylElement::from_name("121")).size() == 2);
    CHECK(weyl_subgroup(WeylElement::from_name("211"))[1] == perm_from_cycles("(1 2)"));
}

TEST_CASE("S_w sets are the inversion pairs") {
    const std::map<std::string, std::size_t> sizes = {
        {"31", 3}, {"22", 4}, {"121", 5}, {"211", 5}, {"1111", 6}};
    for (const auto& [name, n] : sizes) {
        const auto w = WeylElement::from_name(name);
        auto s = s_set(w);
        std::sort(s.begin(), s.end());
        CHECK(s.size() == n);
        CHECK(s == inversion_pairs(w));
    }
}

TEST_CASE("Lambda_w and C_w") {
    Mu zero{};
    CHECK(lambda_w(zero, WeylElement::from_name("4")) == 1.0);
    CHECK(rel_err(lambda_w(zero, WeylElement::from_name("1111")), 1.0) < 1e-14);
    std::mt19937_64 rng(3);
    const auto p = sample_tempered(rng);
    cplx expect = 1;
    for (int j = 0; j < 3; ++j)
        expect *= std::pow(2 * kPi, p.mu[3] - p.mu[j]) * gamma_c(1.0 + p.mu[j] - p.mu[3]);
    CHECK(rel_err(lambda_w(p.mu, WeylElement::from_name("31")), expect) < 1e-13);

    cplx c31 = 1;
    for (int j = 0; j < 3; ++j) c31 *= kPi / std::cos(kPi * (1.0 + p.mu[j] - p.mu[3]) / 2.0);
    CHECK(rel_err(c_w(SpectralParams{p.mu, {0, 0, 0, 0}}, WeylElement::from_name("31")), c31) <
          1e-13);
    CHECK_THROWS_AS(c_w(SpectralParams{}, WeylElement::from_name("31")), PoleError);
}

TEST_CASE("Casimir eigenvalues") {
    const auto l0 = lambda_eigen(Mu{});
    CHECK(l0[1] == 2.5);
    CHECK(l0[2] == 0.0);
    CHECK(l0[3] == 41.0 / 16.0);
    const double t = 0.7, s = 1.3;
    const auto l = lambda_eigen(Mu{cplx(0, t), cplx(0, -t), cplx(0, s), cplx(0, -s)});
    CHECK(rel_err(l[1], 2.5 + t * t + s * s) < 1e-14);
    std::mt19937_64 rng(2);
    const auto p = sample_tempered(rng);
    const auto base = lambda_eigen(p.mu);
    for (const auto& w : relevant_weyl_list()) {
        const auto lw = lambda_eigen(weyl_action(p, w.perm).mu);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(lw[i] - base[i]) < 1e-12);
    }
}

TEST_CASE("tempered sampling and validation") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto p = sample_tempered(rng, 1);
        CHECK_NOTHROW(p.validate());
        CHECK(p.distinct(1e-3));
        for (auto m : p.mu) CHECK(m.real() == 0.0);
    }
    SpectralParams bad;
    bad.mu = {1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    YPoint y{{1.0, 1.0, 0.3}, 1};
    CHECK_NOTHROW(y.validate_for(WeylElement::from_name("31")));
    CHECK_THROWS_AS(y.validate_for(WeylElement::from_name("22")), DomainError);
}
