#include "doctest.h"
#include "gl4bessel/errors.hpp"
#include "gl4bessel/hypergeometric.hpp"
#include "test_util.hpp"

using namespace gl4;
using gl4::test::rel_err;

TEST_CASE("pfq examples") {
    const cplx b(0.3, 0.2), c = 1.1;
    CHECK(rel_err(hyp({-1.0, b}, {c}), 1.0 - b / c) < 1e-14);
    CHECK(rel_err(hyp({0.0, cplx(0.4, 1), 2.0}, {cplx(1.2, 0.3), 3.0}, 0.7), 1.0) < 1e-15);
    const cplx a1 = 0.2, a2(0, 0.3), b1 = 2.0;
    const auto r = pfq_eval({{a1, a2}, {b1}, 1.0, HypMode::star});
    CHECK(rel_err(r.value, gamma_c(b1 - a1 - a2) * rgamma_c(b1 - a1) * rgamma_c(b1 - a2)) < 1e-10);
    CHECK(r.error < 1e-9);
}

TEST_CASE("HypSpec flags") {
    HypSpec s{{-2.0, 0.5, 0.5}, {1.0, 1.0}, 1.0, HypMode::plain};
    CHECK(s.terminating());
    CHECK(s.saalschutzian() == false);
    HypSpec w{{-2.0, 0.5, 1.5}, {0.4, 0.6}, 1.0, HypMode::plain};
    CHECK(w.saalschutzian());
}

TEST_CASE("pfq errors") {
    CHECK_THROWS_AS(hyp({0.5, 0.5}, {0.5}, 1.0), DivergenceError);
    CHECK_THROWS_AS(hyp({0.5}, {}, 1.5), DivergenceError);
    CHECK_THROWS_AS(hyp({-3.0, 0.5}, {-1.0}), PoleError);
    // the classical convention: denominator -M with M >= termination index is fine
    CHECK_NOTHROW(hyp({-2.0, 0.5}, {-4.0}));
    CHECK_THROWS_AS(hyp({0.5, 0.5}, {-1.0}, 0.5), PoleError);
}

TEST_CASE("star mode is pole-free") {
    const std::vector<cplx> a = {cplx(0.3, 0.1), cplx(-0.2, 0.4), 0.7, cplx(0.1, -0.3)};
    const auto at = [&](cplx b1) {
        return hyp(a, {b1, cplx(3.1, 0.2), cplx(2.7, -0.5)}, 1.0, HypMode::star);
    };
    const cplx v = at(-1.0);
    CHECK(std::isfinite(v.real()));
    const cplx near = 0.5 * (at(-1.0 + 1e-7) + at(-1.0 - 1e-7));
    CHECK(rel_err(v, near) < 1e-6);
}

TEST_CASE("dagger mode") {
    const cplx a(0.3, 0.2), b(-0.4, 0.1), c(1.5, 0), d(2.5, 0.3);
    const cplx star = hyp({a, b}, {c}, 0.5, HypMode::star);
    CHECK(rel_err(hyp({a, b}, {c}, 0.5, HypMode::dagger), gamma_c(a) * gamma_c(b) * star) < 1e-13);
    // a numerator in -N0 contributes no Gamma factor
    const cplx term = hyp({-2.0, b}, {d}, 0.5, HypMode::dagger);
    CHECK(rel_err(term, gamma_c(b) * hyp({-2.0, b}, {d}, 0.5, HypMode::star)) < 1e-14);
}

namespace {

RelationParams random_params(test::Rng& rng) {
    RelationParams p;
    p.a1 = rng.disk(0.3, 2);
    p.a2 = rng.disk(-0.2, 2);
    p.a3 = rng.disk(0.4, 2);
    p.a4 = rng.disk(0.1, 2);
    p.b1 = rng.disk(3.3, 2);
    p.b2 = rng.disk(3.6, 2);
    p.b3 = rng.disk(4.1, 2);
    return p;
}

void check_relation(Relation id, auto adjust, double tol = 1e-9, int draws = 100) {
    test::Rng rng(1000 + static_cast<int>(id));
    double worst = 0;
    for (int i = 0; i < draws; ++i) {
        RelationParams p = random_params(rng);
        adjust(p, rng);
        worst = std::max(worst, verify_contiguous(id, p));
    }
    INFO(relation_name(id), " worst residual ", worst);
    CHECK(worst < tol);
}

}  // namespace

TEST_CASE("contiguous relations over random draws") {
    check_relation(Relation::recur1_3f2, [](RelationParams& p, test::Rng& r) {
        p.a1 = -double(r.integer(0, 8));
    });
    check_relation(Relation::recur2_3f2, [](RelationParams& p, test::Rng& r) {
        p.a1 = -double(r.integer(0, 8));
    });
    check_relation(Relation::genrel_4f3, [](RelationParams& p, test::Rng&) { p.z = 0.6; });
    check_relation(Relation::genrel_4f3, [](RelationParams& p, test::Rng& r) {
        p.a3 = -double(r.integer(0, 8));
    });
    check_relation(Relation::wl_recur2, [](RelationParams& p, test::Rng& r) {
        p.a1 = -double(r.integer(0, 8));
    });
    check_relation(Relation::wl_recur2, [](RelationParams& p, test::Rng& r) {
        p.a4 = -double(r.integer(0, 8));
    });
    check_relation(Relation::wl_recur3, [](RelationParams& p, test::Rng& r) {
        p.a1 = -double(r.integer(0, 8));
    });
    check_relation(Relation::wl_recur3, [](RelationParams& p, test::Rng& r) {
        p.a4 = -double(r.integer(0, 8));
    });
    check_relation(Relation::normalized_genrel, [](RelationParams& p, test::Rng&) { p.z = 0.6; });
    check_relation(Relation::first_zero, [](RelationParams& p, test::Rng& r) {
        p.z = r.uniform(-0.9, 0.9);
    });
    check_relation(Relation::gauss_2f1, [](RelationParams& p, test::Rng& r) {
        p.a1 = r.disk(0.2, 0.5);
        p.a2 = r.disk(0.1, 0.5);
        p.b1 = r.disk(2.5, 0.5);
    });
}

TEST_CASE("denominator identities") {
    test::Rng rng(77);
    for (int n = -1; n <= 2; ++n) {
        for (int i = 0; i < 10; ++i) {
            RelationParams p;
            p.a1 = rng.disk(0.3, 0.4);
            p.a2 = rng.disk(-0.2, 0.4);
            p.a3 = rng.disk(0.4, 0.4);
            p.a4 = rng.disk(0.1, 0.4);
            p.e = rng.disk(3.5, 0.5);
            p.f = rng.disk(3.8, 0.5);
            p.n = n;
            INFO("n = ", n);
            CHECK(verify_contiguous(Relation::denom1, p) < 1e-9);
        }
    }
    RelationParams p;
    p.m = 2;
    p.n = 1;
    p.a1 = cplx(0.3, 0.7);
    p.a2 = cplx(-1.2, 0.4);
    p.a3 = cplx(0.8, -0.1);
    p.b1 = cplx(1.4, 0.9);
    p.b2 = cplx(-0.6, 0.2);
    CHECK(verify_contiguous(Relation::denom2, p) <= 1e-12);
}

TEST_CASE("printed form of the three-term Saalschutzian relation fails") {
    test::Rng rng(21);
    RelationParams p = random_params(rng);
    p.a4 = -2.0;
    CHECK(verify_contiguous(Relation::wl_recur3, p) < 1e-9);
    CHECK(verify_contiguous(Relation::wl_recur3_printed, p) > 1e-3);
}
