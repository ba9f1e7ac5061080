#include <sstream>

#include "doctest.h"
#include "gl4bessel/errors.hpp"
#include "gl4bessel/mellin_barnes.hpp"
#include "test_util.hpp"

using namespace gl4;
using gl4::test::rel_err;

namespace {

YPoint point_for(const WeylElement& w, double v) {
    YPoint y;
    for (int i : free_coordinates(w)) y.y[i] = v;
    return y;
}

}  // namespace

TEST_CASE("contour nodes reproduce the Cahen-Mellin integral") {
    ContourConfig cfg = ContourConfig::defaults(WeylElement::from_name("31"));
    for (bool bent : {false, true}) {
        const auto n = contour_nodes(0.2, bent, 10.0, cfg);
        cplx sum = 0;
        for (std::size_t i = 0; i < n.s.size(); ++i) sum += n.weight[i] * gamma_c(n.s[i]) * std::pow(0.5, -n.s[i]);
        CHECK(rel_err(sum, std::exp(-0.5)) < 1e-12);
    }
}

TEST_CASE("Mellin-Barnes matches the series for w31 and w22") {
    std::mt19937_64 rng(2024);
    const double ys[] = {0.05, -0.05, 0.02, -0.02};
    for (const char* name : {"31", "22"}) {
        const auto w = WeylElement::from_name(name);
        for (int k = 0; k < 10; ++k) {
            const auto p = sample_tempered(rng, 1);
            const YPoint y = point_for(w, ys[k % 4]);
            const auto mb = mb_eval(w, y, p, ContourConfig::defaults(w));
            const auto ser = kernel_K(w, y, p, 12);
            CAPTURE(name);
            CAPTURE(k);
            CHECK(rel_err(mb.value, ser.value) < 1e-6);
            CHECK(mb.error < 1e-6 * std::abs(mb.value));
        }
    }
}

TEST_CASE("Mellin-Barnes matches the series for w121") {
    std::mt19937_64 rng(77);
    const auto w = WeylElement::from_name("121");
    const auto p = sample_tempered(rng, 1);
    YPoint y;
    y.y = {-0.04, 1.0, 0.05};
    const auto mb = mb_eval(w, y, p, ContourConfig::defaults(w));
    CHECK(rel_err(mb.value, kernel_K(w, y, p, 12).value) < 1e-3);
}

TEST_CASE("printed one-variable prefactor is off by two") {
    std::mt19937_64 rng(9);
    for (const char* name : {"31", "22"}) {
        const auto w = WeylElement::from_name(name);
        const auto p = sample_tempered(rng, 1);
        const YPoint y = point_for(w, -0.05);
        ContourConfig cfg = ContourConfig::defaults(w);
        cfg.literal_prefactor = true;
        const cplx ratio = kernel_K(w, y, p, 12).value / mb_eval(w, y, p, cfg).value;
        CHECK(std::abs(ratio - 2.0) < 1e-6);
    }
}

TEST_CASE("contour independence") {
    std::mt19937_64 rng(31);
    for (const char* name : {"31", "22"}) {
        const auto w = WeylElement::from_name(name);
        const auto p = sample_tempered(rng, 1);
        const YPoint y = point_for(w, 0.05);
        ContourConfig a = ContourConfig::defaults(w), b = a;
        b.t0 = resolved_t0(w, p.mu, a) + 5;
        b.tail_abscissa = -0.6;
        b.abscissae[0] = 0.15;
        const auto ra = mb_eval(w, y, p, a), rb = mb_eval(w, y, p, b);
        CHECK(std::abs(ra.value - rb.value) <= ra.error + rb.error + 1e-13 * std::abs(ra.value));
    }
}

TEST_CASE("w31 kernel is real for conjugation-closed parameters") {
    gl4::test::Rng rng(4);
    const auto w = WeylElement::from_name("31");
    for (int k = 0; k < 3; ++k) {
        SpectralParams p;
        const double a = rng.uniform(0.1, 2), b = rng.uniform(0.1, 2);
        p.mu = {cplx(0, a), cplx(0, -a), cplx(0, b), cplx(0, -b)};
        const auto r = mb_eval(w, point_for(w, k ? 0.05 : -0.05), p, ContourConfig::defaults(w));
        CHECK(std::abs(r.value.imag()) <= 1e-8 * std::abs(r.value.real()));
    }
    SpectralParams generic;
    generic.mu = {cplx(0, 0.3), cplx(0, 0.7), cplx(0, -0.2), cplx(0, -0.8)};
    const auto r = mb_eval(w, point_for(w, 0.05), generic, ContourConfig::defaults(w));
    const SpectralParams conj_p{{std::conj(generic.mu[0]), std::conj(generic.mu[1]), std::conj(generic.mu[2]),
                                 std::conj(generic.mu[3])}, {}};
    const auto rc = mb_eval(w, point_for(w, 0.05), conj_p, ContourConfig::defaults(w));
    CHECK(rel_err(r.value, std::conj(rc.value)) < 1e-8);
}

TEST_CASE("sign of y4") {
    std::mt19937_64 rng(12);
    const auto w = WeylElement::from_name("31");
    auto p = sample_tempered(rng);
    p.delta = {1, 0, 0, 0};
    YPoint y = point_for(w, 0.05);
    y.y4 = -1;
    const auto mb = mb_eval(w, y, p, ContourConfig::defaults(w));
    CHECK(rel_err(mb.value, kernel_K(w, y, p, 12).value) < 1e-6);
    y.y4 = 1;
    CHECK(rel_err(mb.value, -kernel_K(w, y, p, 12).value) < 1e-6);
}

TEST_CASE("iota self-duality of the series kernels") {
    std::mt19937_64 rng(8);
    const std::array<double, 3> ys[] = {{1.0, 0.05, 1.0}, {0.04, 1.0, -0.05}, {0.03, -0.04, 0.05}};
    int k = 0;
    for (const char* name : {"22", "121", "1111"}) {
        const auto w = WeylElement::from_name(name);
        const auto p = sample_tempered(rng, 1);
        YPoint y;
        y.y = ys[k++];
        const auto im = iota_transform(y, p, w);
        CHECK(im.w == w);
        CAPTURE(name);
        CHECK(rel_err(kernel_K(w, y, p, 10).value, kernel_K(im.w, im.y, im.params, 10).value) < 1e-8);
    }
}

TEST_CASE("w13 and w112 go through the dual element") {
    std::mt19937_64 rng(18);
    const auto p = sample_tempered(rng);
    YPoint y;
    y.y = {0.05, 1.0, 1.0};
    const auto w13 = WeylElement::from_name("13");
    const auto im = iota_transform(y, p, w13);
    CHECK(im.w.name() == "31");
    const auto mb = mb_eval(w13, y, p, ContourConfig::defaults(w13));
    CHECK(rel_err(mb.value, kernel_K(w13, y, p, 12).value) < 1e-6);
    CHECK(kernel_K(WeylElement::from_name("4"), YPoint{}, p, 12).value == 1.0);
}

TEST_CASE("contour errors") {
    const Mu mu = {cplx(0, 1), cplx(0, 0.5), cplx(0, -0.25), cplx(0, -1.25)};
    const auto w211 = WeylElement::from_name("211");
    ContourConfig c = ContourConfig::defaults(w211);
    c.abscissae = {1.0 / 7, 1.0 / 7, 1.0 / 7};
    CHECK_THROWS_AS(validate_contour(w211, mu, c), ContourError);
    const auto w31 = WeylElement::from_name("31");
    c = ContourConfig::defaults(w31);
    c.t0 = 1.5;
    CHECK_THROWS_AS(validate_contour(w31, mu, c), ContourError);
    c = ContourConfig::defaults(w31);
    c.abscissae = {-0.1};
    CHECK_THROWS_AS(validate_contour(w31, mu, c), ContourError);
    c = ContourConfig::defaults(w31);
    c.abscissae = {0.2, 0.2};
    CHECK_THROWS_AS(validate_contour(w31, mu, c), ContourError);
    const auto w1111 = WeylElement::from_name("1111");
    c = ContourConfig::defaults(w1111);
    c.tail_abscissa = -0.9;
    CHECK_THROWS_AS(validate_contour(w1111, mu, c), ContourError);
    c = ContourConfig::defaults(WeylElement::from_name("22"));
    c.abscissae = {0.6};
    CHECK_THROWS_AS(validate_contour(WeylElement::from_name("22"), mu, c), ContourError);
    CHECK_NOTHROW(validate_contour(w1111, mu, ContourConfig::defaults(w1111)));
}

TEST_CASE("budget") {
    std::mt19937_64 rng(3);
    const auto p = sample_tempered(rng);
    const auto w = WeylElement::from_name("121");
    ContourConfig c = ContourConfig::defaults(w);
    c.budget = 1000;
    YPoint y;
    y.y = {0.05, 1.0, 0.05};
    try {
        mb_eval(w, y, p, c);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(std::isfinite(e.partial_re));
        CHECK(std::isfinite(e.partial_im));
    }
}

TEST_CASE("w211 evaluates within its panel budget") {
    std::mt19937_64 rng(6);
    const auto p = sample_tempered(rng);
    const auto w = WeylElement::from_name("211");
    const auto r = mb_eval(w, point_for(w, 0.05), p, ContourConfig::defaults(w));
    CHECK(r.evaluations <= ContourConfig::defaults(w).budget);
    CHECK(std::isfinite(std::abs(r.value)));
}

TEST_CASE("serial and parallel quadrature agree exactly") {
    std::mt19937_64 rng(10);
    const auto p = sample_tempered(rng, 1);
    const auto w = WeylElement::from_name("22");
    const YPoint y = point_for(w, 0.02);
    const auto a = mb_eval(w, y, p, ContourConfig::defaults(w), Exec::serial);
    const auto b = mb_eval(w, y, p, ContourConfig::defaults(w), Exec::parallel);
    CHECK(a.value == b.value);
}

TEST_CASE("contour JSON and traces") {
    const auto w = WeylElement::from_name("31");
    const auto c = contour_from_json(R"({"t0": 14, "tail_abscissa": -0.8, "gauss_points": 16})", w);
    CHECK(c.t0 == 14);
    CHECK(c.gauss_points == 16);
    CHECK(c.abscissae == std::vector<double>{0.2});
    const auto again = contour_from_json(contour_to_json(c), w);
    CHECK(again.tail_abscissa == -0.8);
    CHECK_THROWS_AS(contour_from_json("[1,2]", w), DomainError);
    CHECK_THROWS_AS(contour_from_json(R"({"t0": "x"})", w), DomainError);
    std::mt19937_64 rng(1);
    const auto r = mb_eval(w, point_for(w, 0.05), sample_tempered(rng), c);
    std::ostringstream out;
    dump_trace_csv(out, r);
    CHECK(out.str().rfind("panel,evaluations,re,im,err\n", 0) == 0);
    CHECK(r.trace.size() >= 2);
}
