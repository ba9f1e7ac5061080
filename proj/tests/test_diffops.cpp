#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gl4bessel/diffops.hpp"
#include "gl4bessel/errors.hpp"
#include "test_util.hpp"

using namespace gl4;

namespace {

Mu tempered(unsigned seed) {
    std::mt19937_64 rng(seed);
    return sample_tempered(rng).mu;
}

std::string squash(const std::string& s) {
    std::istringstream in(s);
    std::string tok, out;
    while (in >> tok) out += tok + " ";
    return out;
}

}  // namespace

TEST_CASE("operator table parses") {
    const auto& ops = builtin_operators();
    REQUIRE(ops.size() == 9);
    CHECK(ops.front().name == "w31DE");
    CHECK(operators_for(WeylElement::from_name("1111")).size() == 3);
    CHECK(operators_for(WeylElement::from_name("211")).size() == 2);
    CHECK(theta_degree(ops.front()) == 4);
    CHECK(theta_degree(operators_for(WeylElement::from_name("22")).front()) == 6);
}

TEST_CASE("rendered operators reproduce the term lines") {
    std::ifstream in(GL4_SOURCE_DIR "/data/operators.txt");
    REQUIRE(in);
    std::vector<std::string> blocks;
    std::string line, cur;
    bool inside = false;
    while (std::getline(in, line)) {
        if (line.rfind("operator", 0) == 0) {
            inside = true;
            cur.clear();
        } else if (line == "end") {
            blocks.push_back(cur);
            inside = false;
        } else if (inside) {
            cur += line + "\n";
        }
    }
    const auto& ops = builtin_operators();
    REQUIRE(blocks.size() == ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        CAPTURE(ops[i].name);
        CHECK(squash(ops[i].render()) == squash(blocks[i]));
        const auto again = parse_operators("operator X w" + ops[i].weyl + " " +
                                           [&] {
                                               std::string v;
                                               for (int x : ops[i].vars) v += std::to_string(x) + " ";
                                               return v;
                                           }() + "\n" + ops[i].render() + "end\n");
        CHECK(squash(again.at(0).render()) == squash(ops[i].render()));
    }
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_operators("operator A w31 3\n 1 | d3\nend\n"), DomainError);
    CHECK_THROWS_AS(parse_operators("operator A w31 3\n q | y3\nend\n"), DomainError);
    CHECK_THROWS_AS(parse_operators("operator A w31 3\n 1 | y2\nend\n"), DomainError);
    CHECK_THROWS_AS(parse_operators("operator A w31 3\n 1 | y3\n"), DomainError);
    CHECK_THROWS_AS(parse_operators(" 1 | y3\n"), DomainError);
}

TEST_CASE("coefficient polynomial evaluation") {
    const auto ops = parse_operators("operator A w31 3\n 3/4*pi^2*l2^2 - I*l3 + 2*l4 | 1\nend\n");
    const std::array<cplx, 3> l = {cplx(2, 0), cplx(0, 1), cplx(5, 0)};
    const cplx expect = 0.75 * kPi * kPi * 4.0 - cplx(0, 1) * cplx(0, 1) + 10.0;
    CHECK(std::abs(evaluate(ops[0].terms[0].coef, l) - expect) < 1e-12);
}

TEST_CASE("series are annihilated") {
    for (const char* name : {"31", "22", "121", "211", "1111"}) {
        const auto w = WeylElement::from_name(name);
        const int order = w.name() == "1111" ? 4 : 6;
        for (unsigned seed = 1; seed <= 4; ++seed) {
            CAPTURE(name);
            CAPTURE(seed);
            CHECK(annihilation_residual(w, tempered(seed), order) < 1e-9);
        }
    }
}

TEST_CASE("literal lambda_4 binding is not annihilating") {
    const Mu mu = tempered(7);
    for (const char* name : {"31", "22", "121", "211", "1111"}) {
        CAPTURE(name);
        const auto w = WeylElement::from_name(name);
        CHECK(annihilation_residual(w, mu, w.name() == "1111" ? 3 : 5, true) > 1e-5);
    }
}

TEST_CASE("perturbed coefficients are detected") {
    const Mu mu = tempered(11);
    Mu off = mu;
    off[0] += 1e-3;
    for (const char* name : {"31", "22", "121", "211", "1111"}) {
        CAPTURE(name);
        const auto w = WeylElement::from_name(name);
        const int order = w.name() == "1111" ? 4 : 6;
        const Lattice c = coefficient_lattice(w, off, order);
        const auto alpha = leading_exponents(w, mu);
        const auto l = operator_lambdas(mu);
        double worst = 0;
        for (const auto& op : operators_for(w)) worst = std::max(worst, apply_residual(op, c, alpha, l, order));
        CHECK(worst >= 1e-5);
    }
}

TEST_CASE("order check") {
    const auto w = WeylElement::from_name("211");
    const Mu mu = tempered(3);
    const Lattice c = coefficient_lattice(w, mu, 3);
    const auto op = operators_for(w).front();
    CHECK_THROWS_AS(apply_operator(op, c, leading_exponents(w, mu), operator_lambdas(mu), 4), OrderError);
    const Lattice out = apply_operator(op, c, leading_exponents(w, mu), operator_lambdas(mu), 3);
    CHECK(out.order() == 3);
    CHECK(apply_residual(op, c, leading_exponents(w, mu), operator_lambdas(mu), 3) < 1e-9);
}

TEST_CASE("w31 indicial roots") {
    const Mu mu = tempered(5);
    const auto op = builtin_operators().front();
    const auto l = operator_lambdas(mu);
    cplx scale = 0;
    for (const auto& t : op.terms) scale += std::abs(evaluate(t.coef, l));
    for (int j = 0; j < 4; ++j) CHECK(std::abs(indicial_value(op, 1.5 - mu[j], l)) < 1e-10 * std::abs(scale));
    CHECK(std::abs(indicial_value(op, 0.3, l)) > 1e-3);
}
