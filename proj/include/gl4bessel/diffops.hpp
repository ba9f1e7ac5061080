#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "gl4bessel/series.hpp"

namespace gl4 {

// Polynomial in (l2, l3, l4) with complex coefficients.
using LambdaPoly = std::map<std::array<int, 3>, cplx>;

struct EulerTerm {
    LambdaPoly coef;
    std::string coef_text;
    std::vector<int> power;       // y exponent per operator variable
    std::vector<int> derivative;  // derivative order per operator variable
    // net monomial shift power - derivative (never negative)
    std::vector<int> shift() const;
};

struct EulerOperator {
    std::string name;
    std::string weyl;       // composition, e.g. "211"
    std::vector<int> vars;  // 1-based y indices
    std::vector<EulerTerm> terms;

    // Back to y-derivative form, one "coef | monomial" line per term.
    std::string render() const;
};

std::vector<EulerOperator> parse_operators(const std::string& text);
const std::vector<EulerOperator>& builtin_operators();
std::vector<EulerOperator> operators_for(const WeylElement& w);

// Values bound to the table symbols l2, l3, l4 for parameters mu. The
// tables use l4 = -lambda_4; literal = true binds the printed lambda_4.
std::array<cplx, 3> operator_lambdas(const Mu& mu, bool literal = false);
cplx evaluate(const LambdaPoly& p, const std::array<cplx, 3>& l);

// c'_n = sum over terms of coef * prod falling(alpha_i + m_i, q_i) * c_m,
// m = n - shift, for n in [0, out_order]^d.
Lattice apply_operator(const EulerOperator& op, const Lattice& in, const std::vector<cplx>& alpha,
                       const std::array<cplx, 3>& l, int out_order);
// Same, returning max_n |c'_n| / sum of |contributions| at n.
double apply_residual(const EulerOperator& op, const Lattice& in, const std::vector<cplx>& alpha,
                      const std::array<cplx, 3>& l, int out_order);

// Value of the shift-free part of a one-variable operator at exponent alpha.
cplx indicial_value(const EulerOperator& op, cplx alpha, const std::array<cplx, 3>& l);
int theta_degree(const EulerOperator& op);

double annihilation_residual(const WeylElement& w, const Mu& mu, int order,
                             bool literal_lambda4 = false);

}  // namespace gl4
