#pragma once

#include <string>
#include <vector>

#include "gl4bessel/special.hpp"

namespace gl4 {

enum class HypMode { plain, star, dagger };

struct HypSpec {
    std::vector<cplx> numerator;
    std::vector<cplx> denominator;
    cplx argument = 1.0;
    HypMode mode = HypMode::plain;

    bool terminating() const;
    bool saalschutzian() const;
};

struct HypResult {
    cplx value;
    double error;  // estimated absolute error
    int terms;
};

HypResult pfq_eval(const HypSpec& spec);
inline cplx pfq(const HypSpec& spec) { return pfq_eval(spec).value; }

// Convenience for the terminating/absolutely convergent series used by
// coefficient formulas.
cplx hyp(std::vector<cplx> a, std::vector<cplx> b, cplx z = 1.0,
         HypMode mode = HypMode::plain);

enum class Relation {
    gauss_2f1,
    first_zero,
    denom1,
    denom2,
    recur1_3f2,
    recur2_3f2,
    genrel_4f3,
    wl_recur2,
    wl_recur3,
    wl_recur3_printed,
    normalized_genrel,
};

Relation relation_from_name(const std::string& name);
std::string relation_name(Relation r);

// Parameter slots shared by all relations; each relation reads the
// slots it needs (see the table in the source).
struct RelationParams {
    cplx a1 = 0, a2 = 0, a3 = 0, a4 = 0;
    cplx b1 = 1, b2 = 1, b3 = 1;
    cplx e = 1, f = 1;  // extra denominators for the denominator identities
    cplx z = 1.0;
    int m = 0, n = 0;
};

// |LHS - RHS| divided by the largest term magnitude.
double verify_contiguous(Relation id, const RelationParams& p);

}  // namespace gl4
