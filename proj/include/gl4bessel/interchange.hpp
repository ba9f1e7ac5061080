#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gl4bessel/exec.hpp"

namespace gl4 {

// Form index per variable, 1..7:
// x/(1+x^2), 1/(1+x^2), sqrt(1+x^2), 1/sqrt(1+x^2), x/sqrt(1+x^2), x, 1 (absent).
using PhaseTerm = std::vector<int>;

struct Phase {
    int variables = 0;
    std::vector<PhaseTerm> terms;
    std::vector<std::vector<std::int64_t>> ystar;  // log-exponent vector per y* constraint
    std::vector<std::string> names;                // x_j labels, default x1..xn

    void validate() const;
};

enum class Op { le, lt, eq };  // c . L  op  0

struct Atom {
    std::vector<std::int64_t> c;
    Op op = Op::le;
    auto operator<=>(const Atom&) const = default;
};

// Normalized: gcd 1, equalities with a positive leading coefficient.
Atom make_atom(std::vector<std::int64_t> c, Op op);

using Conj = std::vector<Atom>;  // sorted, no duplicates
using Dnf = std::vector<Conj>;

struct Expr {
    enum class Kind { truth, falsity, atom, all, any } kind = Kind::truth;
    Atom atom;
    std::vector<Expr> children;

    static Expr of(Atom a);
    static Expr all_of(std::vector<Expr> c);
    static Expr any_of(std::vector<Expr> c);
    static Expr constant(bool v);
};

// Log potential size of a term after differentiating in `var` (0-based), or
// of the term itself when var is empty. Empty result: the derivative vanishes.
std::optional<std::vector<std::int64_t>> potential_size_log(const PhaseTerm& t, std::optional<int> var);
bool might_be_small(const PhaseTerm& t, const std::vector<int>& smalls, int var);

// Disjunction of the three BKY cases for the derivative in var, with the
// small log C_j set to 0.
Expr apply_bky(const Phase& phase, int var, const std::vector<int>& smalls);

bool feasible(const Conj& atoms, int n);
bool implies(const Conj& p, const Atom& a, int n);
// Every point of p lies in the union of qs.
bool covered(const Conj& p, const Dnf& qs, int n);
bool equivalent(const Dnf& a, const Dnf& b, int n);

// DNF with infeasible conjuncts removed; SizeBlowup past max_conjuncts.
Dnf to_dnf(const Expr& e, int n, std::size_t max_conjuncts = 1'000'000);
// Implicit equalities made explicit, implied atoms and subsumed conjuncts removed.
Conj canonical_conj(const Conj& p, int n);
Dnf canonical(const Dnf& d, int n);
Dnf reduce(const Expr& e, int n);

// Non-trivial cases for one set of small indices, unreduced.
Dnf cases_for(const Phase& phase, const std::vector<int>& smalls);

struct CaseReport {
    std::vector<int> smalls;
    Dnf cases;  // canonical
};

// One case up to equivalence, with every small set whose cases include it.
struct CaseFamily {
    Dnf expression;  // a single conjunct, with log C_s = 0 for the smalls
    std::vector<std::vector<int>> subsets;
};

struct InterchangeReport {
    std::vector<CaseReport> cases;  // non-false subsets in subset order
    std::vector<CaseFamily> families;
};

// All proper subsets as smalls, in order of size then lexicographic.
InterchangeReport enumerate_cases(const Phase& phase, Exec exec = Exec::parallel);

// Built-in phases: "22", "121", "211", "1111" and "41".
Phase builtin_phase(const std::string& weyl);
std::vector<std::string> builtin_phase_names();
// Reference case families for the built-in phases, one DNF each.
std::vector<Dnf> expected_families(const std::string& weyl);

Phase phase_from_json(const std::string& text);
std::string phase_to_json(const Phase& p);

std::string format_atom(const Atom& a, const std::vector<std::string>& names);
std::string format_conj(const Conj& c, const std::vector<std::string>& names);
std::string format_report(const InterchangeReport& r, const Phase& phase);

}  // namespace gl4
