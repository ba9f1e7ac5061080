#include "gl4bessel/interchange.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gl4bessel/errors.hpp"
#include "json.hpp"

namespace gl4 {

namespace {

using Vec = std::vector<std::int64_t>;

constexpr std::int64_t kLog[7] = {-1, -2, 1, -1, 0, 1, 0};
constexpr std::int64_t kDervLog[7] = {-1, -2, 1, -1, -2, 1, 1};

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw SizeBlowup("interchange: coefficient overflow");
    return r;
}
std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw SizeBlowup("interchange: coefficient overflow");
    return r;
}
std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw SizeBlowup("interchange: coefficient overflow");
    return r;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

Vec negated(Vec v) {
    for (auto& x : v) x = -x;
    return v;
}

// Constant atoms: nullopt unless the vector is zero.
std::optional<bool> constant_value(const Atom& a) {
    if (!is_zero(a.c)) return std::nullopt;
    return a.op != Op::lt;
}

Conj sorted_unique(Conj c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

Conj joined(const Conj& a, const Conj& b) {
    Conj r = a;
    r.insert(r.end(), b.begin(), b.end());
    return sorted_unique(std::move(r));
}

Conj with(const Conj& a, const Atom& x) { return joined(a, Conj{x}); }

// Branches of the negation of an atom.
std::vector<Atom> negation(const Atom& a) {
    switch (a.op) {
        case Op::le: return {make_atom(negated(a.c), Op::lt)};
        case Op::lt: return {make_atom(negated(a.c), Op::le)};
        case Op::eq: return {make_atom(a.c, Op::lt), make_atom(negated(a.c), Op::lt)};
    }
    return {};
}

Vec unit(int n, int j, std::int64_t v) {
    Vec c(n, 0);
    c[j] = v;
    return c;
}

}  // namespace

Atom make_atom(Vec c, Op op) {
    std::int64_t g = 0;
    for (auto x : c) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
        for (auto& x : c) x /= g;
    if (op == Op::eq) {
        for (auto x : c)
            if (x != 0) {
                if (x < 0) c = negated(c);
                break;
            }
    }
    return {std::move(c), op};
}

Expr Expr::of(Atom a) {
    if (auto k = constant_value(a)) return constant(*k);
    Expr e;
    e.kind = Kind::atom;
    e.atom = std::move(a);
    return e;
}
Expr Expr::all_of(std::vector<Expr> c) {
    Expr e;
    e.kind = Kind::all;
    e.children = std::move(c);
    return e;
}
Expr Expr::any_of(std::vector<Expr> c) {
    Expr e;
    e.kind = Kind::any;
    e.children = std::move(c);
    return e;
}
Expr Expr::constant(bool v) {
    Expr e;
    e.kind = v ? Kind::truth : Kind::falsity;
    return e;
}

void Phase::validate() const {
    if (variables < 1 || variables > 12) throw DomainError("phase: variable count must be 1..12");
    for (const auto& t : terms) {
        if (static_cast<int>(t.size()) != variables) throw DomainError("phase: term length mismatch");
        for (int f : t)
            if (f < 1 || f > 7) throw DomainError("phase: form index must be 1..7");
    }
    for (const auto& y : ystar)
        if (static_cast<int>(y.size()) != variables) throw DomainError("phase: ystar length mismatch");
    if (!names.empty() && static_cast<int>(names.size()) != variables)
        throw DomainError("phase: names length mismatch");
}

std::optional<Vec> potential_size_log(const PhaseTerm& t, std::optional<int> var) {
    Vec c(t.size());
    if (var && t[*var] == 7) return std::nullopt;
    for (std::size_t i = 0; i < t.size(); ++i)
        c[i] = (var && static_cast<int>(i) == *var) ? kDervLog[t[i] - 1] : kLog[t[i] - 1];
    return c;
}

bool might_be_small(const PhaseTerm& t, const std::vector<int>& smalls, int var) {
    for (int s : smalls)
        if (s != var && (t[s] == 1 || t[s] == 5 || t[s] == 6)) return true;
    const bool var_small = std::find(smalls.begin(), smalls.end(), var) != smalls.end();
    return var_small && t[var] >= 1 && t[var] <= 4;
}

Expr apply_bky(const Phase& phase, int var, const std::vector<int>& smalls) {
    const int n = phase.variables;
    auto substitute = [&](Vec c) {
        for (int s : smalls) c[s] = 0;
        return c;
    };
    auto atom = [&](Vec c, Op op) { return Expr::of(make_atom(substitute(std::move(c)), op)); };
    std::vector<Vec> small, large;
    for (const auto& t : phase.terms) {
        auto d = potential_size_log(t, var);
        if (!d || is_zero(*d)) continue;
        (might_be_small(t, smalls, var) ? small : large).push_back(*d);
    }
    auto diff = [&](const Vec& a, const Vec& b) {
        Vec r(n);
        for (int i = 0; i < n; ++i) r[i] = sub(a[i], b[i]);
        return r;
    };
    std::vector<Expr> cases;
    for (std::size_t i = 0; i < large.size(); ++i)
        for (std::size_t j = i + 1; j < large.size(); ++j) {
            std::vector<Expr> c{atom(diff(large[i], large[j]), Op::eq)};
            for (std::size_t k = 0; k < large.size(); ++k)
                if (k != i && k != j) c.push_back(atom(diff(large[k], large[i]), Op::le));
            c.push_back(atom(negated(large[i]), Op::lt));
            cases.push_back(Expr::all_of(std::move(c)));
        }
    for (const auto& s : small) {
        std::vector<Expr> c;
        for (const auto& l : large) c.push_back(atom(diff(l, s), Op::le));
        c.push_back(atom(negated(s), Op::lt));
        cases.push_back(Expr::all_of(std::move(c)));
    }
    std::vector<Expr> none;
    for (const auto& l : large) none.push_back(atom(l, Op::le));
    for (const auto& s : small) none.push_back(atom(s, Op::le));
    cases.push_back(Expr::all_of(std::move(none)));
    return Expr::any_of(std::move(cases));
}

bool feasible(const Conj& atoms, int n) {
    std::vector<Vec> eqs;
    std::vector<Atom> ineq;
    for (const auto& a : atoms) {
        if (a.op == Op::eq) eqs.push_back(a.c);
        else ineq.push_back(a);
    }
    while (!eqs.empty()) {
        const Vec e = eqs.back();
        eqs.pop_back();
        int piv = -1;
        for (int i = 0; i < n; ++i)
            if (e[i] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        auto eliminate = [&](const Vec& v) {
            if (v[piv] == 0) return v;
            const std::int64_t a = e[piv], b = v[piv];
            Vec w(n);
            for (int i = 0; i < n; ++i) w[i] = sub(mul(a, v[i]), mul(b, e[i]));
            if (a < 0) w = negated(w);
            return make_atom(w, Op::le).c;
        };
        for (auto& v : eqs) v = eliminate(v);
        for (auto& a : ineq) a.c = eliminate(a.c);
    }
    std::set<Atom> cur;
    for (const auto& a : ineq) {
        if (is_zero(a.c)) {
            if (a.op == Op::lt) return false;
            continue;
        }
        cur.insert(make_atom(a.c, a.op));
    }
    for (int k = 0; k < n; ++k) {
        std::vector<Atom> pos, neg;
        std::set<Atom> next;
        for (const auto& a : cur) {
            if (a.c[k] > 0) pos.push_back(a);
            else if (a.c[k] < 0) neg.push_back(a);
            else next.insert(a);
        }
        for (const auto& p : pos)
            for (const auto& q : neg) {
                const std::int64_t a = p.c[k], b = -q.c[k];
                Vec w(n);
                for (int i = 0; i < n; ++i) w[i] = add(mul(b, p.c[i]), mul(a, q.c[i]));
                const Op op = (p.op == Op::lt || q.op == Op::lt) ? Op::lt : Op::le;
                if (is_zero(w)) {
                    if (op == Op::lt) return false;
                    continue;
                }
                next.insert(make_atom(w, op));
            }
        cur = std::move(next);
    }
    for (const auto& a : cur)
        if (a.op == Op::lt) return false;
    return true;
}

bool implies(const Conj& p, const Atom& a, int n) {
    for (const auto& b : negation(a))
        if (feasible(with(p, b), n)) return false;
    return true;
}

bool covered(const Conj& p, const Dnf& qs, int n) {
    if (!feasible(p, n)) return true;
    Dnf live;
    for (const auto& q : qs)
        if (feasible(joined(p, q), n)) live.push_back(q);
    if (live.empty()) return false;
    for (const auto& q : live)
        if (std::all_of(q.begin(), q.end(), [&](const Atom& a) { return implies(p, a, n); })) return true;
    const Conj& q = live.front();
    const Dnf rest(live.begin() + 1, live.end());
    for (const auto& a : q) {
        if (implies(p, a, n)) continue;
        for (const auto& b : negation(a))
            if (!covered(with(p, b), rest, n)) return false;
    }
    return true;
}

bool equivalent(const Dnf& a, const Dnf& b, int n) {
    for (const auto& p : a)
        if (!covered(p, b, n)) return false;
    for (const auto& q : b)
        if (!covered(q, a, n)) return false;
    return true;
}

namespace {

void dnf_into(const Expr& e, int n, std::size_t cap, Dnf& out) {
    switch (e.kind) {
        case Expr::Kind::truth: out = {Conj{}}; return;
        case Expr::Kind::falsity: out = {}; return;
        case Expr::Kind::atom: out = {Conj{e.atom}}; return;
        case Expr::Kind::any: {
            std::set<Conj> acc;
            for (const auto& c : e.children) {
                Dnf d;
                dnf_into(c, n, cap, d);
                acc.insert(d.begin(), d.end());
                if (acc.size() > cap) throw SizeBlowup("DNF exceeds " + std::to_string(cap) + " conjuncts");
            }
            out.assign(acc.begin(), acc.end());
            return;
        }
        case Expr::Kind::all: {
            Dnf acc = {Conj{}};
            for (const auto& c : e.children) {
                Dnf d;
                dnf_into(c, n, cap, d);
                std::set<Conj> next;
                for (const auto& p : acc)
                    for (const auto& q : d) {
                        Conj r = joined(p, q);
                        if (feasible(r, n)) next.insert(std::move(r));
                        if (next.size() > cap)
                            throw SizeBlowup("DNF exceeds " + std::to_string(cap) + " conjuncts");
                    }
                acc.assign(next.begin(), next.end());
                if (acc.empty()) break;
            }
            out = std::move(acc);
            return;
        }
    }
}

// Reduced row echelon form of the equality rows, integer-scaled.
std::vector<Vec> echelon(std::vector<Vec> rows, int n) {
    std::vector<Vec> out;
    std::vector<int> pivots;
    for (int col = 0; col < n; ++col) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const Vec& r) { return r[col] != 0; });
        if (it == rows.end()) continue;
        Vec p = make_atom(*it, Op::eq).c;
        rows.erase(it);
        auto clear = [&](Vec& r) {
            if (r[col] == 0) return;
            const std::int64_t a = p[col], b = r[col];
            for (int i = 0; i < n; ++i) r[i] = sub(mul(a, r[i]), mul(b, p[i]));
            r = make_atom(r, Op::eq).c;
        };
        for (auto& r : rows) clear(r);
        for (auto& r : out) clear(r);
        out.push_back(p);
        pivots.push_back(col);
    }
    return out;
}

// Reduce an inequality modulo the equality span so equal cones print equally.
Vec reduce_mod(Vec v, const std::vector<Vec>& eqs, int n) {
    for (const auto& e : eqs) {
        int piv = 0;
        while (e[piv] == 0) ++piv;
        if (v[piv] == 0) continue;
        const std::int64_t a = e[piv], b = v[piv];
        for (int i = 0; i < n; ++i) v[i] = sub(mul(a < 0 ? -a : a, v[i]), mul(a < 0 ? -b : b, e[i]));
    }
    return v;
}

}  // namespace

Dnf to_dnf(const Expr& e, int n, std::size_t max_conjuncts) {
    Dnf out;
    dnf_into(e, n, max_conjuncts, out);
    Dnf live;
    for (auto& c : out)
        if (feasible(c, n)) live.push_back(std::move(c));
    return live;
}

Conj canonical_conj(const Conj& p, int n) {
    std::vector<Vec> eqs;
    Conj ineq;
    for (const auto& a : p) {
        if (a.op == Op::eq || (a.op == Op::le && implies(p, make_atom(a.c, Op::eq), n))) eqs.push_back(a.c);
        else ineq.push_back(a);
    }
    eqs = echelon(eqs, n);
    Conj out;
    for (const auto& e : eqs) out.push_back(make_atom(e, Op::eq));
    Conj rest;
    for (const auto& a : ineq) {
        Vec v = reduce_mod(a.c, eqs, n);
        if (is_zero(v)) continue;
        rest.push_back(make_atom(v, a.op));
    }
    rest = sorted_unique(rest);
    for (std::size_t i = 0; i < rest.size();) {
        Conj others = out;
        for (std::size_t j = 0; j < rest.size(); ++j)
            if (j != i) others.push_back(rest[j]);
        if (implies(sorted_unique(others), rest[i], n)) rest.erase(rest.begin() + i);
        else ++i;
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return sorted_unique(out);
}

Dnf canonical(const Dnf& d, int n) {
    std::vector<Conj> keep;
    for (const auto& p : d) {
        if (!feasible(p, n)) continue;
        Conj c = canonical_conj(p, n);
        if (std::find(keep.begin(), keep.end(), c) == keep.end()) keep.push_back(c);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < keep.size() && !changed; ++i)
            for (std::size_t j = 0; j < keep.size(); ++j) {
                if (i == j) continue;
                const auto& q = keep[j];
                if (std::all_of(q.begin(), q.end(), [&](const Atom& a) { return implies(keep[i], a, n); })) {
                    keep.erase(keep.begin() + i);
                    changed = true;
                    break;
                }
            }
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

Dnf reduce(const Expr& e, int n) { return canonical(to_dnf(e, n), n); }

Dnf cases_for(const Phase& phase, const std::vector<int>& smalls) {
    phase.validate();
    const int n = phase.variables;
    auto substitute = [&](Vec c) {
        for (int s : smalls) c[s] = 0;
        return c;
    };
    std::vector<Expr> init;
    for (const auto& y : phase.ystar) init.push_back(Expr::of(make_atom(substitute(y), Op::le)));
    for (int j = 0; j < n; ++j) init.push_back(Expr::of(make_atom(substitute(unit(n, j, -1)), Op::le)));
    Dnf dnf = to_dnf(Expr::all_of(std::move(init)), n);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> freq(n, 0);
    for (const auto& t : phase.terms)
        for (int i = 0; i < n; ++i) freq[i] += t[i] != 7;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return freq[a] < freq[b]; });

    for (int var : order) {
        const Dnf disj = to_dnf(apply_bky(phase, var, smalls), n);
        std::set<Conj> next;
        for (const auto& p : dnf)
            for (const auto& q : disj) {
                Conj r = joined(p, q);
                if (feasible(r, n)) next.insert(std::move(r));
                if (next.size() > 1'000'000) throw SizeBlowup("DNF exceeds 1000000 conjuncts");
            }
        dnf.assign(next.begin(), next.end());
        if (dnf.empty()) break;
    }
    Dnf out;
    for (const auto& p : dnf)
        for (int j = 0; j < n; ++j) {
            if (std::find(smalls.begin(), smalls.end(), j) != smalls.end()) continue;
            Conj r = with(p, make_atom(unit(n, j, -1), Op::lt));
            if (feasible(r, n)) out.push_back(std::move(r));
        }
    return out;
}

InterchangeReport enumerate_cases(const Phase& phase, Exec exec) {
    phase.validate();
    const int n = phase.variables;
    std::vector<std::vector<int>> subsets;
    for (int r = 0; r < n; ++r) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + r, true);
        do {
            std::vector<int> s;
            for (int i = 0; i < n; ++i)
                if (pick[i]) s.push_back(i);
            subsets.push_back(s);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::vector<Dnf> results(subsets.size());
    std::vector<Dnf> embedded(subsets.size());
    parallel_for(subsets.size(), exec, [&](std::size_t k) {
        results[k] = canonical(cases_for(phase, subsets[k]), n);
        Dnf e;
        for (const auto& p : results[k]) {
            Conj c = p;
            for (int s : subsets[k]) c.push_back(make_atom(unit(n, s, 1), Op::eq));
            e.push_back(sorted_unique(c));
        }
        embedded[k] = canonical(e, n);
    });
    InterchangeReport rep;
    std::map<Conj, std::size_t> by_key;
    for (std::size_t k = 0; k < subsets.size(); ++k) {
        if (results[k].empty()) continue;
        rep.cases.push_back({subsets[k], results[k]});
        for (const auto& c : embedded[k]) {
            auto it = by_key.find(c);
            std::size_t f = rep.families.size();
            if (it != by_key.end()) {
                f = it->second;
            } else {
                for (std::size_t g = 0; g < rep.families.size(); ++g)
                    if (equivalent(rep.families[g].expression, Dnf{c}, n)) {
                        f = g;
                        break;
                    }
                by_key[c] = f;
                if (f == rep.families.size()) rep.families.push_back({Dnf{c}, {}});
            }
            auto& subs = rep.families[f].subsets;
            if (subs.empty() || subs.back() != subsets[k]) subs.push_back(subsets[k]);
        }
    }
    return rep;
}

namespace {

struct PhaseSpec {
    int n;
    std::vector<std::map<int, int>> terms;
    std::vector<std::map<int, int>> ystar;
    std::vector<std::string> names;
};

const std::map<std::string, PhaseSpec>& phase_table() {
    static const std::map<std::string, PhaseSpec> t = {
        {"1111",
         {6,
          {{{1, 6}},
           {{1, 5}, {2, 6}},
           {{2, 5}, {4, 6}},
           {{1, 4}, {2, 3}, {3, 6}},
           {{4, 3}, {3, 5}, {5, 6}, {2, 4}},
           {{4, 3}, {5, 3}, {6, 6}, {2, 4}, {3, 4}},
           {{2, 3}, {3, 3}, {4, 4}, {5, 4}, {6, 1}},
           {{1, 3}, {2, 4}, {3, 1}},
           {{1, 3}, {2, 4}, {3, 2}, {5, 5}, {6, 6}},
           {{1, 2}, {2, 5}, {3, 6}},
           {{1, 2}, {2, 4}, {3, 3}, {4, 5}, {5, 6}}},
          {{{2, 1}, {3, 1}, {4, -1}, {5, -1}, {6, -2}},
           {{1, 1}, {2, -1}, {3, -2}, {5, -1}, {6, 1}},
           {{3, 1}, {5, 1}, {1, -2}, {2, -1}, {4, -1}}},
          {"x1", "x2", "x3", "x4", "x5", "x6"}}},
        {"22",
         {4,
          {{{2, 6}}, {{2, 5}, {4, 6}}, {{1, 6}, {2, 5}}, {{1, 5}, {2, 4}, {3, 6}, {4, 3}}, {{1, 3}, {2, 4}, {3, 6}, {4, 5}}},
          {{{1, -1}, {2, -1}, {3, 1}, {4, 1}}, {{1, -1}, {3, -2}, {4, -1}}, {{1, 1}, {2, -1}, {3, 1}, {4, -1}}},
          {"x2", "x3", "x4", "x5"}}},
        {"121",
         {5,
          {{{1, 6}},
           {{2, 5}, {3, 6}},
           {{2, 4}, {3, 3}, {5, 6}},
           {{1, 5}, {2, 6}},
           {{1, 3}, {3, 4}, {4, 1}, {5, 4}},
           {{1, 4}, {2, 3}, {4, 6}, {5, 5}},
           {{1, 4}, {2, 2}, {3, 5}, {5, 6}}},
          {{{1, 1}, {3, -1}, {4, -2}, {5, -1}}, {{2, 1}, {4, 1}, {1, -1}, {5, -1}}, {{5, 1}, {1, -1}, {2, -2}, {3, -1}}},
          {"x1", "x2", "x4", "x5", "x6"}}},
        {"211",
         {5,
          {{{1, 6}},
           {{1, 5}, {2, 6}},
           {{1, 4}, {2, 3}, {3, 6}},
           {{2, 5}, {4, 6}},
           {{1, 2}, {2, 5}, {3, 6}},
           {{2, 4}, {3, 5}, {4, 3}, {5, 6}},
           {{1, 3}, {3, 4}, {4, 4}, {5, 1}},
           {{1, 2}, {2, 4}, {3, 3}, {4, 5}, {5, 6}}},
          {{{2, -1}, {3, -1}, {4, 1}, {5, 1}}, {{1, 1}, {3, -1}, {4, -1}, {5, -2}}, {{1, -2}, {2, -1}, {3, 1}, {4, -1}, {5, 1}}},
          {"x1", "x2", "x3", "x4", "x5"}}},
        {"41",
         {4,
          {{{1, 6}}, {{1, 5}, {2, 6}}, {{2, 5}, {3, 6}}, {{3, 5}, {4, 6}}},
          {{{1, -1}, {2, 1}}, {{2, -1}, {3, 1}}, {{3, -1}, {4, 1}}, {{2, -1}, {3, -1}, {4, -2}}},
          {"x1", "x2", "x3", "x4"}}},
    };
    return t;
}

}  // namespace

std::vector<std::string> builtin_phase_names() { return {"22", "121", "211", "1111", "41"}; }

Phase builtin_phase(const std::string& weyl) {
    std::string key = weyl;
    if (!key.empty() && key[0] == 'w') key = key.substr(1);
    const auto& t = phase_table();
    auto it = t.find(key);
    if (it == t.end()) throw DomainError("no built-in phase for w" + key);
    const PhaseSpec& s = it->second;
    Phase p;
    p.variables = s.n;
    p.names = s.names;
    for (const auto& m : s.terms) {
        PhaseTerm term(s.n, 7);
        for (auto [k, v] : m) term[k - 1] = v;
        p.terms.push_back(term);
    }
    for (const auto& m : s.ystar) {
        Vec y(s.n, 0);
        for (auto [k, v] : m) y[k - 1] = v;
        p.ystar.push_back(y);
    }
    return p;
}

std::vector<Dnf> expected_families(const std::string& weyl) {
    std::string key = weyl;
    if (!key.empty() && key[0] == 'w') key = key.substr(1);
    auto family = [](int n, std::vector<int> zero, std::vector<std::pair<int, int>> equal, int positive) {
        Conj c;
        for (int z : zero) c.push_back(make_atom(unit(n, z - 1, 1), Op::eq));
        for (auto [a, b] : equal) {
            Vec v(n, 0);
            v[a - 1] = 1;
            v[b - 1] = -1;
            c.push_back(make_atom(v, Op::eq));
        }
        c.push_back(make_atom(unit(n, positive - 1, -1), Op::lt));
        return Dnf{sorted_unique(c)};
    };
    if (key == "211") return {family(5, {1, 2, 5}, {{3, 4}}, 3)};
    if (key == "22") return {family(4, {}, {{1, 2}, {2, 3}, {3, 4}}, 1), family(4, {2, 3}, {{1, 4}}, 1)};
    if (key == "1111") return {family(6, {1, 2, 5, 6}, {{3, 4}}, 3), family(6, {2, 3, 4, 6}, {{1, 5}}, 1)};
    if (key == "121" || key == "41") return {};
    throw DomainError("no expected families for w" + key);
}

Phase phase_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("phase JSON: ") + e.what());
    }
    Phase p;
    try {
        p.terms = j.at("terms").get<std::vector<PhaseTerm>>();
        p.ystar = j.value("ystar", std::vector<Vec>{});
        p.variables = j.contains("variables") ? j["variables"].get<int>()
                                              : (p.terms.empty() ? 0 : static_cast<int>(p.terms[0].size()));
        p.names = j.value("names", std::vector<std::string>{});
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("phase JSON: ") + e.what());
    }
    p.validate();
    return p;
}

std::string phase_to_json(const Phase& p) {
    nlohmann::json j = {{"variables", p.variables}, {"terms", p.terms}, {"ystar", p.ystar}};
    if (!p.names.empty()) j["names"] = p.names;
    return j.dump();
}

std::string format_atom(const Atom& a, const std::vector<std::string>& names) {
    Vec c = a.c;
    std::string op = a.op == Op::eq ? "=" : a.op == Op::lt ? "<" : "<=";
    const bool all_nonpos = std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x <= 0; });
    if (a.op != Op::eq && all_nonpos) {
        c = negated(c);
        op = a.op == Op::lt ? ">" : ">=";
    }
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const std::string name = "logC(" + (i < names.size() ? names[i] : "x" + std::to_string(i + 1)) + ")";
        if (first) {
            if (c[i] == -1) out << "-";
            else if (c[i] != 1) out << c[i] << "*";
        } else {
            out << (c[i] < 0 ? " - " : " + ");
            const auto m = c[i] < 0 ? -c[i] : c[i];
            if (m != 1) out << m << "*";
        }
        out << name;
        first = false;
    }
    out << " " << op << " 0";
    return out.str();
}

std::string format_conj(const Conj& c, const std::vector<std::string>& names) {
    if (c.empty()) return "true";
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " and " : "") + format_atom(c[i], names);
    return s;
}

std::string format_report(const InterchangeReport& r, const Phase& phase) {
    auto subset_text = [&](const std::vector<int>& s) {
        std::string t = "{";
        for (std::size_t i = 0; i < s.size(); ++i)
            t += (i ? "," : "") + (static_cast<std::size_t>(s[i]) < phase.names.size() ? phase.names[s[i]]
                                                                                        : "x" + std::to_string(s[i] + 1));
        return t + "}";
    };
    std::ostringstream out;
    out << "non-trivial subsets: " << r.cases.size() << "\n";
    for (const auto& c : r.cases) {
        out << "smalls " << subset_text(c.smalls) << "\n";
        for (const auto& p : c.cases) out << "  " << format_conj(p, phase.names) << "\n";
    }
    out << "case families: " << r.families.size() << "\n";
    for (std::size_t f = 0; f < r.families.size(); ++f) {
        out << "family " << f + 1 << " from smalls";
        for (const auto& s : r.families[f].subsets) out << " " << subset_text(s);
        out << "\n";
        for (const auto& p : r.families[f].expression) out << "  " << format_conj(p, phase.names) << "\n";
    }
    return out.str();
}

}  // namespace gl4
