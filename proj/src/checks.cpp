#include "gl4bessel/checks.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "gl4bessel/decompositions.hpp"
#include "gl4bessel/diffops.hpp"
#include "gl4bessel/errors.hpp"
#include "gl4bessel/hypergeometric.hpp"
#include "gl4bessel/power_weyl.hpp"
#include "gl4bessel/series.hpp"

namespace gl4 {

namespace {

double rel(cplx a, cplx b) {
    const double m = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / m;
}

// Each sample draws from its own stream so the result is schedule independent.
template <class Fn>
double worst_of(int n, std::uint64_t seed, Exec exec, Fn&& fn) {
    std::vector<double> r(n, 0.0);
    parallel_for(n, exec, [&](std::size_t i) {
        std::mt19937_64 rng(seed * 1000003ULL + i);
        r[i] = fn(rng);
    });
    return n ? *std::max_element(r.begin(), r.end()) : 0.0;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<>(lo, hi)(rng);
}

cplx disk(std::mt19937_64& rng, cplx center, double r) {
    const double rad = r * std::sqrt(uniform(rng, 0, 1));
    return center + std::polar(rad, uniform(rng, 0, 2 * kPi));
}

int integer(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<>(lo, hi)(rng); }

cplx random_strip(std::mt19937_64& rng) { return {uniform(rng, 0.05, 0.95), uniform(rng, -30, 30)}; }

void gamma_suite(SuiteReport& rep, int n, Exec exec) {
    const auto seed = rep.seed;
    auto add = [&](std::string name, double tol, auto fn) {
        rep.checks.push_back({std::move(name), n, worst_of(n, seed + rep.checks.size(), exec, fn), tol});
    };
    add("G = 2 (2 pi)^-s R Gamma", 1e-10, [](std::mt19937_64& g) {
        const cplx s = random_strip(g);
        double w = 0;
        for (int eta : {0, 1})
            w = std::max(w, rel(g_eta(eta, s), 2.0 * std::exp(-s * std::log(2 * kPi)) * r_eta(eta, s) * gamma_c(s)));
        return w;
    });
    add("G reflection", 1e-10, [](std::mt19937_64& g) {
        const cplx s = random_strip(g);
        return std::max(rel(g_eta(0, s) * g_eta(0, 1.0 - s), 1.0), rel(g_eta(1, s) * g_eta(1, 1.0 - s), -1.0));
    });
    add("R reflection", 1e-10, [](std::mt19937_64& g) {
        const cplx s = random_strip(g);
        return std::max(rel(r_eta(0, s), r_eta(0, -s)), rel(r_eta(1, s), -r_eta(1, -s)));
    });
    add("R R sine product", 1e-10, [](std::mt19937_64& g) {
        const cplx s = random_strip(g);
        double w = 0;
        for (int eta : {0, 1})
            w = std::max(w, rel(r_eta(eta, s) * r_eta(eta, 1.0 - s), 0.5 * (eta ? -1.0 : 1.0) * std::sin(kPi * s)));
        return w;
    });
    add("R shift", 1e-10, [](std::mt19937_64& g) {
        const cplx s = random_strip(g);
        double w = 0;
        for (int eta : {0, 1})
            for (int k = -3; k <= 3; ++k)
                w = std::max(w, rel(r_eta(eta, s + double(k)), i_pow(k) * r_eta(eta + k, s)));
        return w;
    });
    add("R Gamma to Pochhammer", 1e-10, [](std::mt19937_64& g) {
        const cplx s = random_strip(g);
        double w = 0;
        for (int eta : {0, 1})
            for (int j = 0; j <= 4; ++j)
                w = std::max(w, rel(r_eta(eta, s) * gamma_c(s + double(j)),
                                    0.5 * std::exp(s * std::log(2 * kPi)) * g_eta(eta, s) * pochhammer(s, j)));
        return w;
    });
    add("G vector shift", 1e-10, [](std::mt19937_64& g) {
        const cplx u = disk(g, 0, 0.3), s = disk(g, 0.5, 0.2);
        const cplx t[] = {disk(g, 0, 0.2), disk(g, 0, 0.2), disk(g, 0, 0.2)};
        const cplx tu[] = {t[0] - u, t[1] - u, t[2] - u};
        const int eta[] = {integer(g, 0, 3), integer(g, 0, 3), integer(g, 0, 3)};
        const int ell = integer(g, -2, 2);
        return rel(g_vec(ell, s, t, eta), g_vec(ell, s + u, tu, eta));
    });

    // residues by quadrature on a circle of radius 0.1
    auto circle = [](auto f, double center) {
        const int m = 64;
        cplx sum = 0;
        for (int k = 0; k < m; ++k) {
            const cplx e = std::polar(1.0, 2 * kPi * k / m);
            sum += f(center + 0.1 * e) * 0.1 * e;
        }
        return sum / double(m);
    };
    double worst = 0;
    int count = 0;
    for (int k = 0; k <= 6; ++k) {
        const int eta = parity(k);
        const cplx q = circle([&](cplx s) { return g_eta(eta, s); }, -k);
        cplx expect = 2.0;
        for (int j = 1; j <= k; ++j) expect *= cplx(0, 2 * kPi) / double(j);
        worst = std::max({worst, rel(q, expect), rel(residue_g(eta, k), expect)});
        ++count;
    }
    rep.checks.push_back({"G residues 2 (2 pi i)^n / n!", count, worst, 1e-8});
}

RelationParams random_relation(std::mt19937_64& g) {
    RelationParams p;
    p.a1 = disk(g, 0.3, 2);
    p.a2 = disk(g, -0.2, 2);
    p.a3 = disk(g, 0.4, 2);
    p.a4 = disk(g, 0.1, 2);
    p.b1 = disk(g, 3.3, 2);
    p.b2 = disk(g, 3.6, 2);
    p.b3 = disk(g, 4.1, 2);
    return p;
}

void hyp_suite(SuiteReport& rep, int n, Exec exec) {
    auto add = [&](std::string name, Relation id, auto adjust) {
        const double w = worst_of(n, rep.seed + rep.checks.size(), exec, [&](std::mt19937_64& g) {
            RelationParams p = random_relation(g);
            adjust(p, g);
            return verify_contiguous(id, p);
        });
        rep.checks.push_back({std::move(name), n, w, 1e-9});
    };
    auto terminating = [](cplx RelationParams::*field) {
        return [field](RelationParams& p, std::mt19937_64& g) { p.*field = -double(integer(g, 0, 8)); };
    };
    add("Gauss 2F1", Relation::gauss_2f1, [](RelationParams& p, std::mt19937_64& g) {
        p.a1 = disk(g, 0.2, 0.5);
        p.a2 = disk(g, 0.1, 0.5);
        p.b1 = disk(g, 2.5, 0.5);
    });
    add("4F3 denominator identity 1", Relation::denom1, [](RelationParams& p, std::mt19937_64& g) {
        p.a1 = disk(g, 0.3, 0.4);
        p.a2 = disk(g, -0.2, 0.4);
        p.a3 = disk(g, 0.4, 0.4);
        p.a4 = disk(g, 0.1, 0.4);
        p.e = disk(g, 3.5, 0.5);
        p.f = disk(g, 3.8, 0.5);
        p.n = integer(g, -1, 2);
    });
    add("4F3 denominator identity 2", Relation::denom2, [](RelationParams& p, std::mt19937_64& g) {
        p.m = integer(g, 0, 3);
        p.n = integer(g, 0, 3);
        p.a1 = disk(g, 0.3, 0.5);
        p.a2 = disk(g, -1.2, 0.5);
        p.a3 = disk(g, 0.8, 0.5);
        p.b1 = disk(g, 1.4, 0.5);
        p.b2 = disk(g, -0.6, 0.3);
    });
    add("3F2 contiguous relation 1", Relation::recur1_3f2, terminating(&RelationParams::a1));
    add("3F2 contiguous relation 2", Relation::recur2_3f2, terminating(&RelationParams::a1));
    add("4F3 general relation, z = 0.6", Relation::genrel_4f3,
        [](RelationParams& p, std::mt19937_64&) { p.z = 0.6; });
    add("4F3 general relation, terminating", Relation::genrel_4f3, terminating(&RelationParams::a3));
    add("Saalschutzian two-term relation, a1 terminating", Relation::wl_recur2, terminating(&RelationParams::a1));
    add("Saalschutzian two-term relation, a4 terminating", Relation::wl_recur2, terminating(&RelationParams::a4));
    add("Saalschutzian three-term relation, a1 terminating", Relation::wl_recur3, terminating(&RelationParams::a1));
    add("Saalschutzian three-term relation, a4 terminating", Relation::wl_recur3, terminating(&RelationParams::a4));
}

Mu draw_mu(std::mt19937_64& g) { return sample_tempered(g).mu; }

void series_suite(SuiteReport& rep, int n, Exec exec) {
    const auto seed = rep.seed;
    rep.checks.push_back({"w211 forms a = b = c on [0,6]^2", n, worst_of(n, seed, exec, [](std::mt19937_64& g) {
                              const Mu mu = draw_mu(g);
                              double w = 0;
                              for (int a = 0; a <= 6; ++a)
                                  for (int b = 0; b <= 6; ++b) {
                                      const cplx x = star_211(mu, a, b, CoefForm::a);
                                      w = std::max({w, rel(star_211(mu, a, b, CoefForm::b), x),
                                                    rel(star_211(mu, a, b, CoefForm::c), x)});
                                  }
                              return w;
                          }),
                          1e-8});

    // pairwise table of the six w1111 forms and the recurrence oracle
    const char forms[] = "abcdef";
    std::vector<std::array<double, 28>> per(n);
    parallel_for(n, exec, [&](std::size_t i) {
        std::mt19937_64 g(seed * 1000003ULL + 7919 + i);
        const Mu mu = draw_mu(g);
        const Lattice oracle = recurrence_oracle_wl(mu, 4);
        per[i].fill(0);
        for (std::size_t f = 0; f < oracle.size(); ++f) {
            const auto m = oracle.point(f);
            cplx v[7];
            for (int k = 0; k < 6; ++k) v[k] = star_1111(mu, m[0], m[1], m[2], coef_form_from_char(forms[k]));
            v[6] = oracle[f];
            int slot = 0;
            for (int a = 0; a < 7; ++a)
                for (int b = a + 1; b < 7; ++b, ++slot) per[i][slot] = std::max(per[i][slot], rel(v[a], v[b]));
        }
    });
    int slot = 0;
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b, ++slot) {
            double w = 0;
            for (const auto& p : per) w = std::max(w, p[slot]);
            const std::string rhs = b == 6 ? "recurrence oracle" : std::string("form ") + forms[b];
            rep.checks.push_back({std::string("w1111 form ") + forms[a] + " vs " + rhs + " on [0,4]^3", n, w, 1e-8});
        }

    auto recurrence = [&](const char* name, int dim, int top) {
        const auto w = WeylElement::from_name(name);
        const double worst = worst_of(n, seed + 17 + dim, exec, [&](std::mt19937_64& g) {
            const Mu mu = draw_mu(g);
            double r = 0;
            std::vector<int> m(dim, 0);
            for (;;) {
                if (dim > 1 || m[0] >= 1) r = std::max(r, recurrence_residual(w, mu, m));
                int k = 0;
                while (k < dim && ++m[k] > top) m[k++] = 0;
                if (k == dim) break;
            }
            return r;
        });
        rep.checks.push_back({std::string("w") + name + " recurrence residual", n, worst, 1e-9});
    };
    recurrence("31", 1, 8);
    recurrence("22", 1, 8);
    recurrence("121", 2, 6);
    recurrence("211", 2, 6);
    recurrence("1111", 3, 4);
}

void diffops_suite(SuiteReport& rep, int n, Exec exec) {
    for (const char* name : {"31", "22", "121", "211", "1111"}) {
        const auto w = WeylElement::from_name(name);
        const int order = w.name() == "1111" ? 4 : 6;
        const double worst = worst_of(n, rep.seed + rep.checks.size(), exec,
                                      [&](std::mt19937_64& g) { return annihilation_residual(w, draw_mu(g), order); });
        rep.checks.push_back({std::string("w") + name + " operators annihilate the series", n, worst, 1e-9});
    }
    for (const char* name : {"31", "22", "121", "211", "1111"}) {
        const auto w = WeylElement::from_name(name);
        const int order = w.name() == "1111" ? 4 : 6;
        std::vector<double> least(n);
        parallel_for(n, exec, [&](std::size_t i) {
            std::mt19937_64 g(rep.seed * 1000003ULL + 31337 + i);
            const Mu mu = draw_mu(g);
            Mu off = mu;
            off[0] += 1e-3;
            const Lattice c = coefficient_lattice(w, off, order, CoefForm::a, Exec::serial);
            const auto alpha = leading_exponents(w, mu);
            const auto l = operator_lambdas(mu);
            double r = 0;
            for (const auto& op : operators_for(w)) r = std::max(r, apply_residual(op, c, alpha, l, order));
            least[i] = r;
        });
        const double w_least = n ? *std::min_element(least.begin(), least.end()) : 0.0;
        rep.checks.push_back({std::string("w") + name + " perturbed mu is detected", n, w_least, 1e-5, true});
    }
}

void decomp_suite(SuiteReport& rep, int n, Exec exec) {
    for (const char* name : {"31", "22", "121", "211", "1111"}) {
        const auto r = check_decompositions(WeylElement::from_name(name), n, rep.seed, exec);
        rep.checks.push_back({std::string("w") + name + " Iwasawa", r.samples, r.iwasawa, 1e-11});
        rep.checks.push_back({std::string("w") + name + " Bruhat", r.samples, r.bruhat, 1e-10});
        rep.checks.push_back({std::string("w") + name + " Bruhat determinant", r.samples, r.determinant, 1e-12});
    }
}

}  // namespace

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

std::vector<std::string> suite_names() { return {"gamma", "hyp", "series", "diffops", "decomp"}; }

SuiteReport run_suite(const std::string& suite, unsigned seed, int samples, Exec exec) {
    SuiteReport rep;
    rep.suite = suite;
    rep.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    auto n = [&](int def) { return samples > 0 ? samples : def; };
    if (suite == "gamma") gamma_suite(rep, n(200), exec);
    else if (suite == "hyp") hyp_suite(rep, n(100), exec);
    else if (suite == "series") series_suite(rep, n(50), exec);
    else if (suite == "diffops") diffops_suite(rep, n(20), exec);
    else if (suite == "decomp") decomp_suite(rep, n(1000), exec);
    else throw DomainError("unknown suite '" + suite + "'");
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace gl4
