#include "gl4bessel/mellin_barnes.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>

#include "gl4bessel/errors.hpp"
#include "json.hpp"

namespace gl4 {

namespace {

// Argument of a G factor (or of 1/G when inverse) as a linear form in s.
struct Form {
    std::vector<int> coef;
    cplx shift;
    bool inverse = false;
};

std::vector<Form> family_forms(const std::string& w, const Mu& mu) {
    std::vector<Form> f;
    auto add = [&](std::vector<int> c, cplx shift, bool inv = false) { f.push_back({std::move(c), shift, inv}); };
    if (w == "31") {
        for (int j = 0; j < 4; ++j) add({1}, -mu[j]);
    } else if (w == "22") {
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) add({1}, mu[i] + mu[j]);
        add({2}, 0.0, true);
    } else if (w == "121") {
        for (int j = 0; j < 4; ++j) {
            add({1, 0}, mu[j]);
            add({0, 1}, -mu[j]);
        }
        add({1, 1}, 0.0, true);
    } else if (w == "211") {
        add({1, 0, 0}, -mu[0] - mu[1]);
        add({1, 0, 0}, -mu[0] - mu[2]);
        add({1, 0, 0}, -mu[1] - mu[2]);
        add({0, 0, 1}, -mu[3]);
        add({1, -1, 0}, -mu[3]);
        add({0, -1, 1}, 0.0);
        for (int j = 0; j < 3; ++j) add({0, 1, 0}, -mu[j]);
        add({1, 1, 0}, mu[3], true);
    } else if (w == "1111") {
        add({1, 0, 0, 0}, mu[0]);
        add({1, 0, 0, 0}, mu[1]);
        add({0, 1, 0, 0}, mu[0] + mu[1]);
        add({0, 1, 0, 0}, mu[2] + mu[3]);
        add({0, 0, 1, 0}, -mu[0]);
        add({0, 0, 1, 0}, -mu[1]);
        add({0, 0, 0, 1}, mu[2]);
        add({0, 0, 0, 1}, mu[3]);
        add({1, 0, 0, -1}, 0.0);
        add({0, 1, 0, -1}, mu[0]);
        add({0, 1, 0, -1}, mu[1]);
        add({0, 0, 1, -1}, mu[0] + mu[1]);
        add({1, 1, 0, -1}, mu[0] + mu[1], true);
        add({0, 1, 1, -1}, 0.0, true);
    } else {
        throw DomainError("no Mellin-Barnes integral for w" + w);
    }
    return f;
}

int single_variable(const Form& f) {
    int var = -1;
    for (std::size_t i = 0; i < f.coef.size(); ++i) {
        if (f.coef[i] == 0) continue;
        if (var >= 0) return -1;
        var = static_cast<int>(i);
    }
    return var;
}

struct GaussRule {
    std::vector<double> x, w;  // on [-1, 1]
};

const GaussRule& gauss_rule(int n) {
    static std::mutex guard;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule r;
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(n);
    for (int i = 0; i < n; ++i) {
        double xi, wi;
        gsl_integration_glfixed_point(-1, 1, i, &xi, &wi, t);
        r.x.push_back(xi);
        r.w.push_back(wi);
    }
    gsl_integration_glfixed_table_free(t);
    return cache.emplace(n, std::move(r)).first->second;
}

// Integral over a list of outer nodes, each worth `cost` integrand evaluations.
struct Plan {
    std::size_t outer = 0;
    long long cost = 1;
    std::function<cplx(std::size_t)> term;
};

struct PlanRun {
    cplx sum;
    long long evaluations;
    bool complete;
};

PlanRun run_plan(const Plan& plan, long long remaining, Exec exec) {
    std::size_t allowed = plan.outer;
    if (plan.cost * static_cast<long long>(plan.outer) > remaining)
        allowed = static_cast<std::size_t>(std::max(0LL, remaining / plan.cost));
    std::vector<cplx> part(allowed);
    parallel_for(allowed, exec, [&](std::size_t i) { part[i] = plan.term(i); });
    cplx sum = 0;
    for (const auto& v : part) sum += v;
    return {sum, plan.cost * static_cast<long long>(allowed), allowed == plan.outer};
}

using Lines = std::vector<ContourNodes>;
using Pair = std::array<cplx, 2>;

Plan plan_31(const YPoint& y, const SpectralParams& p, const Lines& L) {
    const int D = p.delta_sum();
    const auto& n = L[0];
    Plan plan;
    plan.outer = n.s.size();
    plan.term = [&n, y, p, D](std::size_t i) {
        const cplx s = n.s[i];
        cplx f = 0;
        for (int l = 0; l < 2; ++l) {
            cplx t = chi(1.5 - s, l, -y.y[2]);
            for (int j = 0; j < 4; ++j) t *= g_eta(l + D - p.delta[j], s - p.mu[j]);
            f += t;
        }
        return n.weight[i] * f;
    };
    return plan;
}

Plan plan_22(const YPoint& y, const SpectralParams& p, const Lines& L) {
    const int D = p.delta_sum();
    const auto& n = L[0];
    Plan plan;
    plan.outer = n.s.size();
    plan.term = [&n, y, p, D](std::size_t i) {
        const cplx s = n.s[i];
        cplx f = 0;
        for (int l = 0; l < 2; ++l) {
            cplx t = chi(2.0 - s, l, y.y[1]);
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b)
                    t *= g_eta(l + p.delta[a] + p.delta[b], s + p.mu[a] + p.mu[b]);
            f += t;
        }
        return n.weight[i] * f / g_eta(D, 2.0 * s);
    };
    return plan;
}

Plan plan_121(const YPoint& y, const SpectralParams& p, const Lines& L) {
    const int D = p.delta_sum();
    const auto& n1 = L[0];
    const auto& n2 = L[1];
    auto B = std::make_shared<std::vector<Pair>>(n2.s.size());
    for (std::size_t j = 0; j < n2.s.size(); ++j)
        for (int l = 0; l < 2; ++l) {
            cplx t = n2.weight[j] * chi(1.5 - n2.s[j], l, y.y[2]);
            for (int k = 0; k < 4; ++k) t *= g_eta(l + D - p.delta[k], n2.s[j] - p.mu[k]);
            (*B)[j][l] = t;
        }
    Plan plan;
    plan.outer = n1.s.size();
    plan.cost = static_cast<long long>(n2.s.size());
    plan.term = [&n1, &n2, B, y, p, D](std::size_t i) {
        const cplx s1 = n1.s[i];
        Pair A;
        for (int l = 0; l < 2; ++l) {
            cplx t = chi(1.5 - s1, l, -y.y[0]);
            for (int k = 0; k < 4; ++k) t *= g_eta(l + p.delta[k], s1 + p.mu[k]);
            A[l] = t;
        }
        cplx sum = 0;
        for (std::size_t j = 0; j < n2.s.size(); ++j) {
            const cplx z = s1 + n2.s[j];
            const Pair inv = {1.0 / g_eta(D, z), 1.0 / g_eta(D + 1, z)};
            for (int l1 = 0; l1 < 2; ++l1)
                for (int l2 = 0; l2 < 2; ++l2) sum += A[l1] * (*B)[j][l2] * inv[parity(l1 + l2)];
        }
        return n1.weight[i] * sum;
    };
    return plan;
}

Plan plan_211(const YPoint& y, const SpectralParams& p, const Lines& L) {
    const int D = p.delta_sum();
    const auto& mu = p.mu;
    const auto& d = p.delta;
    const auto& n1 = L[0];
    const auto& n2 = L[1];
    const auto& n3 = L[2];
    const std::size_t N2 = n2.s.size(), N3 = n3.s.size();
    // s2 factors with the s2 weight, s3 factors with the s3 weight, and G(s3 - s2)
    auto Dv = std::make_shared<std::vector<Pair>>(N2);
    for (std::size_t j = 0; j < N2; ++j)
        for (int l = 0; l < 2; ++l) {
            cplx t = n2.weight[j];
            for (int k = 0; k < 3; ++k) t *= g_eta(l + D - d[k], n2.s[j] - mu[k]);
            (*Dv)[j][l] = t;
        }
    auto C = std::make_shared<std::vector<Pair>>(N3);
    for (std::size_t k = 0; k < N3; ++k)
        for (int l = 0; l < 2; ++l)
            (*C)[k][l] = n3.weight[k] * chi(1.5 - n3.s[k], l, y.y[2]) * g_eta(l + D - d[3], n3.s[k] - mu[3]);
    auto R = std::make_shared<std::vector<Pair>>(N3 * N2);
    for (std::size_t k = 0; k < N3; ++k)
        for (std::size_t j = 0; j < N2; ++j) {
            const cplx z = n3.s[k] - n2.s[j];
            (*R)[k * N2 + j] = {g_eta(0, z), g_eta(1, z)};
        }
    Plan plan;
    plan.outer = n1.s.size();
    plan.cost = static_cast<long long>(N2 * N3);
    plan.term = [&n1, &n2, Dv, C, R, y, mu, d, D, N2, N3](std::size_t i) {
        const cplx s1 = n1.s[i];
        Pair A;
        for (int l = 0; l < 2; ++l)
            A[l] = chi(2.0 - s1, l, y.y[1]) * g_eta(l + D - d[0] - d[1], s1 - mu[0] - mu[1]) *
                   g_eta(l + D - d[0] - d[2], s1 - mu[0] - mu[2]) *
                   g_eta(l + D - d[1] - d[2], s1 - mu[1] - mu[2]);
        std::vector<Pair> P(N2), Q(N2);
        for (std::size_t j = 0; j < N2; ++j) {
            const cplx a = s1 - n2.s[j] - mu[3], b = s1 + n2.s[j] + mu[3];
            P[j] = {g_eta(0, a), g_eta(1, a)};
            Q[j] = {1.0 / g_eta(0, b), 1.0 / g_eta(1, b)};
        }
        cplx sum = 0;
        for (std::size_t k = 0; k < N3; ++k) {
            for (int l1 = 0; l1 < 2; ++l1)
                for (int l3 = 0; l3 < 2; ++l3) {
                    cplx inner = 0;
                    for (std::size_t j = 0; j < N2; ++j) {
                        const Pair& r = (*R)[k * N2 + j];
                        for (int l2 = 0; l2 < 2; ++l2)
                            inner += P[j][parity(l1 + l2 + d[3])] * r[parity(l2 + l3)] * (*Dv)[j][l2] *
                                     Q[j][parity(l1 + l2 + D - d[3])];
                    }
                    sum += A[l1] * (*C)[k][l3] * inner;
                }
        }
        return n1.weight[i] * sum;
    };
    return plan;
}

Plan plan_1111(const YPoint& y, const SpectralParams& p, const Lines& L) {
    const int D = p.delta_sum();
    const auto& mu = p.mu;
    const auto& d = p.delta;
    const cplx m12 = mu[0] + mu[1];
    const int d12 = d[0] + d[1];
    const std::size_t N1 = L[0].s.size(), N2 = L[1].s.size(), N3 = L[2].s.size(), N4 = L[3].s.size();
    struct Tables {
        std::vector<Pair> A1, A2, A3, A4;  // weights folded in
        std::vector<Pair> E1, E2, E3;      // indexed [i * N4 + j4], by parity
        std::vector<Pair> H;               // 1/G(s2 + s3 - s4) at [(i2 * N3 + i3) * N4 + j4]
    };
    auto T = std::make_shared<Tables>();
    T->A1.resize(N1);
    T->A2.resize(N2);
    T->A3.resize(N3);
    T->A4.resize(N4);
    for (int l = 0; l < 2; ++l) {
        for (std::size_t i = 0; i < N1; ++i) {
            const cplx s = L[0].s[i];
            T->A1[i][l] = L[0].weight[i] * chi(1.5 - s, l, -y.y[0]) * g_eta(l + d[0], s + mu[0]) *
                          g_eta(l + d[1], s + mu[1]);
        }
        for (std::size_t i = 0; i < N2; ++i) {
            const cplx s = L[1].s[i];
            T->A2[i][l] = L[1].weight[i] * chi(2.0 - s, l, -y.y[1]) * g_eta(l + d12, s + m12) *
                          g_eta(l + d[2] + d[3], s + mu[2] + mu[3]);
        }
        for (std::size_t i = 0; i < N3; ++i) {
            const cplx s = L[2].s[i];
            T->A3[i][l] = L[2].weight[i] * chi(1.5 - s, l, -y.y[2]) * g_eta(l + D - d[0], s - mu[0]) *
                          g_eta(l + D - d[1], s - mu[1]);
        }
        for (std::size_t i = 0; i < N4; ++i) {
            const cplx s = L[3].s[i];
            T->A4[i][l] = L[3].weight[i] * g_eta(l + d[2], s + mu[2]) * g_eta(l + d[3], s + mu[3]);
        }
    }
    T->E1.resize(N1 * N4);
    T->E2.resize(N2 * N4);
    T->E3.resize(N3 * N4);
    T->H.resize(N2 * N3 * N4);
    for (std::size_t j = 0; j < N4; ++j) {
        const cplx s4 = L[3].s[j];
        for (std::size_t i = 0; i < N1; ++i) {
            const cplx z = L[0].s[i] - s4;
            T->E1[i * N4 + j] = {g_eta(0, z), g_eta(1, z)};
        }
        for (std::size_t i = 0; i < N2; ++i) {
            const cplx z = L[1].s[i] - s4;
            for (int l = 0; l < 2; ++l)
                T->E2[i * N4 + j][l] = g_eta(l + d[0], z + mu[0]) * g_eta(l + d[1], z + mu[1]);
        }
        for (std::size_t i = 0; i < N3; ++i) {
            const cplx z = L[2].s[i] - s4 + m12;
            T->E3[i * N4 + j] = {g_eta(d12, z), g_eta(1 + d12, z)};
        }
    }
    for (std::size_t i2 = 0; i2 < N2; ++i2)
        for (std::size_t i3 = 0; i3 < N3; ++i3)
            for (std::size_t j = 0; j < N4; ++j) {
                const cplx z = L[1].s[i2] + L[2].s[i3] - L[3].s[j];
                T->H[(i2 * N3 + i3) * N4 + j] = {1.0 / g_eta(D, z), 1.0 / g_eta(D + 1, z)};
            }
    Plan plan;
    plan.outer = N1 * N2;
    plan.cost = static_cast<long long>(N3 * N4);
    plan.term = [T, L0 = L[0].s, L1 = L[1].s, L3 = L[3].s, m12, d12, N2, N3, N4](std::size_t o) {
        const std::size_t i1 = o / N2, i2 = o % N2;
        std::vector<Pair> F(N4);
        for (std::size_t j = 0; j < N4; ++j) {
            const cplx z = L0[i1] + L1[i2] - L3[j] + m12;
            F[j] = {1.0 / g_eta(d12, z), 1.0 / g_eta(1 + d12, z)};
        }
        cplx sum = 0;
        for (std::size_t i3 = 0; i3 < N3; ++i3)
            for (std::size_t j = 0; j < N4; ++j) {
                const Pair& e1 = T->E1[i1 * N4 + j];
                const Pair& e2 = T->E2[i2 * N4 + j];
                const Pair& e3 = T->E3[i3 * N4 + j];
                const Pair& h = T->H[(i2 * N3 + i3) * N4 + j];
                for (int l4 = 0; l4 < 2; ++l4)
                    for (int l2 = 0; l2 < 2; ++l2) {
                        cplx a = 0, c = 0;
                        for (int l1 = 0; l1 < 2; ++l1)
                            a += T->A1[i1][l1] * e1[parity(l1 + l4)] * F[j][parity(l1 + l2 + l4)];
                        for (int l3 = 0; l3 < 2; ++l3)
                            c += T->A3[i3][l3] * e3[parity(l3 + l4)] * h[parity(l2 + l3 + l4)];
                        sum += T->A2[i2][l2] * T->A4[j][l4] * e2[parity(l2 + l4)] * a * c;
                    }
            }
        return sum;
    };
    return plan;
}

Plan make_plan(const std::string& w, const YPoint& y, const SpectralParams& p, const Lines& L) {
    if (w == "31") return plan_31(y, p, L);
    if (w == "22") return plan_22(y, p, L);
    if (w == "121") return plan_121(y, p, L);
    if (w == "211") return plan_211(y, p, L);
    return plan_1111(y, p, L);
}

cplx prefactor(const std::string& w, int D, bool literal) {
    const double sign = parity(D) ? -1.0 : 1.0;
    if (w == "31") return sign / (literal ? 4.0 : 2.0);
    if (w == "22") return 1.0 / (literal ? 4.0 : 2.0);
    if (w == "121") return sign / 4.0;
    if (w == "211") return sign / 8.0;
    return sign / 16.0;
}

}  // namespace

ContourConfig ContourConfig::defaults(const WeylElement& w) {
    ContourConfig c;
    const std::string n = w.name();
    if (n == "31" || n == "13") {
        c.abscissae = {0.2};
        c.bent = {true};
    } else if (n == "22") {
        c.abscissae = {0.25};
        c.bent = {true};
    } else if (n == "121") {
        c.abscissae = {1.0 / 7, 1.0 / 7};
        c.bent = {true, true};
        c.t_max = 150;
        c.max_refinements = 0;
    } else if (n == "211" || n == "112") {
        c.abscissae = {1.0 / 7, 1.0 / 14, 1.0 / 7};
        c.bent = {false, true, false};
        c.t_max = 16;
        c.gauss_points = 6;
        c.panel = 2.0;
        c.max_refinements = 0;
    } else if (n == "1111") {
        c.abscissae = {0.1, 0.1, 0.1, 0.05};
        c.bent = {false, false, false, true};
        c.tail_abscissa = -0.5;
        c.t_max = 12;
        c.gauss_points = 4;
        c.panel = 2.0;
        c.max_refinements = 0;
    }
    return c;
}

ContourConfig contour_from_json(const std::string& text, const WeylElement& w) {
    ContourConfig c = ContourConfig::defaults(w);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("contour JSON: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("contour JSON must be an object");
    try {
        if (j.contains("abscissae")) c.abscissae = j["abscissae"].get<std::vector<double>>();
        if (j.contains("bent")) c.bent = j["bent"].get<std::vector<bool>>();
        if (j.contains("t0")) c.t0 = j["t0"].get<double>();
        if (j.contains("tail_abscissa")) c.tail_abscissa = j["tail_abscissa"].get<double>();
        if (j.contains("t_max")) c.t_max = j["t_max"].get<double>();
        if (j.contains("panel")) c.panel = j["panel"].get<double>();
        if (j.contains("growth")) c.growth = j["growth"].get<double>();
        if (j.contains("max_panel")) c.max_panel = j["max_panel"].get<double>();
        if (j.contains("gauss_points")) c.gauss_points = j["gauss_points"].get<int>();
        if (j.contains("tol")) c.tol = j["tol"].get<double>();
        if (j.contains("max_refinements")) c.max_refinements = j["max_refinements"].get<int>();
        if (j.contains("budget")) c.budget = j["budget"].get<long long>();
        if (j.contains("literal_prefactor")) c.literal_prefactor = j["literal_prefactor"].get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("contour JSON: ") + e.what());
    }
    return c;
}

std::string contour_to_json(const ContourConfig& c) {
    nlohmann::json j = {{"abscissae", c.abscissae},
                        {"bent", c.bent},
                        {"t0", c.t0},
                        {"tail_abscissa", c.tail_abscissa},
                        {"t_max", c.t_max},
                        {"panel", c.panel},
                        {"growth", c.growth},
                        {"max_panel", c.max_panel},
                        {"gauss_points", c.gauss_points},
                        {"tol", c.tol},
                        {"max_refinements", c.max_refinements},
                        {"budget", c.budget},
                        {"literal_prefactor", c.literal_prefactor}};
    return j.dump();
}

ContourNodes contour_nodes(double abscissa, bool bent, double t0, const ContourConfig& cfg,
                           double density_scale) {
    const GaussRule& g = gauss_rule(cfg.gauss_points);
    ContourNodes out;
    const cplx I(0, 1);
    auto vertical = [&](double re, double a, double b) {
        for (std::size_t k = 0; k < g.x.size(); ++k) {
            const double t = 0.5 * (b - a) * g.x[k] + 0.5 * (a + b);
            out.s.push_back(re + I * t);
            out.weight.push_back(0.5 * (b - a) * g.w[k] / (2 * kPi));
        }
    };
    auto horizontal = [&](double im, double a, double b) {
        const int n = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / (cfg.panel * density_scale))));
        for (int p = 0; p < n; ++p) {
            const double lo = a + (b - a) * p / n, hi = a + (b - a) * (p + 1) / n;
            for (std::size_t k = 0; k < g.x.size(); ++k) {
                const double x = 0.5 * (hi - lo) * g.x[k] + 0.5 * (lo + hi);
                out.s.push_back(x + I * im);
                out.weight.push_back(0.5 * (hi - lo) * g.w[k] / (2 * kPi * I));
            }
        }
    };
    const double h = cfg.panel * density_scale;
    const int n = std::max(1, static_cast<int>(std::ceil(2 * t0 / h)));
    for (int p = 0; p < n; ++p) vertical(abscissa, -t0 + 2 * t0 * p / n, -t0 + 2 * t0 * (p + 1) / n);
    const double tail = bent ? cfg.tail_abscissa : abscissa;
    for (int sign : {1, -1}) {
        double t = t0, hh = h;
        while (t < cfg.t_max) {
            const double b = std::min(t + hh, cfg.t_max);
            if (sign > 0) vertical(tail, t, b);
            else vertical(tail, -b, -t);
            t = b;
            hh = std::min(hh * cfg.growth, cfg.max_panel * density_scale);
        }
    }
    if (bent) {
        horizontal(-t0, tail, abscissa);
        horizontal(t0, abscissa, tail);
    }
    return out;
}

double resolved_t0(const WeylElement& w, const Mu& mu, const ContourConfig& cfg) {
    if (cfg.t0 > 0) return cfg.t0;
    double ord = 0;
    for (const auto& f : family_forms(w.name(), mu))
        if (single_variable(f) >= 0) ord = std::max(ord, std::abs(f.shift.imag()));
    return std::max(10.0, ord + 2);
}

void validate_contour(const WeylElement& w, const Mu& mu, const ContourConfig& cfg) {
    const auto forms = family_forms(w.name(), mu);
    const std::size_t d = forms.front().coef.size();
    if (cfg.abscissae.size() != d || cfg.bent.size() != d)
        throw ContourError("contour for w" + w.name() + " needs " + std::to_string(d) + " abscissae");
    if (cfg.gauss_points < 1 || cfg.panel <= 0 || cfg.growth < 1 || cfg.max_panel <= 0)
        throw ContourError("contour panels must be positive");
    const double t0 = resolved_t0(w, mu, cfg);
    if (!(t0 < cfg.t_max)) throw ContourError("t0 must be below t_max");
    for (std::size_t v = 0; v < d; ++v)
        if (cfg.bent[v] && !(cfg.tail_abscissa < cfg.abscissae[v]))
            throw ContourError("tail abscissa must lie left of the base abscissa");
    for (const auto& f : forms) {
        const int var = single_variable(f);
        if (var >= 0 && cfg.bent[var]) {
            if (!(t0 > std::abs(f.shift.imag()) / std::abs(f.coef[var]) + 1))
                throw ContourError("t0 = " + std::to_string(t0) + " does not clear the pole ordinates");
            const double re = f.coef[var] * cfg.tail_abscissa + f.shift.real();
            if (std::abs(re - std::round(re)) < 1e-9)
                throw ContourError("tail abscissa sits on a pole abscissa");
        }
        // every choice of base or tail on the bent variables this form couples
        std::vector<std::size_t> vars;
        for (std::size_t v = 0; v < d; ++v)
            if (f.coef[v] != 0 && cfg.bent[v] && var < 0) vars.push_back(v);
        for (unsigned mask = 0; mask < (1u << vars.size()); ++mask) {
            double re = f.shift.real();
            for (std::size_t v = 0; v < d; ++v) re += f.coef[v] * cfg.abscissae[v];
            for (std::size_t b = 0; b < vars.size(); ++b)
                if (mask >> b & 1) re += f.coef[vars[b]] * (cfg.tail_abscissa - cfg.abscissae[vars[b]]);
            if (f.inverse ? !(re < 1) : !(re > 0))
                throw ContourError("contour for w" + w.name() + " crosses a pole of a " +
                                   (f.inverse ? "denominator" : "numerator") + " factor");
        }
    }
}

MBResult mb_eval(const WeylElement& w, const YPoint& y, const SpectralParams& p,
                 const ContourConfig& cfg, Exec exec) {
    p.validate();
    y.validate_for(w);
    const std::string name = w.name();
    if (name == "4") return {1.0, 0.0, 0, {}};
    if (name == "13" || name == "112") {
        const auto im = iota_transform(y, p, w);
        ContourConfig c = cfg;
        if (c.abscissae.empty()) c = ContourConfig::defaults(im.w);
        return mb_eval(im.w, im.y, im.params, c, exec);
    }
    // flipping y4 flips every a_i, which only multiplies by (-1)^Delta
    const double flip = (y.y4 < 0 && parity(p.delta_sum())) ? -1.0 : 1.0;
    validate_contour(w, p.mu, cfg);
    const double t0 = resolved_t0(w, p.mu, cfg);
    const cplx pre = flip * prefactor(name, p.delta_sum(), cfg.literal_prefactor);
    YPoint yy = y;
    yy.y4 = 1;

    long long used = 0;
    auto level = [&](double scale, cplx& value) {
        Lines lines;
        for (std::size_t v = 0; v < cfg.abscissae.size(); ++v)
            lines.push_back(contour_nodes(cfg.abscissae[v], cfg.bent[v], t0, cfg, scale));
        const Plan plan = make_plan(name, yy, p, lines);
        const PlanRun run = run_plan(plan, cfg.budget - used, exec);
        used += run.evaluations;
        value = pre * run.sum;
        return run.complete;
    };

    MBResult r;
    cplx coarse = 0, fine = 0;
    auto budget_fail = [&](cplx partial) {
        throw BudgetExceeded("Mellin-Barnes budget of " + std::to_string(cfg.budget) +
                                 " integrand evaluations exhausted",
                             partial.real(), partial.imag());
    };
    if (!level(1.0, fine)) budget_fail(fine);
    if (!level(2.0, coarse)) budget_fail(fine);
    r.trace.push_back({cfg.panel * 2, used, coarse, 0});
    double scale = 1.0;
    r.value = fine;
    r.error = std::abs(fine - coarse);
    r.trace.push_back({cfg.panel, used, fine, r.error});
    for (int k = 0; k < cfg.max_refinements && r.error > cfg.tol * std::abs(r.value); ++k) {
        scale /= 2;
        cplx next;
        if (!level(scale, next)) budget_fail(r.value);
        r.error = std::abs(next - r.value);
        r.value = next;
        r.trace.push_back({cfg.panel * scale, used, next, r.error});
    }
    r.evaluations = used;
    return r;
}

void dump_trace_csv(std::ostream& out, const MBResult& r) {
    out << "panel,evaluations,re,im,err\n";
    out.precision(17);
    for (const auto& t : r.trace)
        out << t.panel << "," << t.evaluations << "," << t.value.real() << "," << t.value.imag() << ","
            << t.error << "\n";
}

SeriesValue kernel_K(const WeylElement& w, const YPoint& y, const SpectralParams& p, int order) {
    p.validate();
    y.validate_for(w);
    const std::string name = w.name();
    if (name == "4") return {1.0, 0.0, false};
    if (name == "13" || name == "112") {
        const auto im = iota_transform(y, p, w);
        return kernel_K(im.w, im.y, im.params, order);
    }
    SeriesValue total{0.0, 0.0, false};
    for (const Perm& sigma : coset_reps(w)) {
        const SpectralParams q = weyl_action(p, sigma);
        const cplx c = c_w(q, w);
        const SeriesValue j = j_series(w, y, q, order);
        total.value += c * j.value;
        total.truncation += std::abs(c) * j.truncation;
        total.truncation_warning = total.truncation_warning || j.truncation_warning;
    }
    return total;
}

}  // namespace gl4
