#include "gl4bessel/hypergeometric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "gl4bessel/errors.hpp"

namespace gl4 {

namespace {

constexpr double kTermTol = 1e-10;
constexpr int kMaxTerms = 10000;

// Non-positive integer index -M of z, or -1.
int neg_int_index(cplx z) {
    if (!near_integer(z, kTermTol)) return -1;
    const double r = std::round(z.real());
    return r <= 0 ? static_cast<int>(-r) : -1;
}

// Successive terms by ratio updates. In star/dagger mode a denominator
// at -M zeroes every term up to index M; the sequence restarts there.
class TermGen {
  public:
    explicit TermGen(const HypSpec& s) : spec_(s) {
        const bool regularized = s.mode != HypMode::plain;
        if (regularized)
            for (const auto& b : s.denominator) first_ = std::max(first_, neg_int_index(b) + 1);
        const cplx z = s.argument;
        cplx t = 1.0;
        for (int k = 0; k < first_; ++k) t *= z / double(k + 1);
        for (const auto& a : s.numerator) t *= pochhammer(a, first_);
        if (regularized) {
            for (const auto& b : s.denominator) t *= rgamma_c(b + double(first_));
            if (s.mode == HypMode::dagger)
                for (const auto& a : s.numerator)
                    if (neg_int_index(a) < 0) t *= gamma_c(a);
        }
        term_ = t;
    }
    cplx next() {
        if (k_ < first_) {
            ++k_;
            return 0.0;
        }
        const cplx t = term_;
        const double k = k_;
        cplx r = spec_.argument / (k + 1.0);
        for (const auto& a : spec_.numerator) r *= a + k;
        for (const auto& b : spec_.denominator) r /= b + k;
        term_ *= r;
        ++k_;
        return t;
    }

  private:
    const HypSpec& spec_;
    int first_ = 0;
    int k_ = 0;
    cplx term_;
};

HypResult sum_terminating(const HypSpec& s, int last) {
    TermGen g(s);
    cplx sum = 0;
    double mag = 0;
    for (int k = 0; k <= last; ++k) {
        const cplx t = g.next();
        sum += t;
        mag = std::max(mag, std::abs(t));
    }
    return {sum, 1e-16 * mag * (last + 1), last + 1};
}

// Partial sums at N0*2^j, extrapolated with the tail model
// S_N = S - N^{-sigma} (d0 + d1/N + ...).
HypResult sum_unit_argument(const HypSpec& s, cplx sigma) {
    const int n0 = 250;
    const int levels = 6;  // up to 8000 terms
    std::vector<double> ns;
    std::vector<cplx> partial;
    TermGen g(s);
    cplx sum = 0;
    int k = 0;
    for (int j = 0; j < levels; ++j) {
        const int target = n0 << j;
        for (; k < target; ++k) sum += g.next();
        ns.push_back(target);
        partial.push_back(sum);
    }
    auto extrapolate = [&](int count) {
        const int first = levels - count;
        Eigen::MatrixXcd A(count, count);
        Eigen::VectorXcd rhs(count);
        for (int r = 0; r < count; ++r) {
            const double n = ns[first + r];
            A(r, 0) = 1.0;
            for (int c = 1; c < count; ++c)
                A(r, c) = -std::exp(-(sigma + static_cast<double>(c - 1)) * std::log(n));
            rhs(r) = partial[first + r];
        }
        return cplx(A.fullPivLu().solve(rhs)(0));
    };
    const cplx best = extrapolate(levels);
    const cplx prev = extrapolate(levels - 1);
    return {best, std::abs(best - prev), k};
}

HypResult sum_geometric(const HypSpec& s) {
    TermGen g(s);
    cplx sum = 0;
    cplx prev = 0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const cplx t = g.next();
        sum += t;
        if (k > 4 && prev != 0.0) {
            const double ratio = std::abs(t / prev);
            if (ratio < 1) {
                const double tail = std::abs(t) * ratio / (1 - ratio);
                if (tail < 1e-16 * std::max(1e-300, std::abs(sum)) || tail < 1e-300)
                    return {sum, tail, k + 1};
            }
        }
        prev = t;
    }
    throw DivergenceError("pfq: no convergence within 10000 terms");
}

}  // namespace

bool HypSpec::terminating() const {
    return std::any_of(numerator.begin(), numerator.end(),
                       [](const cplx& a) { return neg_int_index(a) >= 0; });
}

bool HypSpec::saalschutzian() const {
    if (std::abs(argument - 1.0) > 1e-14) return false;
    cplx sa = 1.0, sb = 0.0;
    for (auto a : numerator) sa += a;
    for (auto b : denominator) sb += b;
    return std::abs(sa - sb) < 1e-10;
}

HypResult pfq_eval(const HypSpec& s) {
    int last = -1;
    for (const auto& a : s.numerator) {
        const int m = neg_int_index(a);
        if (m >= 0) last = last < 0 ? m : std::min(last, m);
    }
    if (s.mode == HypMode::plain) {
        for (const auto& b : s.denominator) {
            const int m = neg_int_index(b);
            if (m >= 0 && (last < 0 || m < last))
                throw PoleError("pfq: denominator parameter in -N0 before termination");
        }
    }
    if (last >= 0) return sum_terminating(s, last);

    const std::size_t p = s.numerator.size(), q = s.denominator.size();
    const double az = std::abs(s.argument);
    if (az < 1 - 1e-12 && p <= q + 1) return sum_geometric(s);
    if (p < q + 1) return sum_geometric(s);
    if (p == q + 1 && std::abs(az - 1) <= 1e-12) {
        cplx sigma = 0;
        for (auto b : s.denominator) sigma += b;
        for (auto a : s.numerator) sigma -= a;
        if (sigma.real() <= 0.05)
            throw DivergenceError("pfq: Re(sum b - sum a) too small at |z| = 1");
        if (std::abs(s.argument - 1.0) > 1e-12)
            throw DivergenceError("pfq: |z| = 1 supported only at z = 1");
        return sum_unit_argument(s, sigma);
    }
    throw DivergenceError("pfq: series diverges");
}

cplx hyp(std::vector<cplx> a, std::vector<cplx> b, cplx z, HypMode mode) {
    return pfq(HypSpec{std::move(a), std::move(b), z, mode});
}

Relation relation_from_name(const std::string& name) {
    static const std::pair<const char*, Relation> table[] = {
        {"gauss2f1", Relation::gauss_2f1},
        {"firstzero", Relation::first_zero},
        {"denom1", Relation::denom1},
        {"denom2", Relation::denom2},
        {"3f2recur1", Relation::recur1_3f2},
        {"3f2recur2", Relation::recur2_3f2},
        {"4f3genrel", Relation::genrel_4f3},
        {"wlrecur2", Relation::wl_recur2},
        {"wlrecur3", Relation::wl_recur3},
        {"wlrecur3-printed", Relation::wl_recur3_printed},
        {"normalizedgenrel", Relation::normalized_genrel},
    };
    for (const auto& [n, r] : table)
        if (name == n) return r;
    throw DomainError("unknown relation: " + name);
}

std::string relation_name(Relation r) {
    switch (r) {
        case Relation::gauss_2f1: return "gauss2f1";
        case Relation::first_zero: return "firstzero";
        case Relation::denom1: return "denom1";
        case Relation::denom2: return "denom2";
        case Relation::recur1_3f2: return "3f2recur1";
        case Relation::recur2_3f2: return "3f2recur2";
        case Relation::genrel_4f3: return "4f3genrel";
        case Relation::wl_recur2: return "wlrecur2";
        case Relation::wl_recur3: return "wlrecur3";
        case Relation::wl_recur3_printed: return "wlrecur3-printed";
        case Relation::normalized_genrel: return "normalizedgenrel";
    }
    return "?";
}

namespace {

double residual(std::initializer_list<cplx> terms) {
    cplx s = 0;
    double mag = 0;
    for (auto t : terms) {
        s += t;
        mag = std::max(mag, std::abs(t));
    }
    return mag == 0 ? 0 : std::abs(s) / mag;
}

double two_sided(cplx lhs, cplx rhs) {
    const double mag = std::max(std::abs(lhs), std::abs(rhs));
    return mag == 0 ? 0 : std::abs(lhs - rhs) / mag;
}

}  // namespace

// Slots per relation:
//   gauss2f1     a1 a2 b1
//   firstzero    a2 a3 b1 b2 z          (first numerator is 0)
//   denom1       a1..a4 = a b c d, e f, n in {-1,0,1,...}
//   denom2       a1..a3 = a b c, b1 b2 = d e, m n
//   3f2recur1/2  a1 a2 a3 b1 b2 (z = 1)
//   4f3genrel    a1..a4 b1..b3 z
//   wlrecur2/3   a1..a4 b1 b2; b3 is set from the balance condition
//   normalizedgenrel  a1..a4 b1..b3 z, dagger series
double verify_contiguous(Relation id, const RelationParams& p) {
    const auto F = [](std::vector<cplx> a, std::vector<cplx> b, cplx z = 1.0) {
        return hyp(std::move(a), std::move(b), z);
    };
    const cplx a1 = p.a1, a2 = p.a2, a3 = p.a3, a4 = p.a4, b1 = p.b1, b2 = p.b2;
    switch (id) {
        case Relation::gauss_2f1: {
            const cplx lhs = hyp({a1, a2}, {b1}, 1.0, HypMode::star);
            const cplx rhs = gamma_c(b1 - a1 - a2) * rgamma_c(b1 - a1) * rgamma_c(b1 - a2);
            return two_sided(lhs, rhs);
        }
        case Relation::first_zero:
            return two_sided(F({0.0, a2, a3}, {b1, b2}, p.z), 1.0);
        case Relation::denom1: {
            const cplx a = a1, b = a2, c = a3, d = a4;
            const double n = p.n;
            const cplx lhs = hyp({a, b, c, d}, {-n, p.e, p.f}, 1.0, HypMode::star);
            const int k = p.n + 1;
            const cplx rhs = pochhammer(a, k) * pochhammer(b, k) * pochhammer(c, k) *
                             pochhammer(d, k) *
                             hyp({1 + n + a, 1 + n + b, 1 + n + c, 1 + n + d},
                                 {2 + n, 1 + n + p.e, 1 + n + p.f}, 1.0, HypMode::star);
            return two_sided(lhs, rhs);
        }
        case Relation::denom2: {
            const double m = p.m, n = p.n;
            const cplx v = hyp({-m, a1, a2, a3}, {-m - n, b1, b2}, 1.0, HypMode::star);
            return std::abs(v);
        }
        case Relation::recur1_3f2:
            return residual(
                {(a3 - b1 + 1.0) * (a3 - b2 + 1.0) * F({a1, a2, a3}, {b1, b2}),
                 -(b1 * b2 + (a3 + 1.0) * (3.0 * a3 - 2.0 * b1 - 2.0 * b2 + 4.0) -
                   (a3 - a2 + 1.0) * (a3 - a1 + 1.0)) *
                     F({a1, a2, a3 + 1.0}, {b1, b2}),
                 (a3 + 1.0) * (a3 + a2 + a1 - b1 - b2 + 2.0) * F({a1, a2, a3 + 2.0}, {b1, b2})});
        case Relation::recur2_3f2:
            return residual({a1 * F({a1 + 1.0, a2, a3}, {b1, b2}),
                             -a2 * F({a1, a2 + 1.0, a3}, {b1, b2}),
                             (a2 - a1) * F({a1, a2, a3}, {b1, b2})});
        case Relation::genrel_4f3: {
            const cplx b3 = p.b3, z = p.z;
            return residual(
                {b1 * b2 *
                     (a3 * a4 * (b2 - a2) + b1 * (a3 * (a2 - a4) + a2 * (a4 - b2)) +
                      a1 * (a3 * a4 + (a2 - a3 - a4) * b2 + b1 * (-a2 + b2))) *
                     F({a1, a2, a3, a4}, {b1, b2, b3}, z),
                 a3 * a4 * (a1 - b1) * (a2 - b2) * (b1 - b2) *
                     F({a1, a2, 1.0 + a3, 1.0 + a4}, {1.0 + b1, 1.0 + b2, b3}, z),
                 -a2 * b1 * (b1 - a1) * (a3 - b2) * (b2 - a4) *
                     F({a1, 1.0 + a2, a3, a4}, {b1, 1.0 + b2, b3}, z),
                 -a1 * b2 * (a3 - b1) * (b1 - a4) * (a2 - b2) *
                     F({1.0 + a1, a2, a3, a4}, {1.0 + b1, b2, b3}, z)});
        }
        case Relation::wl_recur2: {
            const cplx b3 = 1.0 + a1 + a2 + a3 + a4 - b1 - b2;
            return residual(
                {b1 * b2 * (a1 * a3 + a1 * a4 - a1 * b1 + a2 * a3 + a2 * a4 - a2 * b2 - a3 * a4) *
                     F({a1, a2, a3, a4}, {b1, b2, b3}),
                 a3 * a4 * (a1 - b1) * (a2 - b2) *
                     F({a1, a2, 1.0 + a3, 1.0 + a4}, {1.0 + b1, 1.0 + b2, b3}),
                 -a2 * b1 * (a3 - b2) * (b2 - a4) * F({a1, 1.0 + a2, a3, a4}, {b1, 1.0 + b2, b3}),
                 -a1 * b2 * (a3 - b1) * (b1 - a4) *
                     F({1.0 + a1, a2, a3, a4}, {1.0 + b1, b2, b3})});
        }
        case Relation::wl_recur3:
        case Relation::wl_recur3_printed: {
            const cplx b3 = 1.0 + a1 + a2 + a3 + a4 - b1 - b2;
            const double mid = id == Relation::wl_recur3 ? -1.0 : 1.0;
            return residual(
                {b1 * b2 * (a1 * (a3 - b1) * (a4 - b1) - a2 * (a3 - b2) * (a4 - b2) - a1 * a2 * (b1 - b2)) *
                     F({a1, a2, a3, a4}, {b1, b2, b3}),
                 mid * a2 * b1 * (a1 - b2) * (a3 - b2) * (a4 - b2) *
                     F({a1, 1.0 + a2, a3, a4}, {b1, 1.0 + b2, b3}),
                 a1 * b2 * (a2 - b1) * (a3 - b1) * (a4 - b1) *
                     F({1.0 + a1, a2, a3, a4}, {1.0 + b1, b2, b3})});
        }
        case Relation::normalized_genrel: {
            const cplx b3 = p.b3, z = p.z;
            const auto c = [&](int m1, int m2, int m3) {
                return hyp({a1 - double(m1), a2 - double(m3), a3 - double(m2), a4 - double(m2)},
                           {b1 - double(m1 + m2), b2 - double(m2 + m3), b3}, z, HypMode::dagger);
            };
            return residual(
                {(a3 * a4 * (b2 - a2) + b1 * (a3 * (a2 - a4) + a2 * (a4 - b2)) +
                  a1 * (a3 * a4 + (a2 - a3 - a4) * b2 + b1 * (-a2 + b2))) *
                     c(0, 0, 0),
                 (a1 - b1) * (a2 - b2) * (b1 - b2) * c(0, -1, 0),
                 -(b1 - a1) * (a3 - b2) * (b2 - a4) * c(0, 0, -1),
                 -(a3 - b1) * (b1 - a4) * (a2 - b2) * c(-1, 0, 0)});
        }
    }
    return 0;
}

}  // namespace gl4
