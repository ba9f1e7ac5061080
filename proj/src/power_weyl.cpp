#include "gl4bessel/power_weyl.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gl4bessel/errors.hpp"

namespace gl4 {

void SpectralParams::validate() const {
    const cplx s = mu[0] + mu[1] + mu[2] + mu[3];
    if (std::abs(s) > 1e-12) throw DomainError("spectral parameters: sum of mu must vanish");
    for (const auto& m : mu)
        if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
            throw DomainError("spectral parameters: non-finite mu");
}

bool SpectralParams::distinct(double tol) const {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (near_integer(mu[i] - mu[j], tol)) return false;
    return true;
}

WeylElement WeylElement::from_composition(std::vector<int> comp) {
    if (comp.empty() || std::accumulate(comp.begin(), comp.end(), 0) != 4 ||
        std::any_of(comp.begin(), comp.end(), [](int r) { return r <= 0; }))
        throw DomainError("weyl element: composition must sum to 4");
    WeylElement w;
    w.composition = comp;
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    int row = 0;
    for (std::size_t k = 0; k < comp.size(); ++k) {
        const int col = std::accumulate(comp.begin() + k + 1, comp.end(), 0);
        for (int i = 0; i < comp[k]; ++i) m(row + i, col + i) = 1;
        row += comp[k];
    }
    w.perm = perm_from_matrix(m);
    return w;
}

WeylElement WeylElement::from_name(const std::string& name) {
    std::string s = name;
    if (!s.empty() && (s[0] == 'w' || s[0] == 'W')) s = s.substr(1);
    std::vector<int> comp;
    for (char c : s) {
        if (c < '1' || c > '4') throw DomainError("weyl element: bad name '" + name + "'");
        comp.push_back(c - '0');
    }
    const auto w = from_composition(comp);
    const auto rel = relevant_weyl_list();
    if (std::find(rel.begin(), rel.end(), w) == rel.end())
        throw DomainError("weyl element: '" + name + "' is not relevant");
    return w;
}

std::string WeylElement::name() const {
    std::string s;
    for (int r : composition) s += static_cast<char>('0' + r);
    return s;
}

Eigen::Matrix4d WeylElement::matrix() const { return perm_matrix(perm); }

std::vector<WeylElement> relevant_weyl_list() {
    std::vector<WeylElement> out;
    for (auto c : std::vector<std::vector<int>>{
             {4}, {1, 3}, {3, 1}, {2, 2}, {1, 1, 2}, {1, 2, 1}, {2, 1, 1}, {1, 1, 1, 1}})
        out.push_back(WeylElement::from_composition(c));
    return out;
}

std::array<double, 4> YPoint::diagonal() const {
    const double y4d = y4;
    return {y[0] * y[1] * y[2] * y4d, y[1] * y[2] * y4d, y[2] * y4d, y4d};
}

std::vector<int> free_coordinates(const WeylElement& w) {
    // y_i is free iff position i (1-based) is a block boundary of the composition
    std::vector<int> out;
    int pos = 0;
    for (std::size_t k = 0; k + 1 < w.composition.size(); ++k) {
        pos += w.composition[k];
        out.push_back(pos - 1);
    }
    return out;
}

void YPoint::validate_for(const WeylElement& w) const {
    if (y4 != 1 && y4 != -1) throw DomainError("y4 must be +1 or -1");
    const auto fr = free_coordinates(w);
    for (int i = 0; i < 3; ++i) {
        const bool is_free = std::find(fr.begin(), fr.end(), i) != fr.end();
        if (!std::isfinite(y[i])) throw DomainError("y: non-finite coordinate");
        if (is_free && y[i] == 0) throw DomainError("y: free coordinate is zero");
        if (!is_free && y[i] != 1.0)
            throw DomainError("y: coordinate y" + std::to_string(i + 1) + " must be 1 for w" +
                              w.name());
    }
}

cplx chi(cplx s, int ell, double a) {
    if (a == 0) throw DomainError("chi: a = 0");
    const double sg = (a < 0 && parity(ell)) ? -1.0 : 1.0;
    return sg * std::exp(s * std::log(std::abs(a)));
}

cplx power_I(const SpectralParams& p, std::span<const double> a, PowerVariant variant) {
    const auto& mu = p.mu;
    const auto& d = p.delta;
    switch (variant) {
        case PowerVariant::standard:
        case PowerVariant::unnormalized: {
            if (a.size() != 4) throw DomainError("power_I: need 4 diagonal entries");
            const bool shift = variant == PowerVariant::standard;
            cplx r = 1.0;
            for (int i = 0; i < 4; ++i) r *= chi(mu[i] + (shift ? kRho[i] : 0.0), d[i], a[i]);
            return r;
        }
        case PowerVariant::tilde: {
            if (a.size() != 3) throw DomainError("power_I: tilde form takes 3 arguments");
            cplx r = 1.0;
            for (int i = 0; i < 3; ++i) r *= chi(-1.0 + mu[i + 1] - mu[i], d[i] + d[i + 1], a[i]);
            return r;
        }
        case PowerVariant::iota_dual: {
            if (a.size() != 3) throw DomainError("power_I: iota-dual form takes y1, y2, y3");
            return chi(1.5 - mu[3], d[3], a[0]) * chi(2.0 - mu[2] - mu[3], d[2] + d[3], a[1]) *
                   chi(1.5 - mu[1] - mu[2] - mu[3], d[1] + d[2] + d[3], a[2]);
        }
    }
    return 0.0;
}

Perm perm_identity() { return {0, 1, 2, 3}; }

Perm perm_compose(const Perm& a, const Perm& b) { return {a[b[0]], a[b[1]], a[b[2]], a[b[3]]}; }

Perm perm_inverse(const Perm& a) {
    Perm r{};
    for (int i = 0; i < 4; ++i) r[a[i]] = i;
    return r;
}

Perm perm_from_cycles(const std::string& cycles) {
    Perm p = perm_identity();
    std::size_t pos = 0;
    // rightmost cycle acts first
    std::vector<std::vector<int>> cs;
    while ((pos = cycles.find('(', pos)) != std::string::npos) {
        const auto end = cycles.find(')', pos);
        if (end == std::string::npos) throw DomainError("cycle notation: missing ')'");
        std::istringstream in(cycles.substr(pos + 1, end - pos - 1));
        std::vector<int> c;
        int v;
        while (in >> v) {
            if (v < 1 || v > 4) throw DomainError("cycle notation: index out of range");
            c.push_back(v - 1);
        }
        cs.push_back(c);
        pos = end + 1;
    }
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        Perm c = perm_identity();
        for (std::size_t k = 0; k < it->size(); ++k) c[(*it)[k]] = (*it)[(k + 1) % it->size()];
        p = perm_compose(c, p);
    }
    return p;
}

Perm perm_from_matrix(const Eigen::Matrix4d& m) {
    Perm p{};
    for (int i = 0; i < 4; ++i) {
        int row = -1;
        for (int r = 0; r < 4; ++r)
            if (m(r, i) == 1) row = r;
        if (row < 0) throw DomainError("not a permutation matrix");
        p[i] = row;
    }
    return p;
}

Eigen::Matrix4d perm_matrix(const Perm& p) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i) m(p[i], i) = 1;
    return m;
}

SpectralParams weyl_action(const SpectralParams& p, const Perm& w) {
    return {permute(p.mu, w), permute(p.delta, w)};
}

std::vector<Perm> weyl_subgroup(const WeylElement& w) {
    // permutations preserving the blocks of the composition
    std::vector<int> block(4);
    int pos = 0, b = 0;
    for (int r : w.composition) {
        for (int i = 0; i < r; ++i) block[pos++] = b;
        ++b;
    }
    std::vector<Perm> out;
    Perm p = perm_identity();
    do {
        bool ok = true;
        for (int i = 0; i < 4; ++i) ok = ok && block[p[i]] == block[i];
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Perm> coset_reps(const WeylElement& w) {
    if (w.name() == "22") {
        return {perm_identity(), perm_from_cycles("(1 3)"), perm_from_cycles("(2 3)"),
                perm_from_cycles("(1 4)"), perm_from_cycles("(2 4)"),
                perm_from_cycles("(1 3)(2 4)")};
    }
    const auto sub = weyl_subgroup(w);
    std::set<std::set<Perm>> seen;
    std::vector<Perm> out;
    Perm p = perm_identity();
    do {
        std::set<Perm> key;
        for (const auto& q : sub) key.insert(perm_compose(p, q));
        if (seen.insert(key).second) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<IndexPair> s_set(const WeylElement& w) {
    const std::string n = w.name();
    if (n == "31") return {{1, 4}, {2, 4}, {3, 4}};
    if (n == "22") return {{1, 3}, {2, 3}, {1, 4}, {2, 4}};
    if (n == "121") return {{1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}};
    if (n == "211") return {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    if (n == "1111") return {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    return inversion_pairs(w);
}

std::vector<IndexPair> inversion_pairs(const WeylElement& w) {
    // inversions of sigma, read through conjugation by w_l
    std::vector<IndexPair> out;
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k)
            if (w.perm[j] > w.perm[k]) out.push_back({4 - k, 4 - j});
    std::sort(out.begin(), out.end());
    return out;
}

cplx lambda_w(const Mu& mu, const WeylElement& w) {
    cplx r = 1.0;
    for (auto [j, k] : s_set(w)) {
        const cplx d = mu[j - 1] - mu[k - 1];
        r *= std::exp(-d * std::log(2 * kPi)) * gamma_c(1.0 + d);
    }
    return r;
}

cplx c_w(const SpectralParams& p, const WeylElement& w) {
    cplx r = 1.0;
    for (auto [j, k] : s_set(w)) {
        const int dj = p.delta[j - 1], dk = p.delta[k - 1];
        const cplx rv = r_eta(dj + dk, 1.0 + p.mu[j - 1] - p.mu[k - 1]);
        if (std::abs(rv) < kPoleTol)
            throw PoleError("C_w: factor R(1+mu" + std::to_string(j) + "-mu" + std::to_string(k) +
                            ") vanishes");
        r *= (parity(dj) ? -1.0 : 1.0) * kPi / rv;
    }
    return r;
}

std::array<cplx, 4> lambda_eigen(const Mu& mu) {
    cplx s2 = 0, s4 = 0, e3 = 0;
    for (int i = 0; i < 4; ++i) {
        s2 += mu[i] * mu[i];
        s4 += mu[i] * mu[i] * mu[i] * mu[i];
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c) e3 += mu[a] * mu[b] * mu[c];
    return {0.0, 2.5 - s2 / 2.0, e3, 41.0 / 16.0 - s4 / 4.0};
}

WeylElement iota_weyl(const WeylElement& w) {
    return WeylElement::from_composition(
        std::vector<int>(w.composition.rbegin(), w.composition.rend()));
}

std::array<int, 4> v_tilde(const WeylElement& w) {
    // v w v w^{-1} is diagonal with entries v_i v_{sigma^{-1}(i)}
    const std::array<int, 4> v = {1, -1, 1, -1};
    const Perm inv = perm_inverse(w.perm);
    std::array<int, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = v[i] * v[inv[i]];
    return out;
}

IotaImage iota_transform(const YPoint& y, const SpectralParams& p, const WeylElement& w) {
    const auto a = y.diagonal();
    const auto vt = v_tilde(w);
    std::array<double, 4> b{};
    for (int i = 0; i < 4; ++i) b[i] = vt[i] / a[3 - i];
    const double scale = std::abs(b[3]);
    for (auto& x : b) x /= scale;
    IotaImage out;
    out.y.y = {b[0] / b[1], b[1] / b[2], b[2] / b[3]};
    out.y.y4 = b[3] > 0 ? 1 : -1;
    for (int i = 0; i < 4; ++i) {
        out.params.mu[i] = -p.mu[3 - i];
        out.params.delta[i] = p.delta[3 - i];
    }
    out.w = iota_weyl(w);
    return out;
}

SpectralParams sample_tempered(std::mt19937_64& rng, int delta_max) {
    std::uniform_real_distribution<double> u(-2, 2);
    std::uniform_int_distribution<int> d(0, delta_max);
    for (;;) {
        SpectralParams p;
        const double t1 = u(rng), t2 = u(rng), t3 = u(rng);
        p.mu = {cplx(0, t1), cplx(0, t2), cplx(0, t3), cplx(0, -t1 - t2 - t3)};
        for (auto& x : p.delta) x = d(rng);
        if (p.distinct(1e-3)) return p;
    }
}

}  // namespace gl4
