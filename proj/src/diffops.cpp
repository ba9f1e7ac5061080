#include "gl4bessel/diffops.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gl4bessel/errors.hpp"
#include "operators_data.hpp"

namespace gl4 {

namespace {

struct CoefParser {
    explicit CoefParser(std::string s) : text(std::move(s)) {}

    LambdaPoly parse() {
        LambdaPoly out;
        skip();
        bool first = true;
        while (pos < text.size()) {
            double sign = 1;
            if (text[pos] == '+' || text[pos] == '-') {
                sign = text[pos] == '-' ? -1 : 1;
                ++pos;
                skip();
            } else if (!first) {
                fail("expected + or -");
            }
            auto [c, e] = term();
            out[e] += sign * c;
            first = false;
            skip();
        }
        if (first) fail("empty coefficient");
        return out;
    }

  private:
    std::pair<cplx, std::array<int, 3>> term() {
        cplx c = 1.0;
        std::array<int, 3> e{0, 0, 0};
        for (;;) {
            skip();
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                double num = integer();
                skip();
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    skip();
                    num /= integer();
                }
                c *= num;
            } else {
                std::string id;
                while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos])))
                    id += text[pos++];
                int k = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    k = static_cast<int>(integer());
                }
                if (id == "pi") c *= std::pow(kPi, k);
                else if (id == "I") c *= i_pow(k);
                else if (id == "l2") e[0] += k;
                else if (id == "l3") e[1] += k;
                else if (id == "l4") e[2] += k;
                else fail("unknown symbol '" + id + "'");
            }
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            return {c, e};
        }
    }
    double integer() {
        skip();
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected a number");
        return std::stod(text.substr(start, pos - start));
    }
    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw DomainError("operator coefficient '" + text + "': " + why);
    }

    std::string text;
    std::size_t pos = 0;
};

cplx falling(cplx x, int k) {
    cplx out = 1.0;
    for (int j = 0; j < k; ++j) out *= x - double(j);
    return out;
}

}  // namespace

std::vector<int> EulerTerm::shift() const {
    std::vector<int> s(power.size());
    for (std::size_t i = 0; i < power.size(); ++i) s[i] = power[i] - derivative[i];
    return s;
}

std::string EulerOperator::render() const {
    std::ostringstream out;
    for (const auto& t : terms) {
        out << t.coef_text << " |";
        bool any = false;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (t.power[i] == 0) continue;
            out << " y" << vars[i];
            if (t.power[i] > 1) out << "^" << t.power[i];
            any = true;
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (t.derivative[i] == 0) continue;
            out << " d" << vars[i];
            if (t.derivative[i] > 1) out << "^" << t.derivative[i];
            any = true;
        }
        if (!any) out << " 1";
        out << "\n";
    }
    return out.str();
}

std::vector<EulerOperator> parse_operators(const std::string& text) {
    std::vector<EulerOperator> ops;
    std::istringstream in(text);
    std::string line;
    EulerOperator* cur = nullptr;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw DomainError("operators line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
        if (line.rfind("operator", 0) == 0) {
            std::istringstream hs(line.substr(8));
            EulerOperator op;
            hs >> op.name >> op.weyl;
            if (op.weyl.size() > 1 && op.weyl[0] == 'w') op.weyl = op.weyl.substr(1);
            int v;
            while (hs >> v) op.vars.push_back(v);
            if (op.name.empty() || op.vars.empty()) fail("bad operator header");
            ops.push_back(op);
            cur = &ops.back();
            continue;
        }
        if (line == "end") {
            cur = nullptr;
            continue;
        }
        if (!cur) fail("term outside an operator block");
        const auto bar = line.find('|');
        if (bar == std::string::npos) fail("missing '|'");
        EulerTerm t;
        t.coef_text = line.substr(0, bar);
        t.coef_text.erase(t.coef_text.find_last_not_of(" \t") + 1);
        t.coef = CoefParser(t.coef_text).parse();
        t.power.assign(cur->vars.size(), 0);
        t.derivative.assign(cur->vars.size(), 0);
        std::istringstream ms(line.substr(bar + 1));
        std::string f;
        while (ms >> f) {
            if (f == "1") continue;
            if (f.size() < 2 || (f[0] != 'y' && f[0] != 'd')) fail("bad monomial factor " + f);
            const int var = f[1] - '0';
            int e = 1;
            if (auto c = f.find('^'); c != std::string::npos) e = std::stoi(f.substr(c + 1));
            const auto it = std::find(cur->vars.begin(), cur->vars.end(), var);
            if (it == cur->vars.end()) fail("variable y" + std::to_string(var) + " not declared");
            auto& slot = f[0] == 'y' ? t.power : t.derivative;
            slot[it - cur->vars.begin()] += e;
        }
        for (int s : t.shift())
            if (s < 0) fail("derivative not matched by a y power");
        cur->terms.push_back(std::move(t));
    }
    if (cur) fail("unterminated operator block");
    return ops;
}

const std::vector<EulerOperator>& builtin_operators() {
    static const std::vector<EulerOperator> ops = parse_operators(detail::kOperatorsText);
    return ops;
}

std::vector<EulerOperator> operators_for(const WeylElement& w) {
    std::vector<EulerOperator> out;
    for (const auto& op : builtin_operators())
        if (op.weyl == w.name()) out.push_back(op);
    return out;
}

std::array<cplx, 3> operator_lambdas(const Mu& mu, bool literal) {
    const auto l = lambda_eigen(mu);
    return {l[1], l[2], literal ? l[3] : -l[3]};
}

cplx evaluate(const LambdaPoly& p, const std::array<cplx, 3>& l) {
    cplx r = 0;
    for (const auto& [e, c] : p) {
        cplx t = c;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < e[i]; ++k) t *= l[i];
        r += t;
    }
    return r;
}

namespace {

template <class Sink>
void for_each_contribution(const EulerOperator& op, const Lattice& in,
                           const std::vector<cplx>& alpha, const std::array<cplx, 3>& l,
                           int out_order, Sink&& sink) {
    const int d = static_cast<int>(op.vars.size());
    if (in.dim() != d || static_cast<int>(alpha.size()) != d)
        throw DomainError("apply_operator: dimension mismatch");
    if (in.order() < out_order)
        throw OrderError("apply_operator: input lattice order " + std::to_string(in.order()) +
                         " below requested " + std::to_string(out_order));
    std::vector<cplx> coefs;
    for (const auto& t : op.terms) coefs.push_back(evaluate(t.coef, l));
    Lattice shape(d, out_order);
    for (std::size_t f = 0; f < shape.size(); ++f) {
        const auto n = shape.point(f);
        for (std::size_t ti = 0; ti < op.terms.size(); ++ti) {
            const auto& t = op.terms[ti];
            const auto sh = t.shift();
            std::vector<int> m(d);
            bool inside = true;
            for (int i = 0; i < d; ++i) {
                m[i] = n[i] - sh[i];
                inside = inside && m[i] >= 0;
            }
            if (!inside) continue;
            cplx v = coefs[ti] * in.at(m);
            for (int i = 0; i < d; ++i) {
                v *= falling(alpha[i] + double(m[i]), t.derivative[i]);
            }
            sink(f, v);
        }
    }
}

}  // namespace

Lattice apply_operator(const EulerOperator& op, const Lattice& in, const std::vector<cplx>& alpha,
                       const std::array<cplx, 3>& l, int out_order) {
    Lattice out(static_cast<int>(op.vars.size()), out_order);
    for_each_contribution(op, in, alpha, l, out_order,
                          [&](std::size_t f, cplx v) { out[f] += v; });
    return out;
}

double apply_residual(const EulerOperator& op, const Lattice& in, const std::vector<cplx>& alpha,
                      const std::array<cplx, 3>& l, int out_order) {
    Lattice sum(static_cast<int>(op.vars.size()), out_order);
    std::vector<double> scale(sum.size(), 0.0);
    for_each_contribution(op, in, alpha, l, out_order, [&](std::size_t f, cplx v) {
        sum[f] += v;
        scale[f] += std::abs(v);
    });
    double worst = 0;
    for (std::size_t f = 0; f < sum.size(); ++f)
        if (scale[f] > 0) worst = std::max(worst, std::abs(sum[f]) / scale[f]);
    return worst;
}

cplx indicial_value(const EulerOperator& op, cplx alpha, const std::array<cplx, 3>& l) {
    if (op.vars.size() != 1) throw DomainError("indicial_value: one-variable operators only");
    cplx r = 0;
    for (const auto& t : op.terms) {
        if (t.shift()[0] != 0) continue;
        r += evaluate(t.coef, l) * falling(alpha, t.derivative[0]);
    }
    return r;
}

int theta_degree(const EulerOperator& op) {
    int d = 0;
    for (const auto& t : op.terms) {
        int s = 0;
        for (int q : t.derivative) s += q;
        d = std::max(d, s);
    }
    return d;
}

double annihilation_residual(const WeylElement& w, const Mu& mu, int order, bool literal_lambda4) {
    const auto ops = operators_for(w);
    if (ops.empty()) throw DomainError("no differential operators for w" + w.name());
    const Lattice c = coefficient_lattice(w, mu, order);
    const auto alpha = leading_exponents(w, mu);
    const auto l = operator_lambdas(mu, literal_lambda4);
    double worst = 0;
    for (const auto& op : ops) worst = std::max(worst, apply_residual(op, c, alpha, l, order));
    return worst;
}

}  // namespace gl4
