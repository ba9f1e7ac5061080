#include "gl4bessel/request.hpp"

#include <cstdio>

#include "gl4bessel/errors.hpp"
#include "json.hpp"

namespace gl4 {

namespace {

using nlohmann::json;

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw DomainError("complex numbers are [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

EvalRequest request_from(const json& j, const EvalOverrides& over) {
    if (!j.is_object()) throw DomainError("request must be a JSON object");
    for (const char* key : {"weyl", "mu"})
        if (!j.contains(key)) throw DomainError(std::string("request: missing '") + key + "'");
    EvalRequest r;
    try {
        const auto& wj = j["weyl"];
        r.w = WeylElement::from_name(wj.is_string() ? wj.get<std::string>() : std::to_string(wj.get<int>()));

        const auto& mj = j["mu"];
        if (!mj.is_array() || mj.size() != 4) throw DomainError("request: mu needs 4 entries");
        for (int i = 0; i < 4; ++i) r.params.mu[i] = complex_from(mj[i]);
        if (j.contains("delta")) {
            const auto d = j["delta"].get<std::vector<int>>();
            if (d.size() != 4) throw DomainError("request: delta needs 4 entries");
            for (int i = 0; i < 4; ++i) {
                if (d[i] != 0 && d[i] != 1) throw DomainError("request: delta entries are 0 or 1");
                r.params.delta[i] = d[i];
            }
        }
        r.params.validate();

        const auto fr = free_coordinates(r.w);
        const auto y = j.value("y", std::vector<double>{});
        if (y.size() == 3) {
            for (int i = 0; i < 3; ++i) r.y.y[i] = y[i];
        } else if (y.size() == fr.size()) {
            for (std::size_t k = 0; k < fr.size(); ++k) r.y.y[fr[k]] = y[k];
        } else {
            throw DomainError("request: y needs 3 entries or one per free coordinate (" +
                              std::to_string(fr.size()) + " for w" + r.w.name() + ")");
        }
        r.y.y4 = j.value("y4", 1);
        r.y.validate_for(r.w);

        if (j.contains("method")) r.method = method_from_name(j["method"].get<std::string>());
        r.order = j.value("order", 12);
        r.contour = j.contains("contour") ? contour_from_json(j["contour"].dump(), r.w) : ContourConfig::defaults(r.w);
    } catch (const json::exception& e) {
        throw DomainError(std::string("request: ") + e.what());
    }
    if (over.order) r.order = *over.order;
    if (over.tol) r.contour.tol = *over.tol;
    if (over.t0) r.contour.t0 = *over.t0;
    if (over.method) r.method = *over.method;
    if (r.order < 0 || r.order > 60) throw DomainError("order must be in 0..60");
    if (!(r.contour.tol > 0)) throw DomainError("tol must be positive");
    if (r.contour.t0 < 0) throw DomainError("t0 must be non-negative");
    return r;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("JSON: ") + e.what());
    }
}

}  // namespace

Method method_from_name(const std::string& name) {
    if (name == "series") return Method::series;
    if (name == "mellin-barnes" || name == "mb") return Method::mellin_barnes;
    if (name == "both") return Method::both;
    throw DomainError("unknown method '" + name + "'");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::mellin_barnes: return "mellin-barnes";
        case Method::both: return "both";
    }
    return "";
}

EvalRequest parse_eval_request(const std::string& text, const EvalOverrides& over) {
    return request_from(parse(text), over);
}

std::vector<EvalRequest> parse_eval_batch(const std::string& text, const EvalOverrides& over) {
    const json j = parse(text);
    const json& rows = j.is_object() && j.contains("requests") ? j["requests"] : j;
    if (!rows.is_array()) throw DomainError("batch must be an array of requests");
    std::vector<EvalRequest> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        try {
            out.push_back(request_from(rows[i], over));
        } catch (const DomainError& e) {
            throw DomainError("row " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

EvalResult evaluate_request(const EvalRequest& r, Exec exec) {
    EvalResult e;
    if (r.method != Method::mellin_barnes) e.series = kernel_K(r.w, r.y, r.params, r.order);
    if (r.method != Method::series) e.mb = mb_eval(r.w, r.y, r.params, r.contour, exec);
    if (e.series && e.mb) {
        const double m = std::max({std::abs(e.series->value), std::abs(e.mb->value), 1e-300});
        e.discrepancy = std::abs(e.series->value - e.mb->value) / m;
    }
    return e;
}

std::vector<EvalResult> evaluate_batch(const std::vector<EvalRequest>& rows, Exec exec) {
    std::vector<EvalResult> out(rows.size());
    parallel_for(rows.size(), exec, [&](std::size_t i) { out[i] = evaluate_request(rows[i], Exec::serial); });
    return out;
}

std::string eval_result_json(const EvalRequest& r, const EvalResult& e) {
    json mu = json::array();
    for (const auto& m : r.params.mu) mu.push_back(to_json(m));
    json out = {{"weyl", r.w.name()},
                {"y", r.y.y},
                {"y4", r.y.y4},
                {"mu", mu},
                {"delta", r.params.delta},
                {"method", method_name(r.method)}};
    if (e.series)
        out["series"] = {{"value", to_json(e.series->value)},
                         {"order", r.order},
                         {"truncation", e.series->truncation},
                         {"truncation_warning", e.series->truncation_warning}};
    if (e.mb)
        out["mellin_barnes"] = {{"value", to_json(e.mb->value)},
                                {"error", e.mb->error},
                                {"evaluations", e.mb->evaluations},
                                {"contour", json::parse(contour_to_json(r.contour))}};
    if (e.discrepancy) out["discrepancy"] = *e.discrepancy;
    return out.dump(2);
}

std::string table_header() {
    return "weyl,y1,y2,y3,y4,mu1_re,mu1_im,mu2_re,mu2_im,mu3_re,mu3_im,mu4_re,mu4_im,"
           "delta1,delta2,delta3,delta4,re,im,err";
}

std::string table_row(const EvalRequest& r, const EvalResult& e) {
    std::string s = r.w.name();
    for (double y : r.y.y) s += "," + g17(y);
    s += "," + std::to_string(r.y.y4);
    for (const auto& m : r.params.mu) s += "," + g17(m.real()) + "," + g17(m.imag());
    for (int d : r.params.delta) s += "," + std::to_string(d);
    cplx v;
    double err;
    if (e.mb) {
        v = e.mb->value;
        err = e.discrepancy ? std::max(e.mb->error, *e.discrepancy * std::abs(v)) : e.mb->error;
    } else {
        v = e.series->value;
        err = e.series->truncation;
    }
    return s + "," + g17(v.real()) + "," + g17(v.imag()) + "," + g17(err);
}

std::string error_json(const std::string& kind, const std::string& message) {
    return json{{"error", {{"kind", kind}, {"message", message}}}}.dump();
}

}  // namespace gl4
