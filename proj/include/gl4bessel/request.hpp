#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gl4bessel/mellin_barnes.hpp"
#include "gl4bessel/power_weyl.hpp"

namespace gl4 {

enum class Method { series, mellin_barnes, both };

struct EvalRequest {
    WeylElement w;
    YPoint y;
    SpectralParams params;
    Method method = Method::series;
    int order = 12;
    ContourConfig contour;
};

// Flags given on the command line win over the request body.
struct EvalOverrides {
    std::optional<int> order;
    std::optional<double> tol;
    std::optional<double> t0;
    std::optional<Method> method;
};

Method method_from_name(const std::string& name);
std::string method_name(Method m);

// y may list y1..y3 or only the free coordinates of w; "y4" is the sign.
EvalRequest parse_eval_request(const std::string& json_text, const EvalOverrides& over = {});
std::vector<EvalRequest> parse_eval_batch(const std::string& json_text, const EvalOverrides& over = {});

struct EvalResult {
    std::optional<SeriesValue> series;
    std::optional<MBResult> mb;
    // Relative difference of the two values when both ran.
    std::optional<double> discrepancy;
};

EvalResult evaluate_request(const EvalRequest& r, Exec exec = Exec::parallel);
// Rows run concurrently under Exec::parallel, each with serial inner kernels.
std::vector<EvalResult> evaluate_batch(const std::vector<EvalRequest>& rows, Exec exec = Exec::parallel);
std::string eval_result_json(const EvalRequest& r, const EvalResult& e);

// Header and one row in the table layout.
std::string table_header();
std::string table_row(const EvalRequest& r, const EvalResult& e);

// {"error": {"kind": ..., "message": ...}}
std::string error_json(const std::string& kind, const std::string& message);

}  // namespace gl4
