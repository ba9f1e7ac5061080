#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gl4bessel/exec.hpp"
#include "gl4bessel/series.hpp"

namespace gl4 {

// Contour for an iterated Mellin-Barnes integral. Each variable runs up its
// base abscissa for |Im s| <= t0; bent variables continue on the tail
// abscissa beyond that, joined by horizontal connectors.
struct ContourConfig {
    std::vector<double> abscissae;
    std::vector<bool> bent;
    double t0 = 0;  // 0 picks max pole ordinate + 2, at least 10
    double tail_abscissa = -0.95;
    double t_max = 400;
    double panel = 1.0;
    double growth = 1.15;
    double max_panel = 8.0;
    int gauss_points = 24;
    double tol = 1e-6;
    int max_refinements = 2;
    long long budget = 10'000'000;
    // Use the printed 1/4 in front of the one-variable integrals.
    bool literal_prefactor = false;

    static ContourConfig defaults(const WeylElement& w);
};

// Overrides the defaults of w with the keys present in a JSON object.
ContourConfig contour_from_json(const std::string& text, const WeylElement& w);
std::string contour_to_json(const ContourConfig& cfg);

struct ContourNodes {
    std::vector<cplx> s;
    std::vector<cplx> weight;  // includes 1/(2 pi i)
};

// Nodes for one variable; density_scale multiplies every panel width.
ContourNodes contour_nodes(double abscissa, bool bent, double t0, const ContourConfig& cfg,
                           double density_scale = 1.0);

// Effective bend height for (w, mu) under cfg.
double resolved_t0(const WeylElement& w, const Mu& mu, const ContourConfig& cfg);
// Throws ContourError if the contour would cross or touch a pole.
void validate_contour(const WeylElement& w, const Mu& mu, const ContourConfig& cfg);

struct MBTrace {
    double panel;
    long long evaluations;
    cplx value;
    double error;
};

struct MBResult {
    cplx value;
    double error;
    long long evaluations;
    std::vector<MBTrace> trace;
};

// Evaluates K_w(y, mu, delta) from its Mellin-Barnes integral. The estimate
// compares against a re-evaluation at half the node density and refines
// until error <= tol |value|. BudgetExceeded carries the partial value.
MBResult mb_eval(const WeylElement& w, const YPoint& y, const SpectralParams& p,
                 const ContourConfig& cfg, Exec exec = Exec::parallel);
void dump_trace_csv(std::ostream& out, const MBResult& r);

// K_w as the coset sum of C_w J_w over W / W_w. The elements 13 and 112
// go through the iota duality.
SeriesValue kernel_K(const WeylElement& w, const YPoint& y, const SpectralParams& p, int order);

}  // namespace gl4
