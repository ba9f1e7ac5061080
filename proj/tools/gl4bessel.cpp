#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "gl4bessel/checks.hpp"
#include "gl4bessel/decompositions.hpp"
#include "gl4bessel/errors.hpp"
#include "gl4bessel/interchange.hpp"
#include "gl4bessel/request.hpp"
#include "json.hpp"

using namespace gl4;
using nlohmann::json;

namespace {

constexpr int kValidation = 2;
constexpr int kNumeric = 3;
constexpr int kCheckFailed = 1;

std::string read_source(const std::string& arg) {
    if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw DomainError("cannot read " + arg.substr(1));
        return {std::istreambuf_iterator<char>(in), {}};
    }
    return arg;
}

std::string read_file(const std::string& path) { return read_source("@" + path); }

json check_json(const CheckResult& c) {
    return {{"name", c.name},
            {"samples", c.samples},
            {"worst", c.worst},
            {"tolerance", c.tol},
            {"kind", c.at_least ? "at_least" : "at_most"},
            {"pass", c.pass()}};
}

json suite_json(const SuiteReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_json(c));
    return {{"suite", r.suite}, {"seed", r.seed}, {"seconds", r.seconds}, {"pass", r.pass()}, {"checks", checks}};
}

json dnf_json(const Dnf& d, const Phase& p) {
    json out = json::array();
    for (const auto& c : d) {
        json atoms = json::array();
        for (const auto& a : c) atoms.push_back(format_atom(a, p.names));
        out.push_back(atoms);
    }
    return out;
}

json subset_json(const std::vector<int>& s, const Phase& p) {
    json out = json::array();
    for (int i : s) out.push_back(i < static_cast<int>(p.names.size()) ? p.names[i] : "x" + std::to_string(i + 1));
    return out;
}

struct Options {
    Exec exec = Exec::parallel;
    EvalOverrides over;
    std::optional<int> order;
    std::optional<double> tol, t0;
    std::string method;
};

void apply_flags(Options& o) {
    o.over.order = o.order;
    o.over.tol = o.tol;
    o.over.t0 = o.t0;
    if (!o.method.empty()) o.over.method = method_from_name(o.method);
}

int cmd_eval(Options o, const std::string& request, const std::string& trace) {
    apply_flags(o);
    const EvalRequest r = parse_eval_request(read_source(request), o.over);
    const EvalResult e = evaluate_request(r, o.exec);
    std::cout << eval_result_json(r, e) << "\n";
    if (!trace.empty() && e.mb) {
        std::ofstream out(trace);
        if (!out) throw DomainError("cannot write " + trace);
        dump_trace_csv(out, *e.mb);
    }
    return 0;
}

int cmd_verify(const Options& o, const std::string& suite, unsigned seed, int samples) {
    std::vector<std::string> names;
    if (suite == "all") names = suite_names();
    else names = {suite};
    const auto known = suite_names();
    for (const auto& n : names)
        if (std::find(known.begin(), known.end(), n) == known.end())
            throw DomainError("unknown suite '" + n + "'");
    json out = json::array();
    bool ok = true;
    for (const auto& n : names) {
        const SuiteReport r = run_suite(n, seed, samples, o.exec);
        ok = ok && r.pass();
        out.push_back(suite_json(r));
    }
    std::cout << json{{"pass", ok}, {"suites", out}}.dump(2) << "\n";
    return ok ? 0 : kCheckFailed;
}

int cmd_decomp(const Options& o, std::vector<std::string> weyl, int samples, unsigned seed) {
    if (weyl.empty()) weyl = {"31", "22", "121", "211", "1111"};
    if (samples < 1) throw DomainError("samples must be positive");
    json out = json::array();
    bool ok = true;
    for (const auto& name : weyl) {
        const auto w = WeylElement::from_name(name);
        const DecompReport r = check_decompositions(w, samples, seed, o.exec);
        const bool pass = r.iwasawa <= 1e-11 && r.bruhat <= 1e-10 && r.determinant <= 1e-12;
        ok = ok && pass;
        out.push_back({{"weyl", w.name()},
                       {"samples", r.samples},
                       {"iwasawa_deviation", r.iwasawa},
                       {"bruhat_deviation", r.bruhat},
                       {"determinant_deviation", r.determinant},
                       {"pass", pass}});
    }
    std::cout << json{{"seed", seed}, {"pass", ok}, {"elements", out}}.dump(2) << "\n";
    return ok ? 0 : kCheckFailed;
}

int cmd_interchange(const Options& o, const std::string& weyl, const std::string& phase_file, bool as_json) {
    if (weyl.empty() == phase_file.empty()) throw DomainError("give exactly one of --weyl or --phase-file");
    const Phase phase = phase_file.empty() ? builtin_phase(weyl) : phase_from_json(read_file(phase_file));
    const InterchangeReport r = enumerate_cases(phase, o.exec);
    std::vector<Dnf> expected;
    if (!weyl.empty()) expected = expected_families(weyl);
    std::vector<int> match(r.families.size(), 0);
    for (std::size_t f = 0; f < r.families.size(); ++f)
        for (std::size_t k = 0; k < expected.size(); ++k)
            if (equivalent(r.families[f].expression, expected[k], phase.variables)) match[f] = static_cast<int>(k) + 1;

    if (!as_json) {
        std::cout << format_report(r, phase);
        if (!weyl.empty()) {
            std::cout << "reference families: " << expected.size() << "\n";
            for (std::size_t f = 0; f < r.families.size(); ++f)
                std::cout << "family " << f + 1 << ": "
                          << (match[f] ? "equivalent to reference family " + std::to_string(match[f])
                                       : std::string("no reference equivalent"))
                          << "\n";
        }
        return 0;
    }
    json cases = json::array(), fams = json::array();
    for (const auto& c : r.cases) cases.push_back({{"smalls", subset_json(c.smalls, phase)}, {"cases", dnf_json(c.cases, phase)}});
    for (std::size_t f = 0; f < r.families.size(); ++f) {
        json subsets = json::array();
        for (const auto& s : r.families[f].subsets) subsets.push_back(subset_json(s, phase));
        json fam = {{"subsets", subsets}, {"expression", dnf_json(r.families[f].expression, phase)}};
        if (!weyl.empty()) fam["reference_match"] = match[f] ? json(match[f]) : json(nullptr);
        fams.push_back(fam);
    }
    json out = {{"phase", json::parse(phase_to_json(phase))}, {"cases", cases}, {"families", fams}};
    if (!weyl.empty()) out["reference_families"] = expected.size();
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_table(Options o, const std::string& input, const std::string& output) {
    apply_flags(o);
    const auto rows = parse_eval_batch(read_source(input), o.over);
    const auto results = evaluate_batch(rows, o.exec);
    std::ofstream file;
    if (!output.empty() && output != "-") {
        file.open(output);
        if (!file) throw DomainError("cannot write " + output);
    }
    std::ostream& out = file.is_open() ? file : std::cout;
    out << table_header() << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) out << table_row(rows[i], results[i]) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GL(4) Bessel functions: evaluation, verification and the interchange prover"};
    app.require_subcommand(1);
    Options o;
    bool serial = false;
    app.add_flag("--serial", serial, "Run every kernel on one thread");

    auto numeric_flags = [&](CLI::App* c) {
        c->add_option("--order", o.order, "Series truncation order (default 12)");
        c->add_option("--tol", o.tol, "Mellin-Barnes tolerance (default 1e-6)");
        c->add_option("--t0", o.t0, "Mellin-Barnes vertical segment half-height (0: automatic)");
        c->add_option("--method", o.method, "series, mellin-barnes or both");
    };

    std::string request = "-", trace;
    auto* eval = app.add_subcommand("eval", "Evaluate K_w for one request");
    eval->add_option("request", request, "JSON text, @file or - for stdin");
    eval->add_option("--trace", trace, "CSV file for the Mellin-Barnes refinement trace");
    numeric_flags(eval);

    std::string suite = "all";
    unsigned seed = 1;
    int samples = 0;
    auto* verify = app.add_subcommand("verify", "Run identity suites");
    verify->add_option("suite", suite, "gamma, hyp, series, diffops, decomp or all");
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--samples", samples, "Samples per check (0: suite default)");

    std::vector<std::string> decomp_weyl;
    int decomp_samples = 1000;
    unsigned decomp_seed = 1;
    auto* decomp = app.add_subcommand("decomp", "Check the Iwasawa and Bruhat decompositions");
    decomp->add_option("--weyl", decomp_weyl, "Weyl elements (default: all non-trivial)");
    decomp->add_option("--samples", decomp_samples, "Samples per element");
    decomp->add_option("--seed", decomp_seed, "Random seed");

    std::string iweyl, phase_file;
    bool as_json = false;
    auto* inter = app.add_subcommand("interchange", "Run the interchange-of-integrals prover");
    inter->add_option("--weyl", iweyl, "Built-in phase: 22, 121, 211, 1111 or 41");
    inter->add_option("--phase-file", phase_file, "Custom phase as JSON");
    inter->add_flag("--json", as_json, "JSON output");

    std::string input = "-", output = "-";
    auto* table = app.add_subcommand("table", "Evaluate a batch of requests to CSV");
    table->add_option("input", input, "JSON array of requests, @file or - for stdin");
    table->add_option("-o,--output", output, "CSV file (default stdout)");
    numeric_flags(table);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_json("usage", e.what()) << "\n";
        return kValidation;
    }
    o.exec = serial ? Exec::serial : Exec::parallel;

    try {
        if (*eval) return cmd_eval(o, request, trace);
        if (*verify) return cmd_verify(o, suite, seed, samples);
        if (*decomp) return cmd_decomp(o, decomp_weyl, decomp_samples, decomp_seed);
        if (*inter) return cmd_interchange(o, iweyl, phase_file, as_json);
        if (*table) return cmd_table(o, input, output);
    } catch (const DomainError& e) {
        std::cout << error_json("validation", e.what()) << "\n";
        return kValidation;
    } catch (const BudgetExceeded& e) {
        std::cout << json{{"error",
                           {{"kind", "BudgetExceeded"},
                            {"message", e.what()},
                            {"partial", json::array({e.partial_re, e.partial_im})}}}}
                         .dump()
                  << "\n";
        return kNumeric;
    } catch (const NumericError& e) {
        std::cout << error_json("numeric", e.what()) << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cout << error_json("numeric", e.what()) << "\n";
        return kNumeric;
    }
    return kValidation;
}
