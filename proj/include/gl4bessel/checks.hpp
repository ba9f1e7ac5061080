#pragma once

#include <string>
#include <vector>

#include "gl4bessel/exec.hpp"

namespace gl4 {

struct CheckResult {
    std::string name;
    int samples = 0;
    double worst = 0;       // largest residual seen
    double tol = 0;
    bool at_least = false;  // negative control: worst must reach tol
    bool pass() const { return at_least ? worst >= tol : worst <= tol; }
};

struct SuiteReport {
    std::string suite;
    unsigned seed = 0;
    std::vector<CheckResult> checks;
    double seconds = 0;
    bool pass() const;
};

std::vector<std::string> suite_names();  // gamma hyp series diffops decomp
// samples <= 0 picks the suite default.
SuiteReport run_suite(const std::string& suite, unsigned seed, int samples, Exec exec = Exec::parallel);

}  // namespace gl4
