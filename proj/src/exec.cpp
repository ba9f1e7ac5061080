#include "gl4bessel/exec.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace gl4 {

int thread_count() {
    if (const char* env = std::getenv("GL4_BESSEL_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (...) {
        }
    }
    return omp_get_max_threads();
}

}  // namespace gl4
