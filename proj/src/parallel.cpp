#include "grpd/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace grpd {

int worker_count() {
    int n = omp_get_max_threads();
    if (const char* cap = std::getenv("GRPD_CONV_THREADS")) {
        try {
            int c = std::stoi(cap);
            if (c > 0 && c < n) n = c;
        } catch (const std::exception&) {
            // Ignore unparsable values; the OpenMP default stands.
        }
    }
    return n;
}

void apply_thread_cap() { omp_set_num_threads(worker_count()); }

}  // namespace grpd
