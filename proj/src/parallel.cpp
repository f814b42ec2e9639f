#include "kpuf/parallel.hpp"

#include <cstdlib>
#include <string>

namespace kpuf {

int effective_threads() {
    int n = omp_get_max_threads();
    if (const char* cap = std::getenv("KPUF_THREADS")) {
        try {
            const int limit = std::stoi(cap);
            if (limit >= 1 && limit < n)
                n = limit;
        } catch (...) {
            // ignore unparsable values; the OpenMP default stands
        }
    }
    return n;
}

} // namespace kpuf
