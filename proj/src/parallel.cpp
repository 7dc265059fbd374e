#include "freenoise/parallel.hpp"

#include <cstdlib>
#include <string>

namespace freenoise {

unsigned thread_count() {
    if (const char* env = std::getenv("FREENOISE_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) {
                return static_cast<unsigned>(n);
            }
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace freenoise
