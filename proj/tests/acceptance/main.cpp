#include "suite.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

// Usage: freenoise_acceptance [id ...]
int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        only.push_back(std::atoi(argv[i]));
    }
    std::size_t failed = 0;
    const auto results = freenoise::acceptance::run_suite(only, [&](const auto& r) {
        std::printf("%s\n", freenoise::acceptance::format_line(r).c_str());
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
    });
    std::printf("%zu/%zu criteria passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}
