// Runs every acceptance criterion and prints one line per criterion.

#include "pulseshare/acceptance.hpp"
#include "pulseshare/sweep.hpp"

#include <iostream>

int main() {
    pulseshare::AcceptanceOptions options;
    options.workers = pulseshare::default_worker_count();
    int failed = 0;
    for (const auto& r : pulseshare::run_acceptance(options)) {
        std::cout << pulseshare::format_result_line(r) << '\n';
        failed += !r.passed;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
