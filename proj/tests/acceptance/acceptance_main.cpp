// Runs the acceptance criteria and prints one pass/fail line per criterion.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "halfspace/acceptance.hpp"

#ifndef HALFSPACE_CLI_PATH
#error "HALFSPACE_CLI_PATH must point at the CLI executable"
#endif

namespace {

bool capture(const std::string& cmd, std::string& out) {
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return false;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int status = pclose(p);
    return WIFEXITED(status);
}

}  // namespace

int main() {
    halfspace::AcceptanceOptions opts;
    int failed = 0;
    for (int id = 1; id <= halfspace::kInProcessCriteria; ++id) {
        const auto t0 = std::chrono::steady_clock::now();
        const halfspace::CriterionResult r = halfspace::run_criterion(id, opts);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = r.budget_seconds <= 0.0 || secs < r.budget_seconds;
        const bool ok = r.passed && in_time;
        if (!ok) ++failed;
        for (const std::string& line : r.lines) std::cout << "    " << line << '\n';
        std::printf("[%s] %d %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", id, r.title.c_str(), secs,
                    r.budget_seconds);
    }

    const std::string cmd = std::string(HALFSPACE_CLI_PATH) + " verify-all --threads 1 2>/dev/null";
    std::string first, second;
    const bool ran = capture(cmd, first) && capture(cmd, second);
    const bool same = ran && !first.empty() && first == second;
    if (!same) ++failed;
    std::printf("[%s] 10 verify-all --threads 1 reruns are byte-identical (%zu bytes)\n", same ? "PASS" : "FAIL",
                first.size());
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
