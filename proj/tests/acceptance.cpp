// End-to-end acceptance suite.  Each criterion is a self-contained check with
// its tolerances pinned in code; the binary prints exactly one PASS/FAIL line
// per criterion and exits nonzero when any criterion fails.
//
// Usage: acceptance <path-to-gengeo-cli>

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace acceptance {

std::string cliPath;  // path to the gengeo command-line binary

struct Criterion {
    int number;
    std::string name;
    std::function<void()> run;
};

std::vector<Criterion>& registry() {
    static std::vector<Criterion> r;
    return r;
}

struct Register {
    Register(int number, std::string name, std::function<void()> run) {
        registry().push_back({number, std::move(name), std::move(run)});
    }
};

// Throw to fail the enclosing criterion with a readable message.
[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
}

} // namespace acceptance

// Criterion implementations (registered in numeric order below).
#include "acceptance_criteria.inc"

int main(int argc, char** argv) {
    if (argc > 1) acceptance::cliPath = argv[1];
    auto& crits = acceptance::registry();
    int failures = 0;
    for (auto& c : crits) {
        auto t0 = std::chrono::steady_clock::now();
        std::string message;
        bool ok = true;
        try {
            c.run();
        } catch (const std::exception& e) {
            ok = false;
            message = e.what();
        } catch (...) {
            ok = false;
            message = "unknown exception";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok) {
            std::printf("PASS  %2d  %-58s (%.2fs)\n", c.number, c.name.c_str(), secs);
        } else {
            ++failures;
            std::printf("FAIL  %2d  %-58s (%.2fs)\n          %s\n", c.number, c.name.c_str(),
                        secs, message.c_str());
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
