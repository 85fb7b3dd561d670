// Acceptance suite: runs every end-to-end criterion and reports one line each.
// Exit status is nonzero if any criterion fails.

#include "geamkit/selftest.hpp"

#include <cstdio>

int main() {
    const auto results = geamkit::selftest::run_all(/*verbose=*/true);
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    if (failed) {
        std::printf("%d criterion(s) failed\n", failed);
        return 1;
    }
    std::printf("all %zu criteria passed\n", results.size());
    return 0;
}
