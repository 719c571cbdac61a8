// Acceptance suite: every criterion of the verification battery, one line per
// criterion, nonzero exit on any failure. Run via ctest or directly.
#include <cstdio>

#include "gammalab/checks.hpp"

using namespace gammalab;

int main() {
    VerifyOptions opts;
    opts.seed = 1;
    opts.with_determinism = true;
    Report rep = run_verify(opts);

    int fails = 0;
    for (const CheckRecord& r : rep.records) {
        const char* verdict = nullptr;
        switch (r.status) {
            case Status::kPass: verdict = "PASS"; break;
            case Status::kFinding: verdict = "PASS (finding)"; break;
            case Status::kSkipped: verdict = "SKIP"; break;
            case Status::kFail: verdict = "FAIL"; ++fails; break;
        }
        std::printf("%-36s %-14s [%s] %.0f ms\n", r.name.c_str(), verdict,
                    r.anchor.c_str(), r.ms);
        if (r.status == Status::kFail)
            std::printf("    payload: %s\n", r.payload.dump().c_str());
    }
    std::printf("%d/%zu criteria green\n", static_cast<int>(rep.records.size()) - fails,
                rep.records.size());
    return fails ? 1 : 0;
}
