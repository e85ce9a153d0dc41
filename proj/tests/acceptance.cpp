// Acceptance suite: runs the named verification scenarios and checks each
// against its wall-clock limit.  Usage: trisec_acceptance [criterion...]
// (1-12); no arguments runs everything.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "trisec/verify.hpp"

namespace {

struct Criterion {
    int number;
    const char* scenario;
    double limit_seconds; // 0 = no wall-clock assertion
};

// The rigid-K search carries its own internal budget, so no outer limit.
const std::vector<Criterion> kCriteria = {
    {1, "five-points", 1.0},   {2, "moae", 5.0},
    {3, "moae-perturbed", 1.0}, {4, "convex-position", 60.0},
    {5, "collinear", 5.0},     {6, "oracle-equivalence", 180.0},
    {7, "diameter-2d", 120.0}, {8, "f-structure", 60.0},
    {9, "a0", 180.0},          {10, "prism", 1.0},
    {11, "schoenhardt", 1.0},  {12, "rigid-k", 0.0},
};

bool run_criterion(const Criterion& c, bool verbose) {
    trisec::verify::Outcome out;
    try {
        out = trisec::verify::run(c.scenario);
    } catch (const std::exception& e) {
        std::printf("[FAIL] criterion %2d %-18s error: %s\n", c.number, c.scenario, e.what());
        return false;
    }
    bool in_time = c.limit_seconds <= 0 || out.seconds < c.limit_seconds;
    bool pass = out.ok() && in_time;
    std::printf("[%s] criterion %2d %-18s %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", c.number,
                c.scenario, out.summary.c_str(), out.seconds,
                in_time ? "" : " OVER TIME LIMIT");
    if (!pass || verbose) {
        std::fputs(out.report.str().c_str(), stdout);
    }
    return pass;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "-v" || arg == "--verbose") {
            verbose = true;
            continue;
        }
        wanted.push_back(std::atoi(arg.c_str()));
    }
    bool all = true;
    for (const auto& c : kCriteria) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), c.number) == wanted.end())
            continue;
        if (!run_criterion(c, verbose)) all = false;
    }
    return all ? 0 : 1;
}
