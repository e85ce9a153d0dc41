#pragma once

#include "trisec/catalog.hpp"

namespace trisec {
namespace verify {

// A named verification scenario; the CLI `verify` subcommand and the
// acceptance suite both run these library drivers.
struct Outcome {
    std::string name;
    catalog::Report report;
    std::string summary; // stable key=value line
    double seconds = 0;

    bool ok() const { return report.ok(); }
};

std::vector<std::string> scenario_names();
Outcome run(const std::string& name);

} // namespace verify
} // namespace trisec
