#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsnsim {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double elapsed_s = 0.0;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool all_pass() const;
};

struct AcceptanceOptions {
    int workers = 1;
    // Reduced-trial smoke mode for development; never authoritative and
    // labeled as such in the output.
    bool quick = false;
};

/// Run the full verification suite and print one pass/fail line per
/// criterion to `log`.
AcceptanceReport run_acceptance(std::ostream& log,
                                const AcceptanceOptions& options = {});

} // namespace wsnsim
