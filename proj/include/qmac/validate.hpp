#pragma once

#include <string>
#include <vector>

namespace qmac {

struct ValidationCheck {
    std::string name;
    bool passed = false;
    double measured = 0.0;   // worst observed deviation
    double threshold = 0.0;  // pass when measured <= threshold
    std::string detail;
};

/// Cross-validation suite: circuit engine vs closed forms, Gaussian
/// statistics vs the truncated-Fock oracle, formula reductions, and the
/// region containment chain.  `fast` skips the Fock-oracle comparisons.
std::vector<ValidationCheck> run_validation(bool fast);

bool all_passed(const std::vector<ValidationCheck>& checks);

}  // namespace qmac
