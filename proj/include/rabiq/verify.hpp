// rabiq/verify.hpp - built-in cross-validation suite
#pragma once

#include <rabiq/csv.hpp>

#include <string>
#include <vector>

namespace rabiq {

struct VerifyRow {
    std::string name;
    bool pass{false};
    double measured{0};  // the checked quantity (deterministic across thread counts)
    double bound{0};     // acceptance bound for measured
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    bool all_pass{true};
    Table table() const;  // columns: check, status, measured, bound
};

// Runs every analytic route against its independent counterpart (oracle,
// closed form, or alternative formulation). Results depend only on the
// numeric kernels, never on thread count or wall time.
VerifyReport run_verify();

} // namespace rabiq
