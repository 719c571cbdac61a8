#pragma once

#include <cstdint>
#include <vector>

#include "gammalab/report.hpp"

namespace gammalab {

// The named verification battery. Each check pins its own instance(s) and
// tolerances; all comparisons are exact. Names sort in execution-independent
// order; anchors name the structural statement a check instantiates.

CheckRecord check_gamma_profile_pattern();        // c01
CheckRecord check_oracle_agreement();             // c02
CheckRecord check_rewrite_soundness(std::uint64_t seed);          // c03
CheckRecord check_ideal_membership_criterion(std::uint64_t seed); // c04
CheckRecord check_submodule_closure();            // c05
CheckRecord check_cyclic_generation();            // c06
CheckRecord check_cofinality_step(std::uint64_t seed);            // c07
CheckRecord check_endomorphism_rigidity();        // c08
CheckRecord check_non_regularity();               // c09
CheckRecord check_non_distributivity();           // c10
CheckRecord check_ideal_chain(std::uint64_t seed);                // c11
CheckRecord check_ideal_noncomplement_step(std::uint64_t seed);   // c12
CheckRecord check_irredundant_independence();     // x01 (informational)

struct VerifyOptions {
    std::uint64_t seed = 1;
    bool with_determinism = true;       // criterion 13 re-runs the battery
    std::vector<Instance> extras;       // optional sweep: structural checks per instance
};

// The full battery, one record per criterion, sorted by name.
Report run_verify(const VerifyOptions& opts);

// Structural checks for one extra sweep instance (closure, profile pattern,
// chain witnesses); used by `verify` when extra instances are requested.
std::vector<CheckRecord> sweep_instance_checks(const Instance& inst);

}  // namespace gammalab
