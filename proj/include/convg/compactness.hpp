#pragma once

#include "convg/constructions.hpp"

namespace convg {

/// Compactness: every proper filter has a convergent refinement, i.e. every
/// nonempty A has a nonempty B ⊆ A with limits(B) ≠ ∅.
bool is_compact(const Preconvergence& space);

/// A family of subsets meant to witness convergence: every converging filter
/// must contain a member. The validated flag is set by validate_system only.
struct ConvergenceSystem {
    Preconvergence space;
    std::vector<PointSet> family;
    bool validated = false;
};

ConvergenceSystem make_system(const Preconvergence& space, std::vector<PointSet> family);

struct SystemCheck {
    bool valid = true;
    std::optional<std::uint32_t> witness_base;
    std::optional<int> witness_point;
};

/// True iff every converging base is contained in some family member.
SystemCheck is_convergence_system(const Preconvergence& space,
                                  const std::vector<PointSet>& family);

/// Runs the check and stamps the flag; returns the verdict.
bool validate_system(ConvergenceSystem& system);

/// Whether the family covers the carrier. Systems need not be covers unless
/// the space is centered; exposed as a separate query.
bool is_cover(const ConvergenceSystem& system);

/// Minimal-cardinality subfamily (indices, ascending) covering the carrier;
/// ties broken lexicographically on index sets. Requires a validated system.
/// On a compact space existence is guaranteed, so an exhausted search raises
/// a Falsification there; on non-compact spaces nullopt is a normal outcome.
std::optional<std::vector<int>> finite_subcover(const Preconvergence& space,
                                                const ConvergenceSystem& system);

struct CompactnessTheoremReport {
    bool compact = false;
    /// is_compact matched "every validated system has a finite subcover".
    bool agreement = false;
    long long families_checked = 0;
    long long validated_systems = 0;
    /// For non-compact spaces: the complement family of a non-converging
    /// ultrafilter, a validated system with no subcover.
    std::optional<std::vector<PointSet>> hat_system;
    std::optional<int> hat_point;
};

/// Checks the finite-subcover characterization of compactness against every
/// family of subsets. Requires isotone input and n ≤ 3.
CompactnessTheoremReport verify_compactness_theorem(const Preconvergence& space);

/// Pulls a validated system back along a continuous map; the result is again
/// a system (guaranteed), with empty members retained.
ConvergenceSystem preimage_system(const SpaceMap& f, const ConvergenceSystem& system);

/// For a continuous onto map out of a compact space, re-verifies that the
/// target is compact and returns the verdict (a false here is a falsification).
bool image_compact(const SpaceMap& f);

}  // namespace convg
