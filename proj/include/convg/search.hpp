#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convg/compactness.hpp"
#include "convg/function_space.hpp"

namespace convg {

/// Counter-based deterministic generator (splitmix64). No global state: a
/// stream is fully determined by (seed, counter), so runs replay anywhere.
struct Rng {
    std::uint64_t state;

    static std::uint64_t mix(std::uint64_t z);
    static Rng stream(std::uint64_t seed, std::uint64_t counter);

    std::uint64_t next();
    /// Uniform value in [0, bound).
    std::uint64_t below(std::uint64_t bound);
};

/// Default labels a, b, c, ... (p0, p1, ... past 26) for generated spaces.
CarrierRef generated_carrier(int n);

/// Streams every limit table on n points in deterministic odometer order
/// (entry for base {a} varies fastest), filtered by the requested axioms.
/// Unconstrained enumeration visits (2^n)^(2^n - 1) tables, so n ≤ 3.
class SpaceEnumerator {
public:
    SpaceEnumerator(int n, std::vector<Axiom> constraints);

    std::optional<Preconvergence> next();
    /// Raw tables visited so far, including ones the constraints rejected.
    std::uint64_t inspected() const { return inspected_; }

private:
    bool advance();
    CarrierRef carrier_;
    std::vector<Axiom> constraints_;
    std::vector<std::uint32_t> table_;
    bool started_ = false;
    bool done_ = false;
    std::uint64_t inspected_ = 0;
};

/// Deterministic random table for a seed. Constraints are enforced by
/// closure, not rejection: centered adds x to limits({x}); isotone closes
/// limit sets downward over subsets; stable closes under finite unions,
/// which on a convergence is exactly the limit modification.
Preconvergence random_space(int n, std::uint64_t seed, const std::vector<Axiom>& constraints);
/// Same, drawing from an existing stream.
Preconvergence random_space_stream(int n, Rng& rng, const std::vector<Axiom>& constraints);

struct SearchSpec {
    int max_points = 3;
    std::vector<Axiom> constraints;  // extra flags required of generated spaces
    std::string property;            // stability | quotient-limit | pasting-closed | pasting-stability
    std::uint64_t seed = 0;
    std::uint64_t budget = 10000;
};

/// A reproducible counterexample: the offending spaces plus the data that
/// violates the property. Replaying re-evaluates the predicate on the stored
/// objects and must reproduce the same violation.
struct Witness {
    std::string property;
    std::uint64_t seed = 0;
    std::uint64_t counter = 0;
    std::vector<std::pair<std::string, Preconvergence>> spaces;
    std::vector<std::uint32_t> cover;      // pasting: the two pieces
    std::vector<int> map_graph;            // pasting: the glued map
    std::vector<std::uint32_t> partition;  // quotient: class masks
    AxiomWitness axiom_witness;            // stability / quotient failures
    std::string failed_axiom;              // quotient: which axiom broke
    std::optional<ContinuityWitness> continuity_witness;  // pasting
    std::string detail;
};

/// Stability failure (A, B) of a table, if any.
std::optional<AxiomWitness> eval_nonstable(const Preconvergence& space);

struct QuotientViolation {
    std::string failed_axiom;
    AxiomWitness witness;
};
/// Whether the quotient of `space` by `classes` fails one of the limit-space
/// axioms. `space` itself is expected to be a limit space.
std::optional<QuotientViolation> eval_quotient_limit(const Preconvergence& space,
                                                     const std::vector<PointSet>& classes);

enum class PastingMode { NeedsClosed, NeedsStability };

struct PastingViolation {
    std::uint32_t cover_a = 0;
    std::uint32_t cover_b = 0;
    std::vector<int> map_graph;
    ContinuityWitness continuity_witness;
};

/// Searches one (X, Y) pair for a discontinuous glue of continuous pieces.
/// NeedsClosed: X, Y limit spaces, covers with at least one non-closed piece.
/// NeedsStability: X, Y centered and isotone with stability failing on at
/// least one side, covers with both pieces closed.
std::optional<PastingViolation> eval_pasting(const Preconvergence& x, const Preconvergence& y,
                                             PastingMode mode);

/// All set partitions of {0..n-1} as class masks, deterministic order.
std::vector<std::vector<std::uint32_t>> all_partitions(int n);

std::optional<Witness> search_counterexample(const SearchSpec& spec);

/// Re-evaluates the witness; true iff the stored violation reproduces exactly.
bool replay_witness(const Witness& w);

/// Canonical JSON for reports and bit-stability checks.
std::string witness_to_json(const Witness& w);

}  // namespace convg
