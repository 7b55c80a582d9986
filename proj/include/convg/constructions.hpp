#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convg/preconvergence.hpp"

namespace convg {

/// A map between preconvergence spaces, with a cached continuity verdict.
class SpaceMap {
public:
    SpaceMap(Preconvergence source, Preconvergence target, std::vector<int> graph);

    static SpaceMap identity(const Preconvergence& space);
    static SpaceMap constant(const Preconvergence& source, const Preconvergence& target, int value);

    const Preconvergence& source() const { return source_; }
    const Preconvergence& target() const { return target_; }
    const std::vector<int>& graph() const { return graph_; }
    int apply(int point) const { return graph_.at(static_cast<size_t>(point)); }
    std::uint32_t image_bits(std::uint32_t bits) const;
    bool is_onto() const;
    PointMap point_map() const;

    /// Cached tri-state continuity: unknown until first queried.
    bool continuous() const;

private:
    Preconvergence source_;
    Preconvergence target_;
    std::vector<int> graph_;
    mutable std::optional<bool> continuity_;
};

struct ContinuityWitness {
    std::uint32_t base = 0;
    int point = 0;
};

struct ContinuityCheck {
    bool continuous = true;
    std::optional<ContinuityWitness> witness;
};

/// f is continuous iff f(x) ∈ limits(f[A]) whenever x ∈ limits(A).
ContinuityCheck is_continuous(const SpaceMap& f);
bool is_continuous_at(const SpaceMap& f, int point);

SpaceMap compose(const SpaceMap& g, const SpaceMap& f);  // g ∘ f

/// One leg of an initial construction: a map out of the common source.
struct InitialLeg {
    std::vector<int> graph;
    Preconvergence target;
};

/// One leg of a final construction: a map into the common target.
struct FinalLeg {
    std::vector<int> graph;
    Preconvergence source;
};

/// Coarsest preconvergence on `carrier` making every leg continuous:
/// ↑A → x iff f_i[↑A] → f_i(x) for all i. Empty family gives chaotic.
Preconvergence initial(const std::vector<InitialLeg>& legs, const CarrierRef& carrier);

/// Finest preconvergence on `carrier` making every leg continuous:
/// ↑A → y iff some leg pushes a converging filter onto ↑A exactly.
/// Empty family gives the empty preconvergence.
Preconvergence final(const std::vector<FinalLeg>& legs, const CarrierRef& carrier);

/// The subspace structure on a nonempty S ⊆ X, carried by the sub-labels.
Preconvergence subspace(const Preconvergence& space, const PointSet& s);
SpaceMap subspace_inclusion(const Preconvergence& space, const PointSet& s);

/// Product: carrier of tuples `(x,y,...)` in lexicographic order, leftmost
/// factor most significant; limits are checked coordinatewise.
Preconvergence product(const std::vector<Preconvergence>& factors);
SpaceMap product_projection(const Preconvergence& prod,
                            const std::vector<Preconvergence>& factors, int index);
/// Tuple index in the product carrier from factor indices.
int product_point(const std::vector<Preconvergence>& factors, const std::vector<int>& coords);

/// Quotient by a partition (list of disjoint class masks covering the
/// carrier); class labels join their members with '+'.
Preconvergence quotient(const Preconvergence& space, const std::vector<PointSet>& classes);
SpaceMap quotient_projection(const Preconvergence& space, const std::vector<PointSet>& classes);

/// Coproduct: tagged disjoint union, labels `x@i`.
Preconvergence coproduct(const std::vector<Preconvergence>& summands);
SpaceMap coproduct_inclusion(const Preconvergence& coprod,
                             const std::vector<Preconvergence>& summands, int index);

enum class UniversalKind { Initial, Final };

/// Checks the universal property biconditional on a concrete g:
/// for initial structures, g into the structured space is continuous iff all
/// composites f_i ∘ g are; dually for final structures.
bool verify_universal_property(UniversalKind kind, const SpaceMap& g,
                               const std::vector<InitialLeg>& initial_legs,
                               const std::vector<FinalLeg>& final_legs);

/// f restricted to the subspace on S (target unchanged).
SpaceMap restrict_domain(const SpaceMap& f, const PointSet& s);
/// f with target cut down to the subspace on B ⊇ f[X].
SpaceMap corestrict(const SpaceMap& f, const PointSet& b);

struct GlueResult {
    SpaceMap glued;
    bool continuous = false;
    /// All Pasting Lemma hypotheses held (limit spaces, closed pieces).
    bool hypotheses_hold = false;
    std::vector<std::string> violated_hypotheses;
};

/// Glues maps defined on a two-piece cover of X. A and B are recovered from
/// the subspace sources of fA and fB. Throws CoverGap when A ∪ B ≠ X and
/// Disagreement when the pieces differ on A ∩ B. When every Pasting Lemma
/// hypothesis holds, continuity of the glued map is guaranteed and a failed
/// re-check raises a Falsification; otherwise the direct verdict is reported.
GlueResult glue(const SpaceMap& fa, const SpaceMap& fb, const Preconvergence& x,
                const Preconvergence& y);

}  // namespace convg
