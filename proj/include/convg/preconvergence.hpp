#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convg/filter.hpp"

namespace convg {

/// A preconvergence on a finite carrier: a limit table assigning to every
/// nonempty subset B (the base of the filter ↑B) its set of limit points.
/// Entry for B lives at index bits(B) - 1. Immutable.
class Preconvergence {
public:
    Preconvergence(CarrierRef carrier, std::vector<std::uint32_t> table);

    /// Nothing converges anywhere.
    static Preconvergence empty_space(CarrierRef carrier);
    /// Everything converges everywhere.
    static Preconvergence chaotic(CarrierRef carrier);

    const CarrierRef& carrier() const { return carrier_; }
    int n() const { return carrier_->n(); }
    std::uint32_t full_mask() const { return carrier_->full_mask(); }
    const std::vector<std::uint32_t>& table() const { return table_; }

    std::uint32_t limits_bits(std::uint32_t base_bits) const;
    PointSet limits(const PointSet& base) const;
    bool converges(std::uint32_t base_bits, int point) const {
        return (limits_bits(base_bits) >> point) & 1u;
    }

    /// Copy with one entry replaced; used by perturbation tests.
    Preconvergence with_limits(std::uint32_t base_bits, std::uint32_t value) const;

    bool operator==(const Preconvergence& other) const {
        return same_carrier(carrier_, other.carrier_) && table_ == other.table_;
    }
    bool operator!=(const Preconvergence& other) const { return !(*this == other); }

private:
    CarrierRef carrier_;
    std::vector<std::uint32_t> table_;
};

/// A topology on a finite carrier together with the minimal-neighborhood
/// table U_x = ⋂{open U : x ∈ U}. Construction verifies the axioms.
class FiniteTopology {
public:
    FiniteTopology(CarrierRef carrier, std::vector<std::uint32_t> opens);

    static FiniteTopology discrete(CarrierRef carrier);
    static FiniteTopology indiscrete(CarrierRef carrier);

    const CarrierRef& carrier() const { return carrier_; }
    const std::vector<std::uint32_t>& opens() const { return opens_; }
    bool is_open(std::uint32_t bits) const;
    std::uint32_t min_neighborhood_bits(int point) const {
        return min_nbhd_.at(static_cast<size_t>(point));
    }

    static bool is_topology(int n, const std::vector<std::uint32_t>& opens);

    bool operator==(const FiniteTopology& other) const {
        return same_carrier(carrier_, other.carrier_) && opens_ == other.opens_;
    }

private:
    CarrierRef carrier_;
    std::vector<std::uint32_t> opens_;    // sorted ascending, deduplicated
    std::vector<std::uint32_t> min_nbhd_; // U_x per point
};

enum class Axiom {
    Centered,
    Isotone,
    Stable,
    Kent,
    Pseudotopological,
    Pretopological,
    Topological,
};

const char* axiom_name(Axiom a);
std::optional<Axiom> axiom_from_name(const std::string& name);

/// Failure data for an axiom check; which fields are meaningful depends on
/// the axiom (sets A/B as base masks, a point index, or both).
struct AxiomWitness {
    std::optional<std::uint32_t> set_a;
    std::optional<std::uint32_t> set_b;
    std::optional<int> point;

    std::string describe(const CarrierRef& carrier) const;
};

struct AxiomCheck {
    bool holds = true;
    AxiomWitness witness;
};

/// Flags for the seven axioms. The stable and kent verdicts coincide with
/// quantification over explicit nets only on isotone tables; the dependency
/// note records that.
struct AxiomReport {
    AxiomCheck centered, isotone, stable, kent, pseudotopological, pretopological, topological;

    const AxiomCheck& get(Axiom a) const;
    bool is_convergence() const { return centered.holds && isotone.holds; }
    bool is_limit() const { return is_convergence() && stable.holds; }
    static const char* stable_dependency_note() {
        return "stable/kent verdicts match net-level quantification only when isotone holds";
    }
};

/// The net convergence of a topology: ↑B converges to x iff B ⊆ U_x.
Preconvergence from_topology(const FiniteTopology& topology);

AxiomCheck check_axiom(const Preconvergence& space, Axiom axiom);
AxiomReport axiom_report(const Preconvergence& space);

enum class Comparison { Finer, Coarser, Equal, Incomparable };

/// How `left` relates to `right` in the order where finer = smaller limit sets.
Comparison compare(const Preconvergence& left, const Preconvergence& right);

/// True iff `coarse` ≤ `fine` (every fine limit is a coarse limit).
bool coarser_or_equal(const Preconvergence& coarse, const Preconvergence& fine);

/// Supremum: entrywise intersection; empty family gives the chaotic space.
Preconvergence lattice_sup(const std::vector<Preconvergence>& family, const CarrierRef& carrier);
/// Infimum: entrywise union; empty family gives the empty preconvergence.
Preconvergence lattice_inf(const std::vector<Preconvergence>& family, const CarrierRef& carrier);

std::uint32_t inherence_bits(const Preconvergence& space, std::uint32_t s);
std::uint32_t adherence_bits(const Preconvergence& space, std::uint32_t s);
PointSet inherence(const Preconvergence& space, const PointSet& s);
PointSet adherence(const Preconvergence& space, const PointSet& s);

/// V_x: union of all bases converging to x (empty if nothing converges).
std::uint32_t vicinity_bits(const Preconvergence& space, int point);

/// The topology of L-open sets (S ⊆ inh(S)); axioms re-verified on return.
FiniteTopology open_sets(const Preconvergence& space);

struct SetClassification {
    bool open = false;
    bool closed = false;
};

/// Open/closed classification. On isotone tables the closed verdict is
/// cross-checked against "limits stay inside S"; a discrepancy would refute
/// the closed-set characterization and raises a Falsification.
SetClassification classify_set(const Preconvergence& space, const PointSet& s);

Preconvergence topological_modification(const Preconvergence& space);

/// The limit modification ⊔(L): the greatest limit convergence below L.
/// On a finite carrier ↑B converges to x in ⊔(L) iff B ⊆ V_x.
/// Requires a convergence (centered + isotone) as input.
Preconvergence limit_modification(const Preconvergence& space);

}  // namespace convg
