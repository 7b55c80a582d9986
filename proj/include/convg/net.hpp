#pragma once

#include <vector>

#include "convg/filter.hpp"

namespace convg {

/// A finite directed preorder: reflexive, transitive, and every pair of
/// elements has an upper bound.
class DirectedSet {
public:
    /// `leq` is a row-major m×m table, leq[a*m+b] meaning a ≤ b.
    DirectedSet(int m, std::vector<std::uint8_t> leq);

    static bool check_directed(int m, const std::vector<std::uint8_t>& leq);

    /// Total order 0 ≤ 1 ≤ ... ≤ m-1.
    static DirectedSet chain(int m);
    /// All elements mutually comparable (the indiscrete preorder).
    static DirectedSet cluster(int m);
    /// Componentwise order on pairs; index = a * |B| + b.
    static DirectedSet product(const DirectedSet& a, const DirectedSet& b);

    int size() const { return m_; }
    bool leq(int a, int b) const { return leq_[static_cast<size_t>(a) * m_ + b] != 0; }
    /// {d : d ≥ a}.
    std::vector<int> upper_set(int a) const;

    bool operator==(const DirectedSet& other) const {
        return m_ == other.m_ && leq_ == other.leq_;
    }

private:
    int m_;
    std::vector<std::uint8_t> leq_;
};

/// A net: a valuation of a finite directed set into a carrier.
class Net {
public:
    Net(DirectedSet domain, CarrierRef carrier, std::vector<int> values);

    static Net constant(DirectedSet domain, CarrierRef carrier, int point);

    const DirectedSet& domain() const { return domain_; }
    const CarrierRef& carrier() const { return carrier_; }
    const std::vector<int>& values() const { return values_; }
    int value(int d) const { return values_.at(static_cast<size_t>(d)); }

private:
    DirectedSet domain_;
    CarrierRef carrier_;
    std::vector<int> values_;
};

/// The filter of sets containing a tail of the net: the upset of the
/// inclusion-minimal tail, found by scanning all tails (they are directed
/// downward, so a least one exists on a finite domain).
PrincipalFilter induced_filter(const Net& net);

/// ψ is a subnet of φ iff φ↑ ⊆ ψ↑ (Aarnes–Andenaes).
bool is_subnet(const Net& psi, const Net& phi);

/// Pointwise selection between two nets over a shared domain.
/// selector[d] = false picks φ_d, true picks ψ_d.
Net mix(const Net& phi, const Net& psi, const std::vector<bool>& selector);

/// Replays two nets over the product of their domains without changing the
/// induced filters, so they can be mixed.
std::pair<Net, Net> lift_to_product(const Net& phi, const Net& psi);

/// The canonical net of a filter: domain {⟨x,M⟩ : x ∈ M ∈ F} ordered by
/// reverse inclusion of the member, valued by the first coordinate. Its
/// induced filter is F again, which makes the net-to-filter map onto.
Net canonical_net(const PrincipalFilter& f);

/// All directed preorders on m labeled elements (row-major tables),
/// ascending by table encoding. Intended for m ≤ 4.
std::vector<DirectedSet> all_directed_preorders(int m);

}  // namespace convg
