#pragma once

#include <vector>

#include "convg/carrier.hpp"

namespace convg {

/// A proper filter on a finite carrier, stored by its base set alone.
///
/// On a finite set every proper filter is principal: it is generated by the
/// intersection of its members, which is itself a member. So Fil*(X) is in
/// bijection with the nonempty subsets of X and the base is the canonical
/// basis. The upset-enumeration oracle in the test suite validates this
/// representation exhaustively on small carriers.
class PrincipalFilter {
public:
    /// Builds the filter of all supersets of `base`. The empty base would be
    /// the improper filter and is rejected.
    explicit PrincipalFilter(PointSet base);

    const PointSet& base() const { return base_; }
    const CarrierRef& carrier() const { return base_.carrier(); }

    bool contains(const PointSet& member) const;
    /// All members, ascending by bitmask. Exponential in carrier size; meant
    /// for oracles and debugging, never for representation.
    std::vector<PointSet> members() const;

    bool operator==(const PrincipalFilter& other) const { return base_ == other.base_; }
    bool operator!=(const PrincipalFilter& other) const { return !(*this == other); }

private:
    PointSet base_;
};

PrincipalFilter make_filter(PointSet base);

/// The principal ultrafilter u_x of all sets containing x.
PrincipalFilter principal_ultrafilter(CarrierRef carrier, int point);

/// True iff F is finer than G, i.e. G ⊆ F as families of sets,
/// equivalently base(F) ⊆ base(G).
bool finer(const PrincipalFilter& f, const PrincipalFilter& g);

/// Filter image f(F), the upset of f[base(F)].
PrincipalFilter image_filter(const PointMap& f, const PrincipalFilter& filter);

/// Preimage filter f⁻¹(G), the upset of f⁻¹[base(G)]. Fails with
/// EmptyPreimage when some member (equivalently the base) pulls back to ∅.
PrincipalFilter preimage_filter(const PointMap& f, const PrincipalFilter& filter);

/// True iff the base is a singleton; agrees with the trichotomy
/// "either A ∈ F or X∖A ∈ F for every A".
bool is_ultrafilter(const PrincipalFilter& f);

/// F ∩ G as families; its base is base(F) ∪ base(G).
PrincipalFilter intersect_filters(const PrincipalFilter& f, const PrincipalFilter& g);

/// F # S: every member of F meets S. Since the base is the smallest member,
/// this is base(F) ∩ S ≠ ∅.
bool mesh(const PrincipalFilter& f, const PointSet& s);

/// Extends a family with the finite intersection property to an ultrafilter
/// containing it: u_x for the least-index x in the total intersection.
/// The family being finite, FIP is equivalent to that intersection being
/// nonempty; NoFIP otherwise.
PrincipalFilter fip_extend(CarrierRef carrier, const std::vector<PointSet>& family);

}  // namespace convg
