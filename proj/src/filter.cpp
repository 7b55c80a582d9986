#include "convg/filter.hpp"

#include <bit>

namespace convg {

PrincipalFilter::PrincipalFilter(PointSet base) : base_(std::move(base)) {
    require(!base_.is_empty(), Errc::EmptyBase, "a proper filter needs a nonempty base");
}

bool PrincipalFilter::contains(const PointSet& member) const {
    return base_.is_subset_of(member);
}

std::vector<PointSet> PrincipalFilter::members() const {
    std::vector<PointSet> out;
    std::uint32_t full = carrier()->full_mask();
    for (std::uint32_t m = base_.bits(); m <= full; ++m)
        if ((m & base_.bits()) == base_.bits()) out.emplace_back(carrier(), m);
    return out;
}

PrincipalFilter make_filter(PointSet base) { return PrincipalFilter(std::move(base)); }

PrincipalFilter principal_ultrafilter(CarrierRef carrier, int point) {
    return PrincipalFilter(PointSet::singleton(std::move(carrier), point));
}

bool finer(const PrincipalFilter& f, const PrincipalFilter& g) {
    return f.base().is_subset_of(g.base());
}

PrincipalFilter image_filter(const PointMap& f, const PrincipalFilter& filter) {
    return PrincipalFilter(f.image_of(filter.base()));
}

PrincipalFilter preimage_filter(const PointMap& f, const PrincipalFilter& filter) {
    PointSet pre = f.preimage_of(filter.base());
    require(!pre.is_empty(), Errc::EmptyPreimage,
            "base '" + filter.base().to_string() + "' has empty preimage");
    return PrincipalFilter(std::move(pre));
}

bool is_ultrafilter(const PrincipalFilter& f) { return f.base().size() == 1; }

PrincipalFilter intersect_filters(const PrincipalFilter& f, const PrincipalFilter& g) {
    return PrincipalFilter(f.base().union_with(g.base()));
}

bool mesh(const PrincipalFilter& f, const PointSet& s) {
    return !f.base().intersect(s).is_empty();
}

PrincipalFilter fip_extend(CarrierRef carrier, const std::vector<PointSet>& family) {
    std::uint32_t inter = carrier->full_mask();
    for (const auto& s : family) {
        require(same_carrier(s.carrier(), carrier), Errc::CarrierMismatch,
                "family member lives on a different carrier");
        inter &= s.bits();
    }
    require(inter != 0, Errc::NoFIP, "the family has an empty intersection");
    int least = std::countr_zero(inter);
    return principal_ultrafilter(std::move(carrier), least);
}

}  // namespace convg
