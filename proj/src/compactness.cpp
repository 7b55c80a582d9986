#include "convg/compactness.hpp"

#include <algorithm>

namespace convg {

bool is_compact(const Preconvergence& space) {
    std::uint32_t full = space.full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        bool refinable = false;
        for (std::uint32_t b = a; b != 0 && !refinable; b = (b - 1) & a)
            if (space.limits_bits(b) != 0) refinable = true;
        if (!refinable) return false;
    }
    return true;
}

ConvergenceSystem make_system(const Preconvergence& space, std::vector<PointSet> family) {
    for (const auto& s : family)
        require(same_carrier(s.carrier(), space.carrier()), Errc::CarrierMismatch,
                "family member lives on a different carrier");
    return ConvergenceSystem{space, std::move(family), false};
}

SystemCheck is_convergence_system(const Preconvergence& space,
                                  const std::vector<PointSet>& family) {
    std::uint32_t full = space.full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        std::uint32_t la = space.limits_bits(a);
        if (la == 0) continue;
        bool contained = false;
        for (const auto& c : family)
            if ((a & ~c.bits()) == 0) {
                contained = true;
                break;
            }
        if (!contained) {
            SystemCheck out;
            out.valid = false;
            out.witness_base = a;
            out.witness_point = std::countr_zero(la);
            return out;
        }
    }
    return {};
}

bool validate_system(ConvergenceSystem& system) {
    system.validated = is_convergence_system(system.space, system.family).valid;
    return system.validated;
}

bool is_cover(const ConvergenceSystem& system) {
    std::uint32_t u = 0;
    for (const auto& s : system.family) u |= s.bits();
    return u == system.space.full_mask();
}

std::optional<std::vector<int>> finite_subcover(const Preconvergence& space,
                                                const ConvergenceSystem& system) {
    require(system.validated, Errc::NotValidated, "validate the system first");
    require(same_carrier(system.space.carrier(), space.carrier()) && system.space == space,
            Errc::CarrierMismatch, "system belongs to a different space");
    int k = static_cast<int>(system.family.size());
    require(k <= 24, Errc::TooLarge, "subcover search is exponential in the family size");
    std::uint32_t full = space.full_mask();

    // Ties between equal-cardinality covers break lexicographically on the
    // index sequences: at the first index where two subfamilies differ, the
    // one containing it wins.
    auto lex_before = [](std::uint32_t a, std::uint32_t b) {
        std::uint32_t d = a ^ b;
        return d != 0 && (a & (d & ~(d - 1))) != 0;
    };
    std::uint32_t best_mask = 0;
    int best_size = k + 1;
    for (std::uint32_t sub = 0; sub < (1u << k); ++sub) {
        int size = std::popcount(sub);
        if (size > best_size || (size == best_size && !lex_before(sub, best_mask))) continue;
        std::uint32_t u = 0;
        for (int i = 0; i < k; ++i)
            if ((sub >> i) & 1u) u |= system.family[static_cast<size_t>(i)].bits();
        if (u == full) {
            best_size = size;
            best_mask = sub;
        }
    }
    if (best_size == k + 1) {
        if (is_compact(space))
            throw Falsification("a validated system on a compact space has no finite subcover");
        return std::nullopt;
    }
    std::vector<int> out;
    for (int i = 0; i < k; ++i)
        if ((best_mask >> i) & 1u) out.push_back(i);
    return out;
}

CompactnessTheoremReport verify_compactness_theorem(const Preconvergence& space) {
    require(space.n() <= 3, Errc::TooLarge, "family enumeration is capped at 3 points");
    require(check_axiom(space, Axiom::Isotone).holds, Errc::NotIsotone,
            "the finite-subcover characterization needs an isotone space");
    CompactnessTheoremReport report;
    report.compact = is_compact(space);

    int subsets = 1 << space.n();
    std::uint32_t full = space.full_mask();
    bool all_validated_have_subcover = true;
    long long families = 1ll << subsets;
    for (long long fam = 0; fam < families; ++fam) {
        ++report.families_checked;
        std::vector<PointSet> family;
        std::uint32_t covered = 0;
        for (int s = 0; s < subsets; ++s)
            if ((fam >> s) & 1) {
                family.emplace_back(space.carrier(), static_cast<std::uint32_t>(s));
                covered |= static_cast<std::uint32_t>(s);
            }
        if (!is_convergence_system(space, family).valid) continue;
        ++report.validated_systems;
        // A finite family has a subcover iff its total union is the carrier.
        if (covered != full) all_validated_have_subcover = false;
    }
    report.agreement = (report.compact == all_validated_have_subcover);

    if (!report.compact) {
        // The proof's witness: all sets missing a point whose ultrafilter
        // does not converge.
        int bad = -1;
        for (int x = 0; x < space.n() && bad < 0; ++x)
            if (space.limits_bits(1u << x) == 0) bad = x;
        if (bad >= 0) {
            std::vector<PointSet> hat;
            for (int s = 0; s < subsets; ++s)
                if (!((static_cast<std::uint32_t>(s) >> bad) & 1u))
                    hat.emplace_back(space.carrier(), static_cast<std::uint32_t>(s));
            ConvergenceSystem sys = make_system(space, hat);
            if (!validate_system(sys))
                throw Falsification("the complement family of a non-converging ultrafilter "
                                    "failed to validate on an isotone space");
            if (finite_subcover(space, sys).has_value())
                throw Falsification("the non-converging-ultrafilter system has a subcover");
            report.hat_system = std::move(sys.family);
            report.hat_point = bad;
        }
    }
    return report;
}

ConvergenceSystem preimage_system(const SpaceMap& f, const ConvergenceSystem& system) {
    require(is_continuous(f).continuous, Errc::NotContinuous,
            "preimage systems need a continuous map");
    require(system.validated, Errc::NotValidated, "validate the system first");
    require(same_carrier(system.space.carrier(), f.target().carrier()) &&
                system.space == f.target(),
            Errc::CarrierMismatch, "system lives on a different space than the map's target");
    std::vector<PointSet> family;
    for (const auto& c : system.family) {
        std::uint32_t pre = 0;
        for (int p = 0; p < f.source().n(); ++p)
            if ((c.bits() >> f.apply(p)) & 1u) pre |= 1u << p;
        family.emplace_back(f.source().carrier(), pre);
    }
    ConvergenceSystem out = make_system(f.source(), std::move(family));
    if (!validate_system(out))
        throw Falsification("the preimage of a convergence system under a continuous map "
                            "failed to validate");
    return out;
}

bool image_compact(const SpaceMap& f) {
    require(is_continuous(f).continuous, Errc::PreconditionFailed, "the map must be continuous");
    require(f.is_onto(), Errc::PreconditionFailed, "the map must be onto");
    require(is_compact(f.source()), Errc::PreconditionFailed, "the source must be compact");
    bool compact = is_compact(f.target());
    if (!compact)
        throw Falsification("a continuous onto image of a compact space came out non-compact");
    return compact;
}

}  // namespace convg
