#include "convg/preconvergence.hpp"

#include <algorithm>
#include <bit>

namespace convg {

Preconvergence::Preconvergence(CarrierRef carrier, std::vector<std::uint32_t> table)
    : carrier_(std::move(carrier)), table_(std::move(table)) {
    std::uint32_t full = carrier_->full_mask();
    size_t entries = full;  // 2^n - 1
    require(table_.size() == entries, Errc::InvalidArgument,
            "limit table must have exactly 2^n - 1 entries");
    for (std::uint32_t v : table_)
        require((v & ~full) == 0, Errc::InvalidArgument, "limit entry outside the carrier");
}

Preconvergence Preconvergence::empty_space(CarrierRef carrier) {
    std::vector<std::uint32_t> t(carrier->full_mask(), 0u);
    return Preconvergence(std::move(carrier), std::move(t));
}

Preconvergence Preconvergence::chaotic(CarrierRef carrier) {
    std::uint32_t full = carrier->full_mask();
    std::vector<std::uint32_t> t(full, full);
    return Preconvergence(std::move(carrier), std::move(t));
}

std::uint32_t Preconvergence::limits_bits(std::uint32_t base_bits) const {
    require(base_bits != 0 && base_bits <= full_mask(), Errc::InvalidArgument,
            "filter bases are the nonempty subsets of the carrier");
    return table_[base_bits - 1];
}

PointSet Preconvergence::limits(const PointSet& base) const {
    require(same_carrier(base.carrier(), carrier_), Errc::CarrierMismatch,
            "base lives on a different carrier");
    return PointSet(carrier_, limits_bits(base.bits()));
}

Preconvergence Preconvergence::with_limits(std::uint32_t base_bits, std::uint32_t value) const {
    require(base_bits != 0 && base_bits <= full_mask(), Errc::InvalidArgument, "bad base");
    std::vector<std::uint32_t> t = table_;
    t[base_bits - 1] = value & full_mask();
    return Preconvergence(carrier_, std::move(t));
}

FiniteTopology::FiniteTopology(CarrierRef carrier, std::vector<std::uint32_t> opens)
    : carrier_(std::move(carrier)), opens_(std::move(opens)) {
    std::sort(opens_.begin(), opens_.end());
    opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
    require(is_topology(carrier_->n(), opens_), Errc::InvalidArgument,
            "family is not a topology");
    min_nbhd_.assign(static_cast<size_t>(carrier_->n()), carrier_->full_mask());
    for (int x = 0; x < carrier_->n(); ++x)
        for (std::uint32_t u : opens_)
            if ((u >> x) & 1u) min_nbhd_[static_cast<size_t>(x)] &= u;
}

FiniteTopology FiniteTopology::discrete(CarrierRef carrier) {
    std::vector<std::uint32_t> opens;
    for (std::uint32_t m = 0; m <= carrier->full_mask(); ++m) {
        opens.push_back(m);
        if (carrier->full_mask() == 0) break;
    }
    return FiniteTopology(std::move(carrier), std::move(opens));
}

FiniteTopology FiniteTopology::indiscrete(CarrierRef carrier) {
    std::uint32_t full = carrier->full_mask();
    std::vector<std::uint32_t> opens{0u};
    if (full != 0) opens.push_back(full);
    return FiniteTopology(std::move(carrier), std::move(opens));
}

bool FiniteTopology::is_open(std::uint32_t bits) const {
    return std::binary_search(opens_.begin(), opens_.end(), bits);
}

bool FiniteTopology::is_topology(int n, const std::vector<std::uint32_t>& opens) {
    std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
    auto has = [&](std::uint32_t m) {
        return std::find(opens.begin(), opens.end(), m) != opens.end();
    };
    if (!has(0u) || !has(full)) return false;
    for (std::uint32_t a : opens) {
        if ((a & ~full) != 0) return false;
        for (std::uint32_t b : opens)
            if (!has(a | b) || !has(a & b)) return false;
    }
    return true;
}

const char* axiom_name(Axiom a) {
    switch (a) {
        case Axiom::Centered: return "centered";
        case Axiom::Isotone: return "isotone";
        case Axiom::Stable: return "stable";
        case Axiom::Kent: return "kent";
        case Axiom::Pseudotopological: return "pseudotopological";
        case Axiom::Pretopological: return "pretopological";
        case Axiom::Topological: return "topological";
    }
    return "?";
}

std::optional<Axiom> axiom_from_name(const std::string& name) {
    for (Axiom a : {Axiom::Centered, Axiom::Isotone, Axiom::Stable, Axiom::Kent,
                    Axiom::Pseudotopological, Axiom::Pretopological, Axiom::Topological})
        if (name == axiom_name(a)) return a;
    return std::nullopt;
}

std::string AxiomWitness::describe(const CarrierRef& carrier) const {
    std::string out;
    auto set_str = [&](std::uint32_t bits) {
        return "{" + PointSet(carrier, bits).to_string() + "}";
    };
    if (set_a) out += "A=" + set_str(*set_a);
    if (set_b) out += (out.empty() ? "" : " ") + std::string("B=") + set_str(*set_b);
    if (point) out += (out.empty() ? "" : " ") + std::string("x=") + carrier->label(*point);
    return out;
}

const AxiomCheck& AxiomReport::get(Axiom a) const {
    switch (a) {
        case Axiom::Centered: return centered;
        case Axiom::Isotone: return isotone;
        case Axiom::Stable: return stable;
        case Axiom::Kent: return kent;
        case Axiom::Pseudotopological: return pseudotopological;
        case Axiom::Pretopological: return pretopological;
        case Axiom::Topological: return topological;
    }
    return centered;
}

Preconvergence from_topology(const FiniteTopology& topology) {
    const CarrierRef& carrier = topology.carrier();
    std::uint32_t full = carrier->full_mask();
    std::vector<std::uint32_t> table(full, 0u);
    for (std::uint32_t base = 1; base <= full && full != 0; ++base) {
        std::uint32_t lim = 0;
        for (int x = 0; x < carrier->n(); ++x)
            if ((base & ~topology.min_neighborhood_bits(x)) == 0) lim |= 1u << x;
        table[base - 1] = lim;
    }
    return Preconvergence(carrier, std::move(table));
}

namespace {

AxiomCheck fail_with(std::optional<std::uint32_t> a, std::optional<std::uint32_t> b,
                     std::optional<int> x) {
    AxiomCheck c;
    c.holds = false;
    c.witness.set_a = a;
    c.witness.set_b = b;
    c.witness.point = x;
    return c;
}

AxiomCheck check_centered(const Preconvergence& L) {
    for (int x = 0; x < L.n(); ++x)
        if (!L.converges(1u << x, x)) return fail_with(std::nullopt, std::nullopt, x);
    return {};
}

AxiomCheck check_isotone(const Preconvergence& L) {
    std::uint32_t full = L.full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        std::uint32_t la = L.limits_bits(a);
        if (la == 0) continue;
        // Enumerate nonempty proper-or-not subsets b of a.
        for (std::uint32_t b = a; b != 0; b = (b - 1) & a)
            if ((la & ~L.limits_bits(b)) != 0) return fail_with(a, b, std::nullopt);
    }
    return {};
}

AxiomCheck check_stable(const Preconvergence& L) {
    std::uint32_t full = L.full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a)
        for (std::uint32_t b = a; b <= full; ++b) {
            std::uint32_t common = L.limits_bits(a) & L.limits_bits(b);
            if ((common & ~L.limits_bits(a | b)) != 0) return fail_with(a, b, std::nullopt);
        }
    return {};
}

AxiomCheck check_kent(const Preconvergence& L) {
    std::uint32_t full = L.full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        std::uint32_t la = L.limits_bits(a);
        for (int x = 0; x < L.n(); ++x)
            if (((la >> x) & 1u) && !L.converges(a | (1u << x), x))
                return fail_with(a, std::nullopt, x);
    }
    return {};
}

AxiomCheck check_pseudotopological(const Preconvergence& L) {
    std::uint32_t full = L.full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        std::uint32_t inter = full;
        for (int x = 0; x < L.n(); ++x)
            if ((a >> x) & 1u) inter &= L.limits_bits(1u << x);
        if (L.limits_bits(a) != inter) return fail_with(a, std::nullopt, std::nullopt);
    }
    return {};
}

AxiomCheck check_pretopological(const Preconvergence& L) {
    for (int x = 0; x < L.n(); ++x) {
        std::uint32_t v = vicinity_bits(L, x);
        // Points to which nothing converges satisfy the condition vacuously.
        if (v == 0) continue;
        if (!L.converges(v, x)) return fail_with(std::nullopt, std::nullopt, x);
    }
    return {};
}

AxiomCheck check_topological(const Preconvergence& L) {
    Preconvergence top = topological_modification(L);
    std::uint32_t full = L.full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a)
        if (L.limits_bits(a) != top.limits_bits(a)) return fail_with(a, std::nullopt, std::nullopt);
    return {};
}

}  // namespace

AxiomCheck check_axiom(const Preconvergence& space, Axiom axiom) {
    switch (axiom) {
        case Axiom::Centered: return check_centered(space);
        case Axiom::Isotone: return check_isotone(space);
        case Axiom::Stable: return check_stable(space);
        case Axiom::Kent: return check_kent(space);
        case Axiom::Pseudotopological: return check_pseudotopological(space);
        case Axiom::Pretopological: return check_pretopological(space);
        case Axiom::Topological: return check_topological(space);
    }
    return {};
}

AxiomReport axiom_report(const Preconvergence& space) {
    AxiomReport r;
    r.centered = check_centered(space);
    r.isotone = check_isotone(space);
    r.stable = check_stable(space);
    r.kent = check_kent(space);
    r.pseudotopological = check_pseudotopological(space);
    r.pretopological = check_pretopological(space);
    r.topological = check_topological(space);
    return r;
}

Comparison compare(const Preconvergence& left, const Preconvergence& right) {
    require(same_carrier(left.carrier(), right.carrier()), Errc::CarrierMismatch,
            "cannot compare preconvergences on different carriers");
    bool left_finer = true, right_finer = true;
    std::uint32_t full = left.full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        std::uint32_t l = left.limits_bits(a), r = right.limits_bits(a);
        if ((l & ~r) != 0) left_finer = false;   // left has a limit right lacks
        if ((r & ~l) != 0) right_finer = false;
    }
    if (left_finer && right_finer) return Comparison::Equal;
    if (left_finer) return Comparison::Finer;
    if (right_finer) return Comparison::Coarser;
    return Comparison::Incomparable;
}

bool coarser_or_equal(const Preconvergence& coarse, const Preconvergence& fine) {
    Comparison c = compare(fine, coarse);
    return c == Comparison::Finer || c == Comparison::Equal;
}

Preconvergence lattice_sup(const std::vector<Preconvergence>& family, const CarrierRef& carrier) {
    std::uint32_t full = carrier->full_mask();
    std::vector<std::uint32_t> t(full, full);  // empty family: chaotic
    for (const auto& L : family) {
        require(same_carrier(L.carrier(), carrier), Errc::CarrierMismatch,
                "family member lives on a different carrier");
        for (std::uint32_t a = 1; a <= full && full != 0; ++a) t[a - 1] &= L.limits_bits(a);
    }
    return Preconvergence(carrier, std::move(t));
}

Preconvergence lattice_inf(const std::vector<Preconvergence>& family, const CarrierRef& carrier) {
    std::uint32_t full = carrier->full_mask();
    std::vector<std::uint32_t> t(full, 0u);  // empty family: empty preconvergence
    for (const auto& L : family) {
        require(same_carrier(L.carrier(), carrier), Errc::CarrierMismatch,
                "family member lives on a different carrier");
        for (std::uint32_t a = 1; a <= full && full != 0; ++a) t[a - 1] |= L.limits_bits(a);
    }
    return Preconvergence(carrier, std::move(t));
}

std::uint32_t inherence_bits(const Preconvergence& space, std::uint32_t s) {
    std::uint32_t full = space.full_mask();
    std::uint32_t out = full;
    for (std::uint32_t a = 1; a <= full && full != 0; ++a)
        if ((a & ~s) != 0) out &= ~space.limits_bits(a);
    return out;
}

std::uint32_t adherence_bits(const Preconvergence& space, std::uint32_t s) {
    std::uint32_t full = space.full_mask();
    std::uint32_t out = 0;
    for (std::uint32_t a = 1; a <= full && full != 0; ++a)
        if ((a & s) != 0) out |= space.limits_bits(a);
    return out;
}

PointSet inherence(const Preconvergence& space, const PointSet& s) {
    require(same_carrier(s.carrier(), space.carrier()), Errc::CarrierMismatch, "carrier mismatch");
    return PointSet(space.carrier(), inherence_bits(space, s.bits()));
}

PointSet adherence(const Preconvergence& space, const PointSet& s) {
    require(same_carrier(s.carrier(), space.carrier()), Errc::CarrierMismatch, "carrier mismatch");
    return PointSet(space.carrier(), adherence_bits(space, s.bits()));
}

std::uint32_t vicinity_bits(const Preconvergence& space, int point) {
    std::uint32_t full = space.full_mask();
    std::uint32_t v = 0;
    for (std::uint32_t a = 1; a <= full && full != 0; ++a)
        if (space.converges(a, point)) v |= a;
    return v;
}

FiniteTopology open_sets(const Preconvergence& space) {
    std::uint32_t full = space.full_mask();
    std::vector<std::uint32_t> opens;
    for (std::uint32_t s = 0; ; ++s) {
        if ((s & ~inherence_bits(space, s)) == 0) opens.push_back(s);
        if (s == full) break;
    }
    return FiniteTopology(space.carrier(), std::move(opens));
}

SetClassification classify_set(const Preconvergence& space, const PointSet& s) {
    require(same_carrier(s.carrier(), space.carrier()), Errc::CarrierMismatch, "carrier mismatch");
    std::uint32_t bits = s.bits();
    std::uint32_t comp = space.full_mask() & ~bits;
    SetClassification out;
    out.open = (bits & ~inherence_bits(space, bits)) == 0;
    out.closed = (comp & ~inherence_bits(space, comp)) == 0;
    if (check_axiom(space, Axiom::Isotone).holds) {
        // On isotone tables, closed must agree with "limits of subsets stay inside".
        bool inside = true;
        for (std::uint32_t a = bits; a != 0; a = (a - 1) & bits)
            if ((space.limits_bits(a) & ~bits) != 0) {
                inside = false;
                break;
            }
        if (inside != out.closed)
            throw Falsification("closed-set characterization disagreed on an isotone table for {" +
                                s.to_string() + "}");
    }
    return out;
}

Preconvergence topological_modification(const Preconvergence& space) {
    return from_topology(open_sets(space));
}

Preconvergence limit_modification(const Preconvergence& space) {
    AxiomCheck c = check_axiom(space, Axiom::Centered);
    AxiomCheck i = check_axiom(space, Axiom::Isotone);
    require(c.holds && i.holds, Errc::NotAConvergence,
            "the limit modification is defined on convergences (centered and isotone)");
    std::uint32_t full = space.full_mask();
    std::vector<std::uint32_t> t(full, 0u);
    std::vector<std::uint32_t> vic(static_cast<size_t>(space.n()));
    for (int x = 0; x < space.n(); ++x) vic[static_cast<size_t>(x)] = vicinity_bits(space, x);
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        std::uint32_t lim = 0;
        for (int x = 0; x < space.n(); ++x)
            if ((a & ~vic[static_cast<size_t>(x)]) == 0) lim |= 1u << x;
        t[a - 1] = lim;
    }
    return Preconvergence(space.carrier(), std::move(t));
}

}  // namespace convg
