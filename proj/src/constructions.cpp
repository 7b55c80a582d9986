#include "convg/constructions.hpp"

#include <algorithm>

namespace convg {

SpaceMap::SpaceMap(Preconvergence source, Preconvergence target, std::vector<int> graph)
    : source_(std::move(source)), target_(std::move(target)), graph_(std::move(graph)) {
    require(graph_.size() == static_cast<size_t>(source_.n()), Errc::InvalidArgument,
            "map graph must assign every source point");
    for (int v : graph_)
        require(v >= 0 && v < target_.n(), Errc::InvalidArgument, "map value out of target range");
}

SpaceMap SpaceMap::identity(const Preconvergence& space) {
    std::vector<int> g(static_cast<size_t>(space.n()));
    for (int i = 0; i < space.n(); ++i) g[static_cast<size_t>(i)] = i;
    return SpaceMap(space, space, std::move(g));
}

SpaceMap SpaceMap::constant(const Preconvergence& source, const Preconvergence& target, int value) {
    require(value >= 0 && value < target.n(), Errc::InvalidArgument, "constant value out of range");
    return SpaceMap(source, target, std::vector<int>(static_cast<size_t>(source.n()), value));
}

std::uint32_t SpaceMap::image_bits(std::uint32_t bits) const {
    std::uint32_t out = 0;
    for (int i = 0; i < source_.n(); ++i)
        if ((bits >> i) & 1u) out |= 1u << graph_[static_cast<size_t>(i)];
    return out;
}

bool SpaceMap::is_onto() const { return image_bits(source_.full_mask()) == target_.full_mask(); }

PointMap SpaceMap::point_map() const {
    return PointMap(source_.carrier(), target_.carrier(), graph_);
}

bool SpaceMap::continuous() const {
    if (!continuity_) continuity_ = is_continuous(*this).continuous;
    return *continuity_;
}

ContinuityCheck is_continuous(const SpaceMap& f) {
    std::uint32_t full = f.source().full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        std::uint32_t la = f.source().limits_bits(a);
        if (la == 0) continue;
        std::uint32_t image_limits = f.target().limits_bits(f.image_bits(a));
        for (int x = 0; x < f.source().n(); ++x)
            if (((la >> x) & 1u) && !((image_limits >> f.apply(x)) & 1u)) {
                ContinuityCheck c;
                c.continuous = false;
                c.witness = ContinuityWitness{a, x};
                return c;
            }
    }
    return {};
}

bool is_continuous_at(const SpaceMap& f, int point) {
    require(point >= 0 && point < f.source().n(), Errc::InvalidArgument, "point out of range");
    std::uint32_t full = f.source().full_mask();
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        if (!f.source().converges(a, point)) continue;
        std::uint32_t image_limits = f.target().limits_bits(f.image_bits(a));
        if (!((image_limits >> f.apply(point)) & 1u)) return false;
    }
    return true;
}

SpaceMap compose(const SpaceMap& g, const SpaceMap& f) {
    require(same_carrier(f.target().carrier(), g.source().carrier()) && f.target() == g.source(),
            Errc::ShapeMismatch, "composition needs matching middle spaces");
    std::vector<int> h(f.graph().size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = g.graph()[static_cast<size_t>(f.graph()[i])];
    return SpaceMap(f.source(), g.target(), std::move(h));
}

Preconvergence initial(const std::vector<InitialLeg>& legs, const CarrierRef& carrier) {
    std::uint32_t full = carrier->full_mask();
    for (const auto& leg : legs) {
        require(leg.graph.size() == static_cast<size_t>(carrier->n()), Errc::InvalidArgument,
                "initial leg must be total on the source carrier");
        for (int v : leg.graph)
            require(v >= 0 && v < leg.target.n(), Errc::InvalidArgument,
                    "initial leg value out of range");
    }
    std::vector<std::uint32_t> table(full, full);  // empty family: chaotic
    for (std::uint32_t a = 1; a <= full && full != 0; ++a) {
        std::uint32_t lim = table[a - 1];
        for (const auto& leg : legs) {
            std::uint32_t img = 0;
            for (int i = 0; i < carrier->n(); ++i)
                if ((a >> i) & 1u) img |= 1u << leg.graph[static_cast<size_t>(i)];
            std::uint32_t tl = leg.target.limits_bits(img);
            std::uint32_t keep = 0;
            for (int x = 0; x < carrier->n(); ++x)
                if ((tl >> leg.graph[static_cast<size_t>(x)]) & 1u) keep |= 1u << x;
            lim &= keep;
        }
        table[a - 1] = lim;
    }
    return Preconvergence(carrier, std::move(table));
}

Preconvergence final(const std::vector<FinalLeg>& legs, const CarrierRef& carrier) {
    std::uint32_t full = carrier->full_mask();
    for (const auto& leg : legs) {
        require(leg.graph.size() == static_cast<size_t>(leg.source.n()), Errc::InvalidArgument,
                "final leg must be total on its source carrier");
        for (int v : leg.graph)
            require(v >= 0 && v < carrier->n(), Errc::InvalidArgument,
                    "final leg value out of range");
    }
    std::vector<std::uint32_t> table(full, 0u);  // empty family: empty preconvergence
    for (const auto& leg : legs) {
        std::uint32_t src_full = leg.source.full_mask();
        for (std::uint32_t b = 1; b <= src_full && src_full != 0; ++b) {
            std::uint32_t img = 0;
            for (int i = 0; i < leg.source.n(); ++i)
                if ((b >> i) & 1u) img |= 1u << leg.graph[static_cast<size_t>(i)];
            std::uint32_t lb = leg.source.limits_bits(b);
            if (lb == 0) continue;
            std::uint32_t pushed = 0;
            for (int x = 0; x < leg.source.n(); ++x)
                if ((lb >> x) & 1u) pushed |= 1u << leg.graph[static_cast<size_t>(x)];
            table[img - 1] |= pushed;
        }
    }
    return Preconvergence(carrier, std::move(table));
}

namespace {

CarrierRef sub_carrier(const Preconvergence& space, const PointSet& s) {
    std::vector<std::string> labels;
    for (int i : s.points()) labels.push_back(space.carrier()->label(i));
    return Carrier::make(std::move(labels));
}

}  // namespace

Preconvergence subspace(const Preconvergence& space, const PointSet& s) {
    require(same_carrier(s.carrier(), space.carrier()), Errc::CarrierMismatch, "carrier mismatch");
    require(!s.is_empty(), Errc::EmptySubset, "subspaces are taken on nonempty subsets");
    CarrierRef carrier = sub_carrier(space, s);
    std::vector<int> embed = s.points();  // sub index -> ambient index
    std::uint32_t full = carrier->full_mask();
    std::vector<std::uint32_t> table(full, 0u);
    for (std::uint32_t a = 1; a <= full; ++a) {
        std::uint32_t ambient = 0;
        for (size_t i = 0; i < embed.size(); ++i)
            if ((a >> i) & 1u) ambient |= 1u << embed[i];
        std::uint32_t lim_ambient = space.limits_bits(ambient);
        std::uint32_t lim = 0;
        for (size_t i = 0; i < embed.size(); ++i)
            if ((lim_ambient >> embed[i]) & 1u) lim |= 1u << i;
        table[a - 1] = lim;
    }
    return Preconvergence(std::move(carrier), std::move(table));
}

SpaceMap subspace_inclusion(const Preconvergence& space, const PointSet& s) {
    Preconvergence sub = subspace(space, s);
    return SpaceMap(sub, space, s.points());
}

Preconvergence product(const std::vector<Preconvergence>& factors) {
    require(!factors.empty(), Errc::InvalidArgument, "products need at least one factor");
    std::vector<int> sizes;
    long long total = 1;
    for (const auto& f : factors) {
        sizes.push_back(f.n());
        total *= f.n();
        require(total <= 20, Errc::TooLarge, "product carrier would exceed 20 points");
    }
    int n = static_cast<int>(total);
    std::vector<std::string> labels;
    for (int p = 0; p < n; ++p) {
        // Decode tuple: leftmost factor most significant.
        std::string label = "(";
        int rem = p;
        std::vector<int> coords(factors.size());
        for (int j = static_cast<int>(factors.size()) - 1; j >= 0; --j) {
            coords[static_cast<size_t>(j)] = rem % sizes[static_cast<size_t>(j)];
            rem /= sizes[static_cast<size_t>(j)];
        }
        for (size_t j = 0; j < factors.size(); ++j) {
            if (j) label += ',';
            label += factors[j].carrier()->label(coords[j]);
        }
        label += ')';
        if (factors.size() == 1) label = factors[0].carrier()->label(p);
        labels.push_back(std::move(label));
    }
    CarrierRef carrier = Carrier::make(std::move(labels));

    // Coordinates of every product point, per factor.
    std::vector<std::vector<int>> coord(factors.size(), std::vector<int>(static_cast<size_t>(n)));
    for (int p = 0; p < n; ++p) {
        int rem = p;
        for (int j = static_cast<int>(factors.size()) - 1; j >= 0; --j) {
            coord[static_cast<size_t>(j)][static_cast<size_t>(p)] = rem % sizes[static_cast<size_t>(j)];
            rem /= sizes[static_cast<size_t>(j)];
        }
    }
    std::vector<InitialLeg> legs;
    for (size_t j = 0; j < factors.size(); ++j) legs.push_back({coord[j], factors[j]});
    return initial(legs, carrier);
}

SpaceMap product_projection(const Preconvergence& prod, const std::vector<Preconvergence>& factors,
                            int index) {
    require(index >= 0 && index < static_cast<int>(factors.size()), Errc::InvalidArgument,
            "projection index out of range");
    std::vector<int> sizes;
    for (const auto& f : factors) sizes.push_back(f.n());
    std::vector<int> graph(static_cast<size_t>(prod.n()));
    for (int p = 0; p < prod.n(); ++p) {
        int rem = p;
        int value = 0;
        for (int j = static_cast<int>(factors.size()) - 1; j >= 0; --j) {
            int c = rem % sizes[static_cast<size_t>(j)];
            rem /= sizes[static_cast<size_t>(j)];
            if (j == index) value = c;
        }
        graph[static_cast<size_t>(p)] = value;
    }
    return SpaceMap(prod, factors[static_cast<size_t>(index)], std::move(graph));
}

int product_point(const std::vector<Preconvergence>& factors, const std::vector<int>& coords) {
    require(coords.size() == factors.size(), Errc::ShapeMismatch, "one coordinate per factor");
    int p = 0;
    for (size_t j = 0; j < factors.size(); ++j) {
        require(coords[j] >= 0 && coords[j] < factors[j].n(), Errc::InvalidArgument,
                "coordinate out of range");
        p = p * factors[j].n() + coords[j];
    }
    return p;
}

namespace {

std::vector<int> partition_assignment(const Preconvergence& space,
                                      const std::vector<PointSet>& classes) {
    std::vector<int> cls(static_cast<size_t>(space.n()), -1);
    for (size_t c = 0; c < classes.size(); ++c) {
        require(same_carrier(classes[c].carrier(), space.carrier()), Errc::CarrierMismatch,
                "class lives on a different carrier");
        require(!classes[c].is_empty(), Errc::InvalidPartition, "partition classes must be nonempty");
        for (int p : classes[c].points()) {
            require(cls[static_cast<size_t>(p)] == -1, Errc::InvalidPartition,
                    "point '" + space.carrier()->label(p) + "' is in two classes");
            cls[static_cast<size_t>(p)] = static_cast<int>(c);
        }
    }
    for (int p = 0; p < space.n(); ++p)
        require(cls[static_cast<size_t>(p)] != -1, Errc::InvalidPartition,
                "point '" + space.carrier()->label(p) + "' is in no class");
    return cls;
}

CarrierRef quotient_carrier(const Preconvergence& space, const std::vector<PointSet>& classes) {
    std::vector<std::string> labels;
    for (const auto& c : classes) {
        std::string label;
        for (int p : c.points()) {
            if (!label.empty()) label += '+';
            label += space.carrier()->label(p);
        }
        labels.push_back(std::move(label));
    }
    return Carrier::make(std::move(labels));
}

}  // namespace

Preconvergence quotient(const Preconvergence& space, const std::vector<PointSet>& classes) {
    std::vector<int> cls = partition_assignment(space, classes);
    CarrierRef carrier = quotient_carrier(space, classes);
    return final({FinalLeg{cls, space}}, carrier);
}

SpaceMap quotient_projection(const Preconvergence& space, const std::vector<PointSet>& classes) {
    std::vector<int> cls = partition_assignment(space, classes);
    Preconvergence q = quotient(space, classes);
    return SpaceMap(space, q, std::move(cls));
}

Preconvergence coproduct(const std::vector<Preconvergence>& summands) {
    require(!summands.empty(), Errc::InvalidArgument, "coproducts need at least one summand");
    std::vector<std::string> labels;
    for (size_t j = 0; j < summands.size(); ++j)
        for (int p = 0; p < summands[j].n(); ++p) {
            std::string label = summands[j].carrier()->label(p);
            if (summands.size() > 1) label += "@" + std::to_string(j);
            labels.push_back(std::move(label));
        }
    CarrierRef carrier = Carrier::make(std::move(labels));
    std::vector<FinalLeg> legs;
    int offset = 0;
    for (const auto& s : summands) {
        std::vector<int> graph(static_cast<size_t>(s.n()));
        for (int p = 0; p < s.n(); ++p) graph[static_cast<size_t>(p)] = offset + p;
        legs.push_back({std::move(graph), s});
        offset += s.n();
    }
    return final(legs, carrier);
}

SpaceMap coproduct_inclusion(const Preconvergence& coprod,
                             const std::vector<Preconvergence>& summands, int index) {
    require(index >= 0 && index < static_cast<int>(summands.size()), Errc::InvalidArgument,
            "inclusion index out of range");
    int offset = 0;
    for (int j = 0; j < index; ++j) offset += summands[static_cast<size_t>(j)].n();
    std::vector<int> graph(static_cast<size_t>(summands[static_cast<size_t>(index)].n()));
    for (size_t p = 0; p < graph.size(); ++p) graph[p] = offset + static_cast<int>(p);
    return SpaceMap(summands[static_cast<size_t>(index)], coprod, std::move(graph));
}

bool verify_universal_property(UniversalKind kind, const SpaceMap& g,
                               const std::vector<InitialLeg>& initial_legs,
                               const std::vector<FinalLeg>& final_legs) {
    if (kind == UniversalKind::Initial) {
        // g : Z -> <X, initial(legs)>; compare with continuity of all f_i ∘ g.
        Preconvergence structured = initial(initial_legs, g.target().carrier());
        require(structured == g.target(), Errc::ShapeMismatch,
                "g's target does not carry the initial structure of the legs");
        bool lhs = is_continuous(g).continuous;
        bool rhs = true;
        for (const auto& leg : initial_legs) {
            SpaceMap fi(structured, leg.target, leg.graph);
            rhs = rhs && is_continuous(compose(fi, g)).continuous;
        }
        return lhs == rhs;
    }
    // g : <Y, final(legs)> -> Z; compare with continuity of all g ∘ f_i.
    Preconvergence structured = final(final_legs, g.source().carrier());
    require(structured == g.source(), Errc::ShapeMismatch,
            "g's source does not carry the final structure of the legs");
    bool lhs = is_continuous(g).continuous;
    bool rhs = true;
    for (const auto& leg : final_legs) {
        SpaceMap fi(leg.source, structured, leg.graph);
        rhs = rhs && is_continuous(compose(g, fi)).continuous;
    }
    return lhs == rhs;
}

SpaceMap restrict_domain(const SpaceMap& f, const PointSet& s) {
    Preconvergence sub = subspace(f.source(), s);
    std::vector<int> graph;
    for (int p : s.points()) graph.push_back(f.apply(p));
    return SpaceMap(sub, f.target(), std::move(graph));
}

SpaceMap corestrict(const SpaceMap& f, const PointSet& b) {
    require(same_carrier(b.carrier(), f.target().carrier()), Errc::CarrierMismatch,
            "corestriction set lives on a different carrier");
    require((f.image_bits(f.source().full_mask()) & ~b.bits()) == 0, Errc::ShapeMismatch,
            "corestriction needs f[X] inside the set");
    Preconvergence sub = subspace(f.target(), b);
    std::vector<int> embed = b.points();
    std::vector<int> graph(f.graph().size());
    for (size_t i = 0; i < graph.size(); ++i) {
        auto it = std::find(embed.begin(), embed.end(), f.graph()[i]);
        graph[i] = static_cast<int>(it - embed.begin());
    }
    return SpaceMap(f.source(), sub, std::move(graph));
}

GlueResult glue(const SpaceMap& fa, const SpaceMap& fb, const Preconvergence& x,
                const Preconvergence& y) {
    // Recover the pieces from the subspace carriers of fa and fb.
    auto recover = [&](const SpaceMap& piece) {
        std::uint32_t bits = 0;
        for (const auto& label : piece.source().carrier()->labels()) {
            auto idx = x.carrier()->index_of(label);
            require(idx.has_value(), Errc::ShapeMismatch,
                    "piece domain label '" + label + "' is not a point of X");
            bits |= 1u << *idx;
        }
        PointSet s(x.carrier(), bits);
        require(piece.source() == subspace(x, s), Errc::ShapeMismatch,
                "piece domain does not carry the subspace structure of X");
        require(piece.target() == y, Errc::ShapeMismatch, "piece target is not Y");
        return s;
    };
    PointSet a = recover(fa);
    PointSet b = recover(fb);
    require(a.union_with(b) == PointSet::full(x.carrier()), Errc::CoverGap,
            "the two pieces do not cover X");

    std::vector<int> a_points = a.points(), b_points = b.points();
    std::vector<int> graph(static_cast<size_t>(x.n()), -1);
    for (size_t i = 0; i < a_points.size(); ++i) graph[static_cast<size_t>(a_points[i])] = fa.apply(static_cast<int>(i));
    for (size_t i = 0; i < b_points.size(); ++i) {
        int p = b_points[i];
        int v = fb.apply(static_cast<int>(i));
        if (graph[static_cast<size_t>(p)] != -1)
            require(graph[static_cast<size_t>(p)] == v, Errc::Disagreement,
                    "pieces disagree at '" + x.carrier()->label(p) + "'");
        graph[static_cast<size_t>(p)] = v;
    }

    GlueResult result{SpaceMap(x, y, std::move(graph)), false, false, {}};

    std::vector<std::string> violated;
    AxiomReport rx = axiom_report(x), ry = axiom_report(y);
    if (!rx.is_limit()) violated.push_back("X is not a limit space");
    if (!ry.is_limit()) violated.push_back("Y is not a limit space");
    if (!classify_set(x, a).closed) violated.push_back("piece A is not closed in X");
    if (!classify_set(x, b).closed) violated.push_back("piece B is not closed in X");
    if (!is_continuous(fa).continuous) violated.push_back("piece map on A is not continuous");
    if (!is_continuous(fb).continuous) violated.push_back("piece map on B is not continuous");

    result.hypotheses_hold = violated.empty();
    result.violated_hypotheses = std::move(violated);
    result.continuous = is_continuous(result.glued).continuous;
    if (result.hypotheses_hold && !result.continuous)
        throw Falsification("a glued map with closed pieces over limit spaces came out discontinuous");
    return result;
}

}  // namespace convg
