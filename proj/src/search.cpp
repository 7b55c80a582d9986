#include "convg/search.hpp"

#include <algorithm>

#include "convg/io.hpp"

namespace convg {

std::uint64_t Rng::mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t counter) {
    return Rng{mix(seed ^ mix(counter + 0x1234567887654321ull))};
}

std::uint64_t Rng::next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

CarrierRef generated_carrier(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        if (n <= 26)
            labels.push_back(std::string(1, static_cast<char>('a' + i)));
        else
            labels.push_back("p" + std::to_string(i));
    }
    return Carrier::make(std::move(labels));
}

SpaceEnumerator::SpaceEnumerator(int n, std::vector<Axiom> constraints)
    : carrier_(generated_carrier(n)), constraints_(std::move(constraints)) {
    require(n >= 0 && n <= 3, Errc::TooLarge,
            "space enumeration visits (2^n)^(2^n - 1) tables; capped at n = 3");
    table_.assign(carrier_->full_mask(), 0u);
}

bool SpaceEnumerator::advance() {
    // Odometer over table entries, entry for base {first label} fastest.
    std::uint32_t full = carrier_->full_mask();
    for (size_t i = 0; i < table_.size(); ++i) {
        if (table_[i] < full) {
            ++table_[i];
            return true;
        }
        table_[i] = 0;
    }
    return false;
}

std::optional<Preconvergence> SpaceEnumerator::next() {
    while (!done_) {
        if (started_) {
            if (!advance()) {
                done_ = true;
                break;
            }
        }
        started_ = true;
        ++inspected_;
        Preconvergence candidate(carrier_, table_);
        bool ok = true;
        for (Axiom a : constraints_)
            if (!check_axiom(candidate, a).holds) {
                ok = false;
                break;
            }
        if (ok) return candidate;
    }
    return std::nullopt;
}

namespace {

bool wants(const std::vector<Axiom>& constraints, Axiom a) {
    return std::find(constraints.begin(), constraints.end(), a) != constraints.end();
}

std::vector<std::uint32_t> centered_closure(std::vector<std::uint32_t> t, int n) {
    for (int x = 0; x < n; ++x) t[(1u << x) - 1] |= 1u << x;
    return t;
}

std::vector<std::uint32_t> isotone_closure(std::vector<std::uint32_t> t, int n) {
    std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
    std::vector<std::uint32_t> out(t.size());
    for (std::uint32_t b = 1; b <= full && full != 0; ++b) {
        std::uint32_t lim = 0;
        for (std::uint32_t a = b; a <= full; ++a)
            if ((a & b) == b) lim |= t[a - 1];
        out[b - 1] = lim;
    }
    return out;
}

std::vector<std::uint32_t> stable_closure(std::vector<std::uint32_t> t, int n) {
    std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::uint32_t a = 1; a <= full && full != 0; ++a)
            for (std::uint32_t b = a; b <= full; ++b) {
                std::uint32_t add = (t[a - 1] & t[b - 1]) & ~t[(a | b) - 1];
                if (add) {
                    t[(a | b) - 1] |= add;
                    changed = true;
                }
            }
    }
    return t;
}

}  // namespace

Preconvergence random_space_stream(int n, Rng& rng, const std::vector<Axiom>& constraints) {
    for (Axiom a : constraints)
        require(a == Axiom::Centered || a == Axiom::Isotone || a == Axiom::Stable,
                Errc::InvalidArgument,
                "random generation enforces only centered/isotone/stable constraints");
    CarrierRef carrier = generated_carrier(n);
    std::uint32_t full = carrier->full_mask();
    std::vector<std::uint32_t> t(full);
    for (std::uint32_t a = 1; a <= full && full != 0; ++a)
        t[a - 1] = static_cast<std::uint32_t>(rng.next()) & full;

    if (wants(constraints, Axiom::Centered)) t = centered_closure(std::move(t), n);
    if (wants(constraints, Axiom::Isotone)) t = isotone_closure(std::move(t), n);
    if (wants(constraints, Axiom::Stable)) {
        if (wants(constraints, Axiom::Centered) && wants(constraints, Axiom::Isotone))
            return limit_modification(Preconvergence(carrier, std::move(t)));
        t = stable_closure(std::move(t), n);
    }
    return Preconvergence(carrier, std::move(t));
}

Preconvergence random_space(int n, std::uint64_t seed, const std::vector<Axiom>& constraints) {
    Rng rng = Rng::stream(seed, 0);
    return random_space_stream(n, rng, constraints);
}

std::optional<AxiomWitness> eval_nonstable(const Preconvergence& space) {
    AxiomCheck c = check_axiom(space, Axiom::Stable);
    if (c.holds) return std::nullopt;
    return c.witness;
}

std::optional<QuotientViolation> eval_quotient_limit(const Preconvergence& space,
                                                     const std::vector<PointSet>& classes) {
    Preconvergence q = quotient(space, classes);
    for (Axiom a : {Axiom::Centered, Axiom::Isotone, Axiom::Stable}) {
        AxiomCheck c = check_axiom(q, a);
        if (!c.holds) return QuotientViolation{axiom_name(a), c.witness};
    }
    return std::nullopt;
}

std::vector<std::vector<std::uint32_t>> all_partitions(int n) {
    std::vector<std::vector<std::uint32_t>> out;
    if (n == 0) return out;
    // Restricted growth strings: a[i] <= 1 + max(a[0..i-1]).
    std::vector<int> a(static_cast<size_t>(n), 0);
    while (true) {
        int classes = 1 + *std::max_element(a.begin(), a.end());
        std::vector<std::uint32_t> masks(static_cast<size_t>(classes), 0u);
        for (int i = 0; i < n; ++i) masks[static_cast<size_t>(a[static_cast<size_t>(i)])] |= 1u << i;
        out.push_back(std::move(masks));
        int i = n - 1;
        while (i > 0) {
            int cap = 0;
            for (int j = 0; j < i; ++j) cap = std::max(cap, a[static_cast<size_t>(j)]);
            if (a[static_cast<size_t>(i)] <= cap) break;
            --i;
        }
        if (i == 0) break;
        ++a[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) a[static_cast<size_t>(j)] = 0;
    }
    return out;
}

std::optional<PastingViolation> eval_pasting(const Preconvergence& x, const Preconvergence& y,
                                             PastingMode mode) {
    int n = x.n(), yn = y.n();
    if (n == 0 || yn == 0) return std::nullopt;
    std::uint32_t full = x.full_mask();

    std::vector<bool> closed(static_cast<size_t>(full) + 1, false);
    std::vector<Preconvergence> subs;
    subs.reserve(full);
    for (std::uint32_t s = 1; s <= full; ++s) {
        closed[s] = classify_set(x, PointSet(x.carrier(), s)).closed;
        subs.push_back(subspace(x, PointSet(x.carrier(), s)));
    }

    // Continuity of a piece depends only on (mask, values on the mask).
    long long piece_codes = 1;
    for (int i = 0; i < n; ++i) piece_codes *= yn;
    std::vector<std::vector<signed char>> piece_memo(
        static_cast<size_t>(full) + 1, std::vector<signed char>(static_cast<size_t>(piece_codes), -1));
    auto piece_continuous = [&](std::uint32_t mask, const std::vector<int>& graph) {
        long long code = 0;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1u) code = code * yn + graph[static_cast<size_t>(i)];
        signed char& slot = piece_memo[mask][static_cast<size_t>(code)];
        if (slot < 0) {
            std::vector<int> restricted;
            for (int i = 0; i < n; ++i)
                if ((mask >> i) & 1u) restricted.push_back(graph[static_cast<size_t>(i)]);
            slot = is_continuous(SpaceMap(subs[mask - 1], y, std::move(restricted))).continuous ? 1 : 0;
        }
        return slot == 1;
    };

    std::vector<int> graph(static_cast<size_t>(n), 0);
    while (true) {
        ContinuityCheck total = is_continuous(SpaceMap(x, y, graph));
        if (!total.continuous) {
            for (std::uint32_t a = 1; a <= full; ++a)
                for (std::uint32_t b = 1; b <= full; ++b) {
                    if ((a | b) != full) continue;
                    bool cover_ok = mode == PastingMode::NeedsClosed ? !(closed[a] && closed[b])
                                                                     : (closed[a] && closed[b]);
                    if (!cover_ok) continue;
                    if (piece_continuous(a, graph) && piece_continuous(b, graph))
                        return PastingViolation{a, b, graph, *total.witness};
                }
        }
        int i = n - 1;
        while (i >= 0 && graph[static_cast<size_t>(i)] == yn - 1) {
            graph[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++graph[static_cast<size_t>(i)];
    }
    return std::nullopt;
}

namespace {

Witness make_base_witness(const SearchSpec& spec, std::uint64_t counter) {
    Witness w;
    w.property = spec.property;
    w.seed = spec.seed;
    w.counter = counter;
    return w;
}

std::optional<Witness> search_stability(const SearchSpec& spec) {
    std::vector<Axiom> constraints = spec.constraints;
    for (Axiom a : {Axiom::Centered, Axiom::Isotone})
        if (!wants(constraints, a)) constraints.push_back(a);
    // Exhaustive at exactly max_points, deterministic enumeration order.
    SpaceEnumerator en(spec.max_points, constraints);
    std::uint64_t evaluated = 0;
    while (evaluated < spec.budget) {
        auto candidate = en.next();
        if (!candidate) break;
        ++evaluated;
        if (auto bad = eval_nonstable(*candidate)) {
            Witness w = make_base_witness(spec, evaluated - 1);
            w.spaces.emplace_back("space", *candidate);
            w.axiom_witness = *bad;
            w.detail = "centered+isotone table failing stability";
            return w;
        }
    }
    return std::nullopt;
}

std::optional<Witness> search_quotient_limit(const SearchSpec& spec) {
    for (std::uint64_t counter = 0; counter < spec.budget; ++counter) {
        Rng rng = Rng::stream(spec.seed, counter);
        int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_points)));
        Preconvergence L =
            random_space_stream(n, rng, {Axiom::Centered, Axiom::Isotone, Axiom::Stable});
        for (const auto& masks : all_partitions(n)) {
            std::vector<PointSet> classes;
            for (std::uint32_t m : masks) classes.emplace_back(L.carrier(), m);
            if (auto v = eval_quotient_limit(L, classes)) {
                Witness w = make_base_witness(spec, counter);
                w.spaces.emplace_back("space", L);
                w.partition = masks;
                w.failed_axiom = v->failed_axiom;
                w.axiom_witness = v->witness;
                w.detail = "limit space whose quotient fails " + v->failed_axiom;
                return w;
            }
        }
    }
    return std::nullopt;
}

std::optional<Witness> search_pasting(const SearchSpec& spec, PastingMode mode) {
    int target_cap = std::min(spec.max_points, 3);
    for (std::uint64_t counter = 0; counter < spec.budget; ++counter) {
        Rng rng = Rng::stream(spec.seed, counter);
        int nx = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_points)));
        int ny = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(target_cap)));
        Preconvergence X =
            mode == PastingMode::NeedsClosed
                ? random_space_stream(nx, rng, {Axiom::Centered, Axiom::Isotone, Axiom::Stable})
                : random_space_stream(nx, rng, {Axiom::Centered, Axiom::Isotone});
        Preconvergence Y =
            mode == PastingMode::NeedsClosed
                ? random_space_stream(ny, rng, {Axiom::Centered, Axiom::Isotone, Axiom::Stable})
                : random_space_stream(ny, rng, {Axiom::Centered, Axiom::Isotone});
        if (mode == PastingMode::NeedsStability) {
            bool xs = check_axiom(X, Axiom::Stable).holds;
            bool ys = check_axiom(Y, Axiom::Stable).holds;
            if (xs && ys) continue;  // stability hypothesis not relaxed; next instance
        }
        if (auto v = eval_pasting(X, Y, mode)) {
            Witness w = make_base_witness(spec, counter);
            w.spaces.emplace_back("X", X);
            w.spaces.emplace_back("Y", Y);
            w.cover = {v->cover_a, v->cover_b};
            w.map_graph = v->map_graph;
            w.continuity_witness = v->continuity_witness;
            if (mode == PastingMode::NeedsClosed) {
                w.detail = "continuous pieces on a non-closed cover glue discontinuously";
            } else {
                bool xs = check_axiom(X, Axiom::Stable).holds;
                std::string side = xs ? "Y" : (check_axiom(Y, Axiom::Stable).holds ? "X" : "X and Y");
                w.detail = "closed cover, continuous pieces, discontinuous glue; stability fails on " +
                           side;
            }
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Witness> search_counterexample(const SearchSpec& spec) {
    require(spec.max_points >= 1, Errc::InvalidArgument, "max_points must be at least 1");
    require(spec.budget >= 1, Errc::InvalidArgument, "budget must be at least 1");
    if (spec.property == "stability") return search_stability(spec);
    if (spec.property == "quotient-limit") return search_quotient_limit(spec);
    if (spec.property == "pasting-closed") return search_pasting(spec, PastingMode::NeedsClosed);
    if (spec.property == "pasting-stability")
        return search_pasting(spec, PastingMode::NeedsStability);
    throw_error(Errc::InvalidArgument, "unknown property '" + spec.property + "'");
}

namespace {

bool same_axiom_witness(const AxiomWitness& a, const AxiomWitness& b) {
    return a.set_a == b.set_a && a.set_b == b.set_b && a.point == b.point;
}

const Preconvergence* find_space(const Witness& w, const std::string& name) {
    for (const auto& [n, s] : w.spaces)
        if (n == name) return &s;
    return nullptr;
}

bool replay_pasting(const Witness& w, PastingMode mode) {
    const Preconvergence* X = find_space(w, "X");
    const Preconvergence* Y = find_space(w, "Y");
    if (!X || !Y || w.cover.size() != 2) return false;
    PointSet a(X->carrier(), w.cover[0]), b(X->carrier(), w.cover[1]);
    if (a.union_with(b) != PointSet::full(X->carrier())) return false;
    bool ca = classify_set(*X, a).closed, cb = classify_set(*X, b).closed;
    if (mode == PastingMode::NeedsClosed) {
        if (ca && cb) return false;
        if (!axiom_report(*X).is_limit() || !axiom_report(*Y).is_limit()) return false;
    } else {
        if (!ca || !cb) return false;
        AxiomReport rx = axiom_report(*X), ry = axiom_report(*Y);
        if (!rx.is_convergence() || !ry.is_convergence()) return false;
        if (rx.stable.holds && ry.stable.holds) return false;
    }
    SpaceMap total(*X, *Y, w.map_graph);
    SpaceMap fa = restrict_domain(total, a);
    SpaceMap fb = restrict_domain(total, b);
    if (!is_continuous(fa).continuous || !is_continuous(fb).continuous) return false;
    ContinuityCheck c = is_continuous(total);
    return !c.continuous && w.continuity_witness && c.witness &&
           c.witness->base == w.continuity_witness->base &&
           c.witness->point == w.continuity_witness->point;
}

}  // namespace

bool replay_witness(const Witness& w) {
    if (w.property == "stability") {
        const Preconvergence* L = find_space(w, "space");
        if (!L) return false;
        if (!check_axiom(*L, Axiom::Centered).holds || !check_axiom(*L, Axiom::Isotone).holds)
            return false;
        auto bad = eval_nonstable(*L);
        return bad && same_axiom_witness(*bad, w.axiom_witness);
    }
    if (w.property == "quotient-limit") {
        const Preconvergence* L = find_space(w, "space");
        if (!L) return false;
        if (!axiom_report(*L).is_limit()) return false;
        std::vector<PointSet> classes;
        for (std::uint32_t m : w.partition) classes.emplace_back(L->carrier(), m);
        auto v = eval_quotient_limit(*L, classes);
        return v && v->failed_axiom == w.failed_axiom && same_axiom_witness(v->witness, w.axiom_witness);
    }
    if (w.property == "pasting-closed") return replay_pasting(w, PastingMode::NeedsClosed);
    if (w.property == "pasting-stability") return replay_pasting(w, PastingMode::NeedsStability);
    return false;
}

std::string witness_to_json(const Witness& w) {
    nlohmann::ordered_json j;
    j["property"] = w.property;
    j["seed"] = w.seed;
    j["counter"] = w.counter;
    nlohmann::ordered_json spaces = nlohmann::ordered_json::array();
    for (const auto& [name, space] : w.spaces) {
        nlohmann::ordered_json entry;
        entry["role"] = name;
        entry["document"] = nlohmann::ordered_json::parse(serialize_space(space, name));
        spaces.push_back(std::move(entry));
    }
    j["spaces"] = std::move(spaces);
    const CarrierRef& carrier = w.spaces.empty() ? nullptr : w.spaces.front().second.carrier();
    if (!w.cover.empty() && carrier) {
        j["cover"] = {{"A", subset_key(carrier, w.cover[0])}, {"B", subset_key(carrier, w.cover[1])}};
    }
    if (!w.map_graph.empty() && w.spaces.size() >= 2) {
        std::string m;
        const CarrierRef& src = w.spaces[0].second.carrier();
        const CarrierRef& dst = w.spaces[1].second.carrier();
        for (size_t i = 0; i < w.map_graph.size(); ++i) {
            if (i) m += ',';
            m += src->label(static_cast<int>(i)) + ":" + dst->label(w.map_graph[i]);
        }
        j["map"] = m;
    }
    if (!w.partition.empty() && carrier) {
        std::string p;
        for (size_t i = 0; i < w.partition.size(); ++i) {
            if (i) p += '|';
            p += subset_key(carrier, w.partition[i]);
        }
        j["partition"] = p;
    }
    if (!w.failed_axiom.empty()) j["failed_axiom"] = w.failed_axiom;
    if (carrier) {
        // Quotient witnesses live on the quotient carrier, rebuilt here.
        CarrierRef witness_carrier = carrier;
        if (w.property == "quotient-limit" && !w.partition.empty()) {
            std::vector<PointSet> classes;
            for (std::uint32_t m : w.partition)
                classes.emplace_back(w.spaces.front().second.carrier(), m);
            witness_carrier = quotient(w.spaces.front().second, classes).carrier();
        }
        nlohmann::ordered_json aw = nlohmann::ordered_json::object();
        if (w.axiom_witness.set_a) aw["A"] = subset_key(witness_carrier, *w.axiom_witness.set_a);
        if (w.axiom_witness.set_b) aw["B"] = subset_key(witness_carrier, *w.axiom_witness.set_b);
        if (w.axiom_witness.point) aw["x"] = witness_carrier->label(*w.axiom_witness.point);
        if (!aw.empty()) j["axiom_witness"] = std::move(aw);
    }
    if (w.continuity_witness && carrier) {
        j["continuity_witness"] = {{"A", subset_key(carrier, w.continuity_witness->base)},
                                   {"point_index", w.continuity_witness->point}};
    }
    if (!w.detail.empty()) j["detail"] = w.detail;
    return j.dump(2) + "\n";
}

}  // namespace convg
