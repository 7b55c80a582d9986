#include "convg/carrier.hpp"

#include <algorithm>
#include <unordered_set>

namespace convg {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::EmptyBase: return "EmptyBase";
        case Errc::CarrierMismatch: return "CarrierMismatch";
        case Errc::EmptyPreimage: return "EmptyPreimage";
        case Errc::NoFIP: return "NoFIP";
        case Errc::EmptyDomain: return "EmptyDomain";
        case Errc::DomainMismatch: return "DomainMismatch";
        case Errc::NotDirected: return "NotDirected";
        case Errc::NotAConvergence: return "NotAConvergence";
        case Errc::EmptySubset: return "EmptySubset";
        case Errc::InvalidPartition: return "InvalidPartition";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::CoverGap: return "CoverGap";
        case Errc::Disagreement: return "Disagreement";
        case Errc::NotContinuous: return "NotContinuous";
        case Errc::NotValidated: return "NotValidated";
        case Errc::TooLarge: return "TooLarge";
        case Errc::NotIsotone: return "NotIsotone";
        case Errc::PreconditionFailed: return "PreconditionFailed";
        case Errc::SchemaError: return "SchemaError";
        case Errc::UnknownLabel: return "UnknownLabel";
        case Errc::DuplicateKey: return "DuplicateKey";
        case Errc::BadSubsetKey: return "BadSubsetKey";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

Carrier::Carrier(std::vector<std::string> labels) : labels_(std::move(labels)) {}

CarrierRef Carrier::make(std::vector<std::string> labels) {
    require(labels.size() <= 20, Errc::TooLarge,
            "carriers are limited to 20 points (limit tables have 2^n - 1 entries)");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        require(!l.empty(), Errc::InvalidArgument, "point labels must be nonempty");
        require(l.find_first_of(" \t\n\r") == std::string::npos, Errc::InvalidArgument,
                "point label contains whitespace: '" + l + "'");
        require(seen.insert(l).second, Errc::InvalidArgument, "duplicate point label: '" + l + "'");
    }
    return CarrierRef(new Carrier(std::move(labels)));
}

std::optional<int> Carrier::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<int>(it - labels_.begin());
}

PointSet::PointSet(CarrierRef carrier, std::uint32_t bits) : carrier_(std::move(carrier)), bits_(bits) {
    require(carrier_ != nullptr, Errc::InvalidArgument, "PointSet needs a carrier");
    require((bits_ & ~carrier_->full_mask()) == 0, Errc::InvalidArgument,
            "PointSet bits refer to indices outside the carrier");
}

PointSet PointSet::full(CarrierRef carrier) {
    std::uint32_t m = carrier->full_mask();
    return PointSet(std::move(carrier), m);
}

PointSet PointSet::singleton(CarrierRef carrier, int point) {
    require(point >= 0 && point < carrier->n(), Errc::InvalidArgument, "point index out of range");
    return PointSet(std::move(carrier), 1u << point);
}

PointSet PointSet::of(CarrierRef carrier, const std::vector<std::string>& labels) {
    std::uint32_t bits = 0;
    for (const auto& l : labels) {
        auto i = carrier->index_of(l);
        require(i.has_value(), Errc::UnknownLabel, "no point named '" + l + "'");
        bits |= 1u << *i;
    }
    return PointSet(std::move(carrier), bits);
}

bool PointSet::is_subset_of(const PointSet& other) const {
    check_same_carrier(*this, other);
    return (bits_ & ~other.bits_) == 0;
}

PointSet PointSet::union_with(const PointSet& other) const {
    check_same_carrier(*this, other);
    return PointSet(carrier_, bits_ | other.bits_);
}

PointSet PointSet::intersect(const PointSet& other) const {
    check_same_carrier(*this, other);
    return PointSet(carrier_, bits_ & other.bits_);
}

PointSet PointSet::difference(const PointSet& other) const {
    check_same_carrier(*this, other);
    return PointSet(carrier_, bits_ & ~other.bits_);
}

PointSet PointSet::complement() const {
    return PointSet(carrier_, carrier_->full_mask() & ~bits_);
}

std::vector<int> PointSet::points() const {
    std::vector<int> out;
    for (int i = 0; i < carrier_->n(); ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

std::string PointSet::to_string() const {
    std::string out;
    for (int i : points()) {
        if (!out.empty()) out += ' ';
        out += carrier_->label(i);
    }
    return out;
}

void check_same_carrier(const PointSet& a, const PointSet& b) {
    require(same_carrier(a.carrier(), b.carrier()), Errc::CarrierMismatch,
            "point sets live on different carriers");
}

PointMap::PointMap(CarrierRef source, CarrierRef target, std::vector<int> graph)
    : source_(std::move(source)), target_(std::move(target)), graph_(std::move(graph)) {
    require(static_cast<int>(graph_.size()) == source_->n(), Errc::InvalidArgument,
            "map graph must assign every source point");
    for (int v : graph_)
        require(v >= 0 && v < target_->n(), Errc::InvalidArgument, "map value out of target range");
}

PointMap PointMap::identity(CarrierRef carrier) {
    std::vector<int> g(static_cast<size_t>(carrier->n()));
    for (int i = 0; i < carrier->n(); ++i) g[static_cast<size_t>(i)] = i;
    return PointMap(carrier, carrier, std::move(g));
}

PointMap PointMap::constant(CarrierRef source, CarrierRef target, int value) {
    std::vector<int> g(static_cast<size_t>(source->n()), value);
    return PointMap(std::move(source), std::move(target), std::move(g));
}

PointMap PointMap::from_labels(CarrierRef source, CarrierRef target,
                               const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<int> g(static_cast<size_t>(source->n()), -1);
    for (const auto& [from, to] : pairs) {
        auto i = source->index_of(from);
        require(i.has_value(), Errc::UnknownLabel, "no source point named '" + from + "'");
        auto j = target->index_of(to);
        require(j.has_value(), Errc::UnknownLabel, "no target point named '" + to + "'");
        require(g[static_cast<size_t>(*i)] == -1, Errc::DuplicateKey,
                "source point '" + from + "' assigned twice");
        g[static_cast<size_t>(*i)] = *j;
    }
    for (int i = 0; i < source->n(); ++i)
        require(g[static_cast<size_t>(i)] != -1, Errc::InvalidArgument,
                "map does not assign point '" + source->label(i) + "'");
    return PointMap(std::move(source), std::move(target), std::move(g));
}

std::uint32_t PointMap::image_bits(std::uint32_t bits) const {
    std::uint32_t out = 0;
    for (int i = 0; i < source_->n(); ++i)
        if ((bits >> i) & 1u) out |= 1u << graph_[static_cast<size_t>(i)];
    return out;
}

std::uint32_t PointMap::preimage_bits(std::uint32_t bits) const {
    std::uint32_t out = 0;
    for (int i = 0; i < source_->n(); ++i)
        if ((bits >> graph_[static_cast<size_t>(i)]) & 1u) out |= 1u << i;
    return out;
}

PointSet PointMap::image_of(const PointSet& s) const {
    require(same_carrier(s.carrier(), source_), Errc::CarrierMismatch,
            "set lives on a different carrier than the map's source");
    return PointSet(target_, image_bits(s.bits()));
}

PointSet PointMap::preimage_of(const PointSet& s) const {
    require(same_carrier(s.carrier(), target_), Errc::CarrierMismatch,
            "set lives on a different carrier than the map's target");
    return PointSet(source_, preimage_bits(s.bits()));
}

bool PointMap::is_onto() const {
    return image_bits(source_->full_mask()) == target_->full_mask();
}

PointMap PointMap::compose_after(const PointMap& g) const {
    require(same_carrier(g.target(), source_), Errc::ShapeMismatch,
            "composition needs matching middle carriers");
    std::vector<int> h(g.graph().size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = graph_[static_cast<size_t>(g.graph()[i])];
    return PointMap(g.source(), target_, std::move(h));
}

std::vector<std::uint32_t> nonempty_subset_masks(int n) {
    std::vector<std::uint32_t> out;
    std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
    for (std::uint32_t m = 1; m <= full && full != 0; ++m) out.push_back(m);
    return out;
}

}  // namespace convg
