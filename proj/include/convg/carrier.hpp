#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "convg/error.hpp"

namespace convg {

class Carrier;
using CarrierRef = std::shared_ptr<const Carrier>;

/// A finite universe of named points. Labels are pairwise distinct and the
/// indices 0..n-1 are in bijection with them. Immutable after construction.
class Carrier {
public:
    static CarrierRef make(std::vector<std::string> labels);

    int n() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(static_cast<size_t>(i)); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<int> index_of(const std::string& label) const;

    /// Bitmask with all n points set.
    std::uint32_t full_mask() const { return n() == 0 ? 0u : ((1u << n()) - 1u); }

    bool operator==(const Carrier& other) const { return labels_ == other.labels_; }
    bool operator!=(const Carrier& other) const { return !(*this == other); }

private:
    explicit Carrier(std::vector<std::string> labels);
    std::vector<std::string> labels_;
};

inline bool same_carrier(const CarrierRef& a, const CarrierRef& b) {
    return a == b || (a && b && *a == *b);
}

/// A subset of a carrier, bit-indexed by label order. Equality is
/// extensional: same carrier, same bits.
class PointSet {
public:
    PointSet(CarrierRef carrier, std::uint32_t bits);

    static PointSet empty(CarrierRef carrier) { return PointSet(std::move(carrier), 0u); }
    static PointSet full(CarrierRef carrier);
    static PointSet singleton(CarrierRef carrier, int point);
    static PointSet of(CarrierRef carrier, const std::vector<std::string>& labels);

    const CarrierRef& carrier() const { return carrier_; }
    std::uint32_t bits() const { return bits_; }
    int size() const { return std::popcount(bits_); }
    bool is_empty() const { return bits_ == 0; }
    bool contains(int point) const { return (bits_ >> point) & 1u; }

    bool is_subset_of(const PointSet& other) const;
    PointSet union_with(const PointSet& other) const;
    PointSet intersect(const PointSet& other) const;
    PointSet difference(const PointSet& other) const;
    PointSet complement() const;

    std::vector<int> points() const;
    /// Labels of the members joined by single spaces, in label order.
    std::string to_string() const;

    bool operator==(const PointSet& other) const {
        return same_carrier(carrier_, other.carrier_) && bits_ == other.bits_;
    }
    bool operator!=(const PointSet& other) const { return !(*this == other); }

private:
    CarrierRef carrier_;
    std::uint32_t bits_;
};

/// Checks the two sets live on equal carriers, throws CarrierMismatch otherwise.
void check_same_carrier(const PointSet& a, const PointSet& b);

/// A total map between carriers, given pointwise.
class PointMap {
public:
    PointMap(CarrierRef source, CarrierRef target, std::vector<int> graph);

    static PointMap identity(CarrierRef carrier);
    static PointMap constant(CarrierRef source, CarrierRef target, int value);
    /// Builds from label pairs like {{"a","b"},{"b","b"}}; every source label
    /// must be assigned exactly once.
    static PointMap from_labels(CarrierRef source, CarrierRef target,
                                const std::vector<std::pair<std::string, std::string>>& pairs);

    const CarrierRef& source() const { return source_; }
    const CarrierRef& target() const { return target_; }
    const std::vector<int>& graph() const { return graph_; }
    int apply(int point) const { return graph_.at(static_cast<size_t>(point)); }

    std::uint32_t image_bits(std::uint32_t bits) const;
    std::uint32_t preimage_bits(std::uint32_t bits) const;
    PointSet image_of(const PointSet& s) const;
    PointSet preimage_of(const PointSet& s) const;
    bool is_onto() const;

    PointMap compose_after(const PointMap& g) const;  // this ∘ g

private:
    CarrierRef source_;
    CarrierRef target_;
    std::vector<int> graph_;
};

/// All 2^n - 1 nonempty subset masks of an n-point carrier, ascending.
std::vector<std::uint32_t> nonempty_subset_masks(int n);

}  // namespace convg
