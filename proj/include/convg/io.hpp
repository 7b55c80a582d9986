#pragma once

#include <string>
#include <vector>

#include "convg/preconvergence.hpp"

#include <json.hpp>

namespace convg {

/// On-disk description of a space. Subset keys are the member labels in
/// point order joined by single spaces ("a b c"); entries with empty limit
/// sets are omitted from canonical output and default to empty on input.
struct SpaceDocument {
    std::string name;
    std::vector<std::string> points;
    std::vector<std::pair<std::string, std::vector<std::string>>> limits;  // canonical key order
    nlohmann::ordered_json metadata;  // null when absent
};

struct ParsedSpace {
    Preconvergence space;
    std::string name;
    std::vector<std::string> warnings;  // defaulted subset keys, one each
};

SpaceDocument parse_document(const std::string& text);
ParsedSpace document_to_space(const SpaceDocument& doc);
ParsedSpace parse_space(const std::string& text);

SpaceDocument space_to_document(const Preconvergence& space, const std::string& name);
std::string serialize_document(const SpaceDocument& doc);
std::string serialize_space(const Preconvergence& space, const std::string& name);

/// Canonical subset key for a base mask.
std::string subset_key(const CarrierRef& carrier, std::uint32_t bits);

/// The specialization preorder of the induced topology as a digraph: an edge
/// x -> y whenever x lies in the adherence of {y}, i.e. U_y ⊆ U_x. Loops are
/// omitted; node and edge order is deterministic.
std::string export_dot(const FiniteTopology& topology, const std::string& name);
std::string export_dot(const Preconvergence& space, const std::string& name);

}  // namespace convg
