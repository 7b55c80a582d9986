#include "convg/io.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace convg {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

/// SAX pass that only watches for duplicate keys inside each object.
class DuplicateKeyGuard : public nlohmann::json_sax<json> {
public:
    bool null() override { return true; }
    bool boolean(bool) override { return true; }
    bool number_integer(number_integer_t) override { return true; }
    bool number_unsigned(number_unsigned_t) override { return true; }
    bool number_float(number_float_t, const string_t&) override { return true; }
    bool string(string_t&) override { return true; }
    bool binary(binary_t&) override { return true; }
    bool start_object(std::size_t) override {
        stack_.emplace_back();
        return true;
    }
    bool key(string_t& k) override {
        require(stack_.back().insert(k).second, Errc::DuplicateKey,
                "object key '" + k + "' appears twice");
        return true;
    }
    bool end_object() override {
        stack_.pop_back();
        return true;
    }
    bool start_array(std::size_t) override { return true; }
    bool end_array() override { return true; }
    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        throw_error(Errc::SchemaError,
                    "not valid JSON at byte " + std::to_string(position) + ": " + ex.what());
    }

private:
    std::vector<std::set<std::string>> stack_;
};

std::vector<std::string> split_key(const std::string& key) {
    // Single spaces only; empty tokens mean a malformed key.
    std::vector<std::string> out;
    std::string token;
    for (char c : key) {
        if (c == ' ') {
            if (token.empty()) throw_error(Errc::BadSubsetKey, "malformed subset key '" + key + "'");
            out.push_back(token);
            token.clear();
        } else {
            token += c;
        }
    }
    if (token.empty()) throw_error(Errc::BadSubsetKey, "malformed subset key '" + key + "'");
    out.push_back(token);
    return out;
}

}  // namespace

std::string subset_key(const CarrierRef& carrier, std::uint32_t bits) {
    return PointSet(carrier, bits).to_string();
}

SpaceDocument parse_document(const std::string& text) {
    DuplicateKeyGuard guard;
    json::sax_parse(text, &guard);

    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        throw_error(Errc::SchemaError, e.what());
    }
    require(j.is_object(), Errc::SchemaError, "a space document is a JSON object");
    for (const auto& [k, v] : j.items())
        require(k == "name" || k == "points" || k == "limits" || k == "metadata", Errc::SchemaError,
                "unknown field '" + k + "'");
    require(j.contains("name") && j["name"].is_string(), Errc::SchemaError,
            "field 'name' must be a string");
    require(j.contains("points") && j["points"].is_array(), Errc::SchemaError,
            "field 'points' must be an array of labels");
    require(j.contains("limits") && j["limits"].is_object(), Errc::SchemaError,
            "field 'limits' must be an object");

    SpaceDocument doc;
    doc.name = j["name"].get<std::string>();
    for (const auto& p : j["points"]) {
        require(p.is_string(), Errc::SchemaError, "points must be strings");
        doc.points.push_back(p.get<std::string>());
    }
    for (const auto& [key, value] : j["limits"].items()) {
        require(value.is_array(), Errc::SchemaError,
                "limit entry '" + key + "' must be an array of labels");
        std::vector<std::string> labels;
        for (const auto& l : value) {
            require(l.is_string(), Errc::SchemaError, "limit points must be strings");
            labels.push_back(l.get<std::string>());
        }
        doc.limits.emplace_back(key, std::move(labels));
    }
    if (j.contains("metadata")) doc.metadata = j["metadata"];
    return doc;
}

ParsedSpace document_to_space(const SpaceDocument& doc) {
    CarrierRef carrier;
    try {
        carrier = Carrier::make(doc.points);
    } catch (const Error& e) {
        if (e.code() == Errc::InvalidArgument) throw_error(Errc::SchemaError, e.what());
        throw;
    }
    std::uint32_t full = carrier->full_mask();
    std::vector<std::uint32_t> table(full, 0u);
    std::vector<bool> given(static_cast<size_t>(full) + 1, false);

    for (const auto& [key, labels] : doc.limits) {
        std::vector<std::string> tokens = split_key(key);
        std::uint32_t bits = 0;
        int last_index = -1;
        for (const auto& t : tokens) {
            auto idx = carrier->index_of(t);
            require(idx.has_value(), Errc::UnknownLabel, "subset key names unknown point '" + t + "'");
            require(*idx > last_index, Errc::BadSubsetKey,
                    "subset key '" + key + "' is not in canonical point order");
            last_index = *idx;
            bits |= 1u << *idx;
        }
        require(!given[bits], Errc::DuplicateKey, "subset '" + key + "' listed twice");
        given[bits] = true;
        std::uint32_t lim = 0;
        for (const auto& l : labels) {
            auto idx = carrier->index_of(l);
            require(idx.has_value(), Errc::UnknownLabel, "limit names unknown point '" + l + "'");
            lim |= 1u << *idx;
        }
        table[bits - 1] = lim;
    }

    std::vector<std::string> warnings;
    for (std::uint32_t m = 1; m <= full && full != 0; ++m)
        if (!given[m])
            warnings.push_back("subset '" + subset_key(carrier, m) + "' defaulted to an empty limit set");
    return ParsedSpace{Preconvergence(carrier, std::move(table)), doc.name, std::move(warnings)};
}

ParsedSpace parse_space(const std::string& text) { return document_to_space(parse_document(text)); }

SpaceDocument space_to_document(const Preconvergence& space, const std::string& name) {
    SpaceDocument doc;
    doc.name = name;
    doc.points = space.carrier()->labels();
    // Keys ascending by size, then by the member index sequence.
    std::vector<std::uint32_t> masks = nonempty_subset_masks(space.n());
    std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
        return a < b;
    });
    for (std::uint32_t m : masks) {
        std::uint32_t lim = space.limits_bits(m);
        if (lim == 0) continue;
        std::vector<std::string> labels;
        for (int x = 0; x < space.n(); ++x)
            if ((lim >> x) & 1u) labels.push_back(space.carrier()->label(x));
        doc.limits.emplace_back(subset_key(space.carrier(), m), std::move(labels));
    }
    return doc;
}

std::string serialize_document(const SpaceDocument& doc) {
    ojson j;
    j["name"] = doc.name;
    j["points"] = doc.points;
    ojson limits = ojson::object();
    for (const auto& [key, labels] : doc.limits) limits[key] = labels;
    j["limits"] = std::move(limits);
    if (!doc.metadata.is_null()) j["metadata"] = doc.metadata;
    return j.dump(2) + "\n";
}

std::string serialize_space(const Preconvergence& space, const std::string& name) {
    return serialize_document(space_to_document(space, name));
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string specialization_dot(const CarrierRef& carrier,
                               const std::vector<std::uint32_t>& min_nbhd,
                               const std::string& name) {
    std::ostringstream os;
    os << "digraph " << dot_quote(name.empty() ? "specialization" : name) << " {\n";
    for (int x = 0; x < carrier->n(); ++x) os << "  " << dot_quote(carrier->label(x)) << ";\n";
    for (int x = 0; x < carrier->n(); ++x)
        for (int y = 0; y < carrier->n(); ++y) {
            if (x == y) continue;
            // x -> y iff x is in the closure of {y}, i.e. y ∈ U_x.
            if ((min_nbhd[static_cast<size_t>(x)] >> y) & 1u)
                os << "  " << dot_quote(carrier->label(x)) << " -> " << dot_quote(carrier->label(y))
                   << ";\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace

std::string export_dot(const FiniteTopology& topology, const std::string& name) {
    std::vector<std::uint32_t> nbhd;
    for (int x = 0; x < topology.carrier()->n(); ++x)
        nbhd.push_back(topology.min_neighborhood_bits(x));
    return specialization_dot(topology.carrier(), nbhd, name);
}

std::string export_dot(const Preconvergence& space, const std::string& name) {
    return export_dot(open_sets(space), name);
}

}  // namespace convg
