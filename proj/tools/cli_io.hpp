#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <cosetforge/cosetforge.hpp>

namespace cosetforge::cli {

using json = nlohmann::ordered_json;

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw PreconditionError(what + " is not valid JSON: " + e.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("field '") + key + "': " + e.what());
    }
}

inline std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            detail::require(used == item.size(), "bad integer '" + item + "'");
        } catch (const std::logic_error&) {
            throw PreconditionError("bad integer '" + item + "'");
        }
    }
    return out;
}

inline Partition parse_type(const std::string& text) {
    std::vector<int> parts;
    for (auto v : parse_int_list(text)) {
        detail::require(v >= 0 && v <= 60, "type parts must lie in [0, 60]");
        parts.push_back(static_cast<int>(v));
    }
    return Partition::from_unsorted(std::move(parts));
}

inline json to_json(const GroupSpec& g) { return json{{"p", g.p}, {"type", g.type.parts()}}; }

inline GroupSpec group_from_json(const json& j) {
    auto p = field<std::int64_t>(j, "p");
    auto parts = field<std::vector<int>>(j, "type");
    for (int v : parts) detail::require(v >= 0, "type parts must be non-negative");
    return GroupSpec(p, Partition::from_unsorted(std::move(parts)));
}

inline GroupSpec parse_group(const std::string& text) { return group_from_json(parse_json_text(text, "--group")); }

inline Element element_from_json(const GroupSpec& g, const json& j) {
    Element x;
    try {
        x = j.get<Element>();
    } catch (const json::exception&) {
        throw PreconditionError("element must be an array of integers");
    }
    detail::require(x.size() == g.rank(), "element has the wrong number of coordinates");
    auto m = g.moduli();
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = detail::mod(x[i], m[i]);
    return x;
}

inline json to_json(const Subgroup& h) {
    return json{{"group", to_json(h.group())}, {"generators", h.generators()}, {"order", to_decimal(h.order())}};
}

inline json to_json(const Coset& c) {
    return json{{"subgroup", to_json(c.subgroup())},
                {"representative", c.representative()},
                {"size", to_decimal(c.size())}};
}

/// {"generators": [...], "representative": [...]} in the given group.
inline Coset coset_from_json(const GroupSpec& g, const json& j) {
    std::vector<Element> gens;
    if (j.contains("generators"))
        for (const auto& x : j.at("generators")) gens.push_back(element_from_json(g, x));
    Element rep(g.rank(), 0);
    if (j.contains("representative")) rep = element_from_json(g, j.at("representative"));
    return Coset(Subgroup::from_generators(g, gens), rep);
}

inline SignedCosetCombination combination_from_json(const json& j) {
    SignedCosetCombination comb{group_from_json(field<json>(j, "group")), {}, {}};
    for (const auto& c : field<json>(j, "positives")) comb.positives.push_back(coset_from_json(comb.group, c));
    if (j.contains("negatives"))
        for (const auto& c : j.at("negatives")) comb.negatives.push_back(coset_from_json(comb.group, c));
    return comb;
}

inline json to_json(const BoundValue& b) {
    json out{{"kind", to_string(b.kind)}, {"value", b.str()}};
    if (b.levels > 0) out["symbolic"] = b.symbolic();
    if (b.power) {
        std::ostringstream os;
        os << b.power->p << "^(" << b.power->num << "/" << b.power->den << ")";
        out["exact_form"] = os.str();
    }
    json c = json::object();
    for (const auto& [k, v] : b.constants) c[k] = v;
    out["constants"] = c;
    return out;
}

/// Elements named by their index in the mixed-radix order (last coordinate fastest).
inline std::vector<Element> elements_from_indices(const GroupSpec& g, const std::string& text, std::uint64_t cap) {
    const auto n = g.element_count(cap);
    std::vector<Element> out;
    for (auto i : parse_int_list(text)) {
        detail::require(i >= 0 && static_cast<std::uint64_t>(i) < n, "element index out of range");
        out.push_back(element_at(g, static_cast<std::uint64_t>(i)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// {"source": group, "target": group, "map": [[chi, image], ...]}
inline InjectionTable injection_from_json(const json& j) {
    InjectionTable t{group_from_json(field<json>(j, "source")), group_from_json(field<json>(j, "target")), {}};
    for (const auto& pair : field<json>(j, "map")) {
        detail::require(pair.is_array() && pair.size() == 2, "map entries must be [character, image] pairs");
        t.map.emplace(element_from_json(t.source, pair[0]), element_from_json(t.target, pair[1]));
    }
    t.validate();
    return t;
}

/// A witness is either a list of characters (unit coefficients) or
/// {"coeffs": [[chi, re, im], ...]}.
inline CoefficientVector witness_from_json(const GroupSpec& g, const json& j) {
    if (j.is_array()) {
        std::vector<Element> support;
        for (const auto& x : j) support.push_back(element_from_json(g, x));
        return CoefficientVector::indicator(g, support);
    }
    CoefficientVector v{g, {}};
    for (const auto& entry : field<json>(j, "coeffs")) {
        detail::require(entry.is_array() && (entry.size() == 2 || entry.size() == 3),
                        "coefficient entries must be [chi, re] or [chi, re, im]");
        double re = entry[1].get<double>(), im = entry.size() == 3 ? entry[2].get<double>() : 0.0;
        v.coeffs[element_from_json(g, entry[0])] += Scalar(re, im);
    }
    return v;
}

} // namespace cosetforge::cli
