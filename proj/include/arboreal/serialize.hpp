#pragma once

#include <json.hpp>

#include "arboreal/classifier.hpp"
#include "arboreal/oracle.hpp"
#include "arboreal/ramfilt.hpp"
#include "arboreal/residue.hpp"
#include "arboreal/treeauto.hpp"

namespace arboreal {

using json = nlohmann::ordered_json;

inline json to_json_value(const ValExt& v) { return to_string(v); }

inline json to_json_value(const ValMultiset& m) {
    json out = json::object();
    for (const auto& [v, k] : m) out[to_string(v)] = k;
    return out;
}

inline json to_json_value(const Cutoff& c) { return {{"n", c.n}, {"unramified_top", c.unramified_top}}; }

inline json to_json_value(const RegimeVerdict& v) {
    json tags = json::array();
    for (const auto& t : v.tags) tags.push_back({{"name", t.name}, {"statement", t.statement}, {"hypotheses", t.hypotheses}});
    json out;
    out["regime"] = to_string(v.regime);
    out["finite"] = to_string(v.extension_finite);
    out["cutoff"] = v.cutoff ? to_json_value(*v.cutoff) : json(nullptr);
    out["tags"] = tags;
    out["ramification"] = v.ramification ? json(to_string(*v.ramification)) : json(nullptr);
    out["shallow_w"] = v.shallow_w ? json(to_string(*v.shallow_w)) : json(nullptr);
    out["degree_exponent"] = v.degree_exponent ? json(to_string(*v.degree_exponent)) : json(nullptr);
    out["hypotheses"] = v.hypotheses_used;
    return out;
}

inline json to_json_value(const OracleReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"predicted", c.predicted}, {"observed", c.observed}, {"passed", c.passed}});
    return {{"level", r.level},
            {"root_vals", to_json_value(r.root_vals)},
            {"diff_vals", to_json_value(r.diff_vals)},
            {"checks", checks},
            {"agreement", r.agreement},
            {"witnesses", r.witnesses}};
}

inline json to_json_value(const BreakFiltration& f) {
    json out = json::array();
    for (const auto& b : f.breaks()) out.push_back({{"u", to_string(b.u)}, {"order", b.order.get_str()}});
    return out;
}

inline BreakFiltration filtration_from_json(const json& j) {
    require(j.is_array(), "filtration: expected an array of {u, order}");
    std::vector<Break> breaks;
    for (const auto& b : j) {
        require(b.is_object() && b.contains("u") && b.contains("order"), "filtration: each break needs u and order");
        const auto u = b["u"].is_string() ? parse_rat(b["u"].get<std::string>()) : Rat(b["u"].get<long>());
        const auto ord = b["order"].is_string() ? Integer(b["order"].get<std::string>()) : Integer(b["order"].get<long>());
        breaks.push_back({u, ord});
    }
    return BreakFiltration(std::move(breaks));
}

/// {vertex word: permutation}; the root's word is "".
inline json to_json_value(const TreeAut& t) {
    json out = json::object();
    for (std::size_t k = 0; k < t.height(); ++k)
        for (std::size_t v = 0; v < t.level_size(k); ++v) out[vertex_word(t.ell(), k, v)] = t.label(k, v);
    return out;
}

inline json to_json_value(const ResidueReport& r, const FiniteField& field) {
    json orbit = json::array();
    for (auto x : r.orbit_of_zero) orbit.push_back(field.coeffs(x));
    return {{"q", r.q},
            {"orbit_of_zero", orbit},
            {"tail_length", r.tail_length},
            {"cycle_length", r.cycle_length},
            {"a_in_forward_orbit_of_zero", r.a_in_forward_orbit_of_zero},
            {"zero_strictly_preperiodic", r.zero_strictly_preperiodic},
            {"zero_and_a_in_single_cycle_mod_m", r.zero_and_a_in_single_cycle_mod_m},
            {"exact_single_cycle", r.exact_single_cycle ? json(*r.exact_single_cycle) : json(nullptr)}};
}

inline json to_json_value(const RealCheckResult& r) {
    return {{"outcome", to_string(r.outcome)}, {"depth", r.depth}, {"precision_bits", r.precision_bits}};
}

} // namespace arboreal
