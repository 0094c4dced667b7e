#pragma once

#include <future>
#include <istream>
#include <string>
#include <vector>

#include "arboreal/serialize.hpp"

namespace arboreal {

/// One regression instance: {mode, p, ell, e?, c, a, n, expected}. expected
/// is {"agreement": bool} or {"error": "indeterminate_regime" | "cap_exceeded" | "precondition"}.
struct CorpusInstance {
    GroundField field;
    Rat c, a;
    long n = 1;
    json expected;
};

struct CorpusOutcome {
    std::size_t line = 0;
    bool passed = false;
    json observed;
};

inline Rat json_rat(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    require(j.is_number_integer(), "corpus: rational fields must be strings or integers");
    return Rat(j.get<long>());
}

inline CorpusInstance parse_corpus_line(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw precondition_error(std::string("corpus: malformed JSON: ") + e.what());
    }
    require(j.is_object(), "corpus: each line must be a JSON object");
    for (const char* key : {"mode", "p", "c", "a", "n", "expected"})
        require(j.contains(key), std::string("corpus: missing field ") + key);
    const auto mode = j["mode"].get<std::string>();
    const long p = j["p"].get<long>();
    CorpusInstance inst;
    if (mode == "wild") {
        inst.field = GroundField::wild(p, j.value("e", 1L), j.value("mu", false));
    } else {
        require(mode == "tame", "corpus: mode must be wild or tame");
        require(j.contains("ell"), "corpus: tame instances need ell");
        inst.field = GroundField::tame(j["ell"].get<long>(), p, j.value("mu", false));
    }
    require(!j.contains("ell") || j["ell"].get<long>() == inst.field.ell, "corpus: ell disagrees with mode");
    inst.c = json_rat(j["c"]);
    inst.a = json_rat(j["a"]);
    inst.n = j["n"].get<long>();
    inst.expected = j["expected"];
    return inst;
}

inline json run_corpus_instance(const CorpusInstance& inst, const OracleConfig& cfg) {
    try {
        return {{"agreement", verify_predictions(inst.field, inst.c, inst.a, inst.n, cfg).agreement}};
    } catch (const indeterminate_regime&) {
        return {{"error", "indeterminate_regime"}};
    } catch (const cap_exceeded&) {
        return {{"error", "cap_exceeded"}};
    } catch (const precondition_error&) {
        return {{"error", "precondition"}};
    }
}

/// Runs every non-blank line of the stream concurrently; results keep line order.
inline std::vector<CorpusOutcome> run_corpus(std::istream& in, const OracleConfig& cfg = {}) {
    std::vector<std::pair<std::size_t, CorpusInstance>> instances;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            instances.emplace_back(line, parse_corpus_line(text));
        } catch (const json::exception& e) {
            throw precondition_error("corpus line " + std::to_string(line) + ": " + e.what());
        }
    }
    std::vector<std::future<json>> jobs;
    for (const auto& [line, inst] : instances)
        jobs.push_back(std::async(std::launch::async, [&inst = inst, &cfg] { return run_corpus_instance(inst, cfg); }));
    std::vector<CorpusOutcome> out;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        CorpusOutcome o;
        o.line = instances[i].first;
        o.observed = jobs[i].get();
        o.passed = o.observed == instances[i].second.expected;
        out.push_back(std::move(o));
    }
    return out;
}

} // namespace arboreal
