#pragma once
// The 12-element scenario algebra.
//
// Three element sets: methods M1..M3, observations N1..N3, conclusions
// P1..P6. A scenario combines one element of each set. A scenario is valid
// unless it pairs a confirmatory observation (N1) with a model-stage
// conclusion (P3 drift, P4 crisis): questioning a model takes an anomalous
// or new observation. That single exclusion leaves 48 valid scenarios out
// of the 54 one-per-set triples, split 18/12/18 across the formalism,
// model and paradigm-shift ontologies.
//
// Element semantics:
//   M1 established method reused   N1 confirmatory observation
//   M2 improved/adapted method     N2 anomalous/uncertain observation
//   M3 new method                  N3 new observation
//   P1 affirms the model           P4 criticizes the model (crisis)
//   P2 extends the model           P5 proposes a new correlation model
//   P3 questions the model (drift) P6 proposes a new theoretical argument

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kuhn/error.hpp"

namespace kuhn {

enum class ElementSet { M, N, P };

inline char element_set_letter(ElementSet s) {
    switch (s) {
        case ElementSet::M: return 'M';
        case ElementSet::N: return 'N';
        case ElementSet::P: return 'P';
    }
    return '?';
}

inline int element_set_size(ElementSet s) {
    return s == ElementSet::P ? 6 : 3;
}

// One of the 12 scenario elements. Canonical text form is the set letter
// followed by the index, e.g. "M2".
struct ElementCode {
    ElementSet set = ElementSet::M;
    int index = 1;

    ElementCode() = default;
    ElementCode(ElementSet s, int i) : set(s), index(i) {
        if (i < 1 || i > element_set_size(s))
            throw Error(ErrorCode::InvalidArgs,
                        std::string(1, element_set_letter(s)) +
                            std::to_string(i) + " is not an element code");
    }

    std::string text() const {
        return std::string(1, element_set_letter(set)) + std::to_string(index);
    }

    friend bool operator==(const ElementCode&, const ElementCode&) = default;
};

inline std::optional<ElementCode> parse_element(std::string_view s) {
    if (s.size() != 2 || s[1] < '1' || s[1] > '9') return std::nullopt;
    ElementSet set;
    switch (s[0]) {
        case 'M': set = ElementSet::M; break;
        case 'N': set = ElementSet::N; break;
        case 'P': set = ElementSet::P; break;
        default: return std::nullopt;
    }
    int index = s[1] - '0';
    if (index > element_set_size(set)) return std::nullopt;
    return ElementCode(set, index);
}

inline std::string_view element_gloss(ElementCode e) {
    static constexpr std::array<std::string_view, 3> m = {
        "established method reused", "improved/adapted method", "new method"};
    static constexpr std::array<std::string_view, 3> n = {
        "confirmatory observation", "anomalous/uncertain observation",
        "new observation"};
    static constexpr std::array<std::string_view, 6> p = {
        "affirms the model",          "extends the model",
        "questions the model (drift)", "criticizes the model (crisis)",
        "proposes a new correlation model",
        "proposes a new theoretical argument"};
    switch (e.set) {
        case ElementSet::M: return m[static_cast<size_t>(e.index - 1)];
        case ElementSet::N: return n[static_cast<size_t>(e.index - 1)];
        case ElementSet::P: return p[static_cast<size_t>(e.index - 1)];
    }
    return "?";
}

// One element drawn from each of the three sets. Range-checked at
// construction, so every ScenarioCode instance is a well-formed triple
// (though not necessarily a *valid* scenario; see is_valid).
struct ScenarioCode {
    int m = 1; // 1..3
    int n = 1; // 1..3
    int p = 1; // 1..6

    ScenarioCode() = default;
    ScenarioCode(int m_, int n_, int p_) : m(m_), n(n_), p(p_) {
        if (m < 1 || m > 3 || n < 1 || n > 3 || p < 1 || p > 6)
            throw Error(ErrorCode::InvalidArgs,
                        "element index out of range in (" + std::to_string(m_) +
                            ", " + std::to_string(n_) + ", " +
                            std::to_string(p_) + ")");
    }

    ElementCode method() const { return {ElementSet::M, m}; }
    ElementCode observation() const { return {ElementSet::N, n}; }
    ElementCode conclusion() const { return {ElementSet::P, p}; }

    // Canonical form "M{m} N{n} P{p}", single spaces, uppercase.
    std::string text() const {
        return "M" + std::to_string(m) + " N" + std::to_string(n) + " P" +
               std::to_string(p);
    }

    friend bool operator==(const ScenarioCode&, const ScenarioCode&) = default;
    friend auto operator<=>(const ScenarioCode&, const ScenarioCode&) = default;
};

// Strict parse of the canonical form; rejects anything else.
inline std::optional<ScenarioCode> try_parse_scenario(std::string_view s) {
    if (s.size() != 8 || s[2] != ' ' || s[5] != ' ') return std::nullopt;
    auto m = parse_element(s.substr(0, 2));
    auto n = parse_element(s.substr(3, 2));
    auto p = parse_element(s.substr(6, 2));
    if (!m || !n || !p) return std::nullopt;
    if (m->set != ElementSet::M || n->set != ElementSet::N ||
        p->set != ElementSet::P)
        return std::nullopt;
    return ScenarioCode(m->index, n->index, p->index);
}

inline ScenarioCode parse_scenario(std::string_view s) {
    auto code = try_parse_scenario(s);
    if (!code)
        throw Error(ErrorCode::ParseError,
                    "'" + std::string(s) + "' is not a scenario code");
    return *code;
}

enum class ModularOntology { Formalism, Model, ParadigmShift };

inline constexpr std::array<ModularOntology, 3> kAllModules = {
    ModularOntology::Formalism, ModularOntology::Model,
    ModularOntology::ParadigmShift};

inline std::string_view module_name(ModularOntology m) {
    switch (m) {
        case ModularOntology::Formalism: return "formalism";
        case ModularOntology::Model: return "model";
        case ModularOntology::ParadigmShift: return "paradigm-shift";
    }
    return "?";
}

inline std::optional<ModularOntology> parse_module(std::string_view s) {
    for (ModularOntology m : kAllModules)
        if (module_name(m) == s) return m;
    return std::nullopt;
}

// Binomial coefficient, exact integer arithmetic. Each intermediate
// division is exact because any i consecutive integers contain a multiple
// of every j <= i.
inline std::uint64_t choose(std::uint64_t n, std::uint64_t r) {
    if (r > n)
        throw Error(ErrorCode::InvalidArgs,
                    "choose(" + std::to_string(n) + ", " + std::to_string(r) +
                        "): r exceeds n");
    if (r > n - r) r = n - r;
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        result = result * (n - r + i) / i;
    }
    return result;
}

// A scenario is invalid iff a model-stage conclusion (P3/P4) rides on a
// confirmatory observation (N1): drift and crisis require an anomalous or
// new observation.
inline bool is_valid(ScenarioCode code) {
    return !((code.p == 3 || code.p == 4) && code.n == 1);
}

namespace detail {
[[noreturn]] inline void throw_invalid_scenario(ScenarioCode code) {
    throw Error(ErrorCode::InvalidScenario,
                code.text() +
                    ": a model-stage conclusion (P3/P4) requires an anomalous "
                    "or new observation (N2/N3)");
}
} // namespace detail

// Which modular ontology owns a valid scenario: affirm/extend conclusions
// belong to formalism, question/criticize to model, new-correlation and
// new-theory to paradigm shift.
inline ModularOntology module_of(ScenarioCode code) {
    if (!is_valid(code)) detail::throw_invalid_scenario(code);
    if (code.p <= 2) return ModularOntology::Formalism;
    if (code.p <= 4) return ModularOntology::Model;
    return ModularOntology::ParadigmShift;
}

// All valid scenarios in lexicographic (m, n, p) order, optionally
// restricted to one modular ontology. The unfiltered list has 48 entries;
// the filtered lists have 18 (formalism), 12 (model) and 18
// (paradigm shift) and reproduce the scenario table column for column.
inline std::vector<ScenarioCode> enumerate_valid(
    std::optional<ModularOntology> module = std::nullopt) {
    std::vector<ScenarioCode> out;
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n)
            for (int p = 1; p <= 6; ++p) {
                ScenarioCode code(m, n, p);
                if (!is_valid(code)) continue;
                if (module && module_of(code) != *module) continue;
                out.push_back(code);
            }
    return out;
}

// Unrestricted 3-subset count of each ontology's element pool: formalism
// and paradigm shift draw from 8 elements (3 M + 3 N + 2 P), model from 7
// (3 M + 2 N + 2 P). These intentionally overcount the valid scenarios;
// valid generation always goes through enumerate_valid.
inline std::uint64_t pool_combinations(ModularOntology module) {
    switch (module) {
        case ModularOntology::Formalism: return choose(8, 3);
        case ModularOntology::Model: return choose(7, 3);
        case ModularOntology::ParadigmShift: return choose(8, 3);
    }
    throw Error(ErrorCode::InvalidArgs, "unknown modular ontology");
}

// Merit weights. The defaults (16, 4, 1) are the smallest base-4-style
// weighting that keeps the score injective over the 48 valid scenarios
// with the conclusion dominant.
struct MeritWeights {
    int p_weight = 16;
    int n_weight = 4;
    int m_weight = 1;
};

// Total-order merit level of a valid scenario. Injective over the 48
// valid scenarios under the default weights, giving 48 distinct levels.
inline int merit_score(ScenarioCode code, MeritWeights w = {}) {
    if (!is_valid(code)) detail::throw_invalid_scenario(code);
    return w.p_weight * code.p + w.n_weight * code.n + w.m_weight * code.m;
}

} // namespace kuhn
