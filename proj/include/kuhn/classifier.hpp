#pragma once
// Maps an article's typed epistemic assertions to a scenario code, a
// modular ontology and a merit level. Also houses the deterministic cue
// extractor that turns abstract text into assertions via a fixed lexicon.
//
// Tag vocabulary (closed sets):
//   method:      established | improved | new           -> M1..M3
//   observation: confirmatory | anomalous | new         -> N1..N3
//   conclusion:  affirms | extends | questions | criticizes |
//                proposes_correlation | proposes_theory -> P1..P6

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kuhn/error.hpp"
#include "kuhn/scenario.hpp"

namespace kuhn {

enum class AssertionKind { Method, Observation, Conclusion };

inline constexpr std::array<AssertionKind, 3> kAllAssertionKinds = {
    AssertionKind::Method, AssertionKind::Observation,
    AssertionKind::Conclusion};

inline std::string_view assertion_kind_name(AssertionKind k) {
    switch (k) {
        case AssertionKind::Method: return "method";
        case AssertionKind::Observation: return "observation";
        case AssertionKind::Conclusion: return "conclusion";
    }
    return "?";
}

inline std::optional<AssertionKind> parse_assertion_kind(std::string_view s) {
    for (AssertionKind k : kAllAssertionKinds)
        if (assertion_kind_name(k) == s) return k;
    return std::nullopt;
}

inline ElementSet element_set_of(AssertionKind k) {
    switch (k) {
        case AssertionKind::Method: return ElementSet::M;
        case AssertionKind::Observation: return ElementSet::N;
        case AssertionKind::Conclusion: return ElementSet::P;
    }
    return ElementSet::M;
}

namespace detail {

inline constexpr std::array<std::string_view, 3> kMethodLabels = {
    "established", "improved", "new"};
inline constexpr std::array<std::string_view, 3> kObservationLabels = {
    "confirmatory", "anomalous", "new"};
inline constexpr std::array<std::string_view, 6> kConclusionLabels = {
    "affirms",     "extends",
    "questions",   "criticizes",
    "proposes_correlation", "proposes_theory"};

inline std::span<const std::string_view> labels_of(AssertionKind k) {
    switch (k) {
        case AssertionKind::Method: return kMethodLabels;
        case AssertionKind::Observation: return kObservationLabels;
        case AssertionKind::Conclusion: return kConclusionLabels;
    }
    return {};
}

} // namespace detail

// 1-based element index of a label within its kind's tag set, or nullopt
// for a label outside the closed set.
inline std::optional<int> label_index(AssertionKind kind, std::string_view label) {
    auto labels = detail::labels_of(kind);
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i + 1);
    return std::nullopt;
}

inline std::string_view label_text(AssertionKind kind, int index) {
    return detail::labels_of(kind)[static_cast<size_t>(index - 1)];
}

// One typed epistemic claim made by an article.
struct Assertion {
    AssertionKind kind = AssertionKind::Method;
    std::string label;
    std::string evidence; // matched span or quote; may be empty

    friend bool operator==(const Assertion&, const Assertion&) = default;
};

// Factory that enforces the closed tag set.
inline Assertion make_assertion(AssertionKind kind, std::string_view label,
                                std::string_view evidence = {}) {
    if (!label_index(kind, label))
        throw Error(ErrorCode::ParseError,
                    "'" + std::string(label) + "' is not a " +
                        std::string(assertion_kind_name(kind)) + " label");
    return Assertion{kind, std::string(label), std::string(evidence)};
}

// Element code of an assertion: pure lookup of the label within its set.
inline ElementCode code_of_assertion(const Assertion& a) {
    auto idx = label_index(a.kind, a.label);
    if (!idx)
        throw Error(ErrorCode::ParseError,
                    "'" + a.label + "' is not a " +
                        std::string(assertion_kind_name(a.kind)) + " label");
    return ElementCode(element_set_of(a.kind), *idx);
}

// A scholarly article as a bag of assertions.
struct ArticleRecord {
    std::string id;
    std::string title;
    int year = 0; // 1600..2100
    std::string field_id;
    std::vector<Assertion> assertions;
    std::string abstract; // optional

    friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

// Per-kind selection trace: the assertion that won and the ones set aside.
struct AssertionPick {
    Assertion chosen;
    std::vector<Assertion> discarded;
};

struct Classification {
    std::string article_id;
    std::string field_id;
    int year = 0;
    ScenarioCode scenario;
    ModularOntology module = ModularOntology::Formalism;
    int merit = 0;
    std::vector<AssertionPick> diagnostics; // method, observation, conclusion
};

namespace detail {

// Highest element index wins: the most novel / most paradigm-challenging
// claim of each kind dominates. Among equal indices the lexicographically
// first evidence is kept, so the result is independent of input order.
inline AssertionPick pick_for_kind(AssertionKind kind,
                                   std::span<const Assertion> assertions) {
    std::vector<Assertion> of_kind;
    for (const Assertion& a : assertions)
        if (a.kind == kind) of_kind.push_back(a);
    if (of_kind.empty())
        throw Error(ErrorCode::MissingAssertionKind,
                    "article has no " +
                        std::string(assertion_kind_name(kind)) + " assertion");
    std::sort(of_kind.begin(), of_kind.end(),
              [](const Assertion& a, const Assertion& b) {
                  int ia = code_of_assertion(a).index;
                  int ib = code_of_assertion(b).index;
                  if (ia != ib) return ia > ib;
                  return a.evidence < b.evidence;
              });
    AssertionPick pick;
    pick.chosen = of_kind.front();
    pick.discarded.assign(of_kind.begin() + 1, of_kind.end());
    return pick;
}

} // namespace detail

// Classifies one article. Needs at least one assertion of each kind;
// the resulting triple must be a valid scenario (an invalid triple is a
// hard error, never coerced).
inline Classification classify(const ArticleRecord& article) {
    Classification result;
    result.article_id = article.id;
    result.field_id = article.field_id;
    result.year = article.year;

    AssertionPick m = detail::pick_for_kind(AssertionKind::Method, article.assertions);
    AssertionPick n = detail::pick_for_kind(AssertionKind::Observation, article.assertions);
    AssertionPick p = detail::pick_for_kind(AssertionKind::Conclusion, article.assertions);

    ScenarioCode code(code_of_assertion(m.chosen).index,
                      code_of_assertion(n.chosen).index,
                      code_of_assertion(p.chosen).index);
    result.module = module_of(code); // throws InvalidScenario on N1 + P3/P4
    result.scenario = code;
    result.merit = merit_score(code);
    result.diagnostics = {std::move(m), std::move(n), std::move(p)};
    return result;
}

// --- cue lexicon -----------------------------------------------------------

struct Cue {
    std::string phrase; // original casing, as authored
    AssertionKind kind = AssertionKind::Method;
    std::string label;
};

namespace detail {

inline std::string fold_case(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

} // namespace detail

// Cue phrase -> (kind, label) map. Matching is case-insensitive; each cue
// maps to exactly one tag.
class CueLexicon {
public:
    void add(std::string_view phrase, AssertionKind kind, std::string_view label) {
        if (phrase.empty())
            throw Error(ErrorCode::MalformedLexicon, "empty cue phrase");
        if (!label_index(kind, label))
            throw Error(ErrorCode::MalformedLexicon,
                        "'" + std::string(label) + "' is not a " +
                            std::string(assertion_kind_name(kind)) + " label");
        std::string folded = detail::fold_case(phrase);
        for (const auto& [existing, cue] : folded_)
            if (existing == folded)
                throw Error(ErrorCode::MalformedLexicon,
                            "duplicate cue '" + std::string(phrase) + "'");
        folded_.emplace_back(std::move(folded),
                             Cue{std::string(phrase), kind, std::string(label)});
    }

    size_t size() const { return folded_.size(); }
    bool empty() const { return folded_.empty(); }

    // (folded phrase, cue) pairs in insertion order.
    const std::vector<std::pair<std::string, Cue>>& entries() const {
        return folded_;
    }

private:
    std::vector<std::pair<std::string, Cue>> folded_;
};

// Parses lexicon text: one `cue TAB kind TAB label` entry per line, `#`
// comments and blank lines ignored.
inline CueLexicon parse_lexicon(std::string_view text) {
    CueLexicon lex;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos
                                               : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        size_t t1 = line.find('\t');
        size_t t2 = t1 == std::string_view::npos ? std::string_view::npos
                                                 : line.find('\t', t1 + 1);
        if (t2 == std::string_view::npos)
            throw Error(ErrorCode::MalformedLexicon,
                        "line " + std::to_string(line_no) +
                            ": expected `cue TAB kind TAB label`");
        std::string_view phrase = line.substr(0, t1);
        std::string_view kind_s = line.substr(t1 + 1, t2 - t1 - 1);
        std::string_view label = line.substr(t2 + 1);
        auto kind = parse_assertion_kind(kind_s);
        if (!kind)
            throw Error(ErrorCode::MalformedLexicon,
                        "line " + std::to_string(line_no) + ": unknown kind '" +
                            std::string(kind_s) + "'");
        lex.add(phrase, *kind, label);
    }
    return lex;
}

// The built-in cue lexicon, also shipped as data/default_cues.tsv.
inline const CueLexicon& default_lexicon() {
    static const CueLexicon lex = [] {
        CueLexicon l;
        auto method = [&](std::string_view c, std::string_view t) {
            l.add(c, AssertionKind::Method, t);
        };
        auto observation = [&](std::string_view c, std::string_view t) {
            l.add(c, AssertionKind::Observation, t);
        };
        auto conclusion = [&](std::string_view c, std::string_view t) {
            l.add(c, AssertionKind::Conclusion, t);
        };
        method("established method", "established");
        method("standard protocol", "established");
        method("widely used method", "established");
        method("conventional approach", "established");
        method("improved method", "improved");
        method("refined version of", "improved");
        method("adapted the method", "improved");
        method("modified protocol", "improved");
        method("propose a novel method", "new");
        method("new method", "new");
        method("novel approach", "new");
        method("novel algorithm", "new");
        observation("consistent with previous", "confirmatory");
        observation("in agreement with", "confirmatory");
        observation("reproduces the results", "confirmatory");
        observation("corroborates", "confirmatory");
        observation("inconsistent with", "anomalous");
        observation("anomalous", "anomalous");
        observation("unexpected result", "anomalous");
        observation("cannot be explained", "anomalous");
        observation("first observation of", "new");
        observation("previously unreported", "new");
        observation("novel phenomenon", "new");
        conclusion("supports the model", "affirms");
        conclusion("validates the model", "affirms");
        conclusion("extends the model", "extends");
        conclusion("generalizes the model", "extends");
        conclusion("calls into question", "questions");
        conclusion("raises doubts about", "questions");
        conclusion("fails to account for", "criticizes");
        conclusion("refutes", "criticizes");
        conclusion("new correlation", "proposes_correlation");
        conclusion("new scaling law", "proposes_correlation");
        conclusion("new theoretical framework", "proposes_theory");
        conclusion("new paradigm", "proposes_theory");
        return l;
    }();
    return lex;
}

// Case-insensitive leftmost-longest scan over the text. One assertion per
// matched cue, evidence = the matched span in its original casing, output
// ordered by match position. Matches never overlap.
inline std::vector<Assertion> extract_assertions(std::string_view text,
                                                 const CueLexicon& lexicon) {
    std::string folded = detail::fold_case(text);
    std::vector<Assertion> out;
    size_t i = 0;
    while (i < folded.size()) {
        const Cue* best = nullptr;
        size_t best_len = 0;
        for (const auto& [phrase, cue] : lexicon.entries()) {
            if (phrase.size() <= best_len) continue;
            if (folded.compare(i, phrase.size(), phrase) == 0) {
                best = &cue;
                best_len = phrase.size();
            }
        }
        if (best) {
            out.push_back(Assertion{best->kind, best->label,
                                    std::string(text.substr(i, best_len))});
            i += best_len;
        } else {
            ++i;
        }
    }
    return out;
}

} // namespace kuhn
