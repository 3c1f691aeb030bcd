#pragma once
// Corpus store: ingests line-delimited article records, classifies them
// eagerly, answers queries, computes per-field statistics and timelines,
// and builds/serializes the knowledge graph.
//
// Persistence is a directory of line-delimited JSON files. Articles are
// the source of truth; classifications, timelines and the graph are
// deterministic derivations, written alongside for auditability and
// recomputed on load.
//
// Concurrency: single writer. All query methods are const and safe to
// call from any number of readers once mutation has stopped.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kuhn/classifier.hpp"
#include "kuhn/error.hpp"
#include "kuhn/ontology.hpp"
#include "kuhn/scenario.hpp"
#include "kuhn/tracker.hpp"

namespace kuhn {

struct RejectedLine {
    std::size_t line = 0;
    std::string reason;
};

// Accepted records that could not be classified stay in the corpus; the
// report carries their classification error.
struct UnclassifiedRecord {
    std::size_t line = 0;
    std::string id;
    std::string reason;
};

struct IngestReport {
    std::size_t accepted = 0;
    std::vector<RejectedLine> rejected;
    std::vector<UnclassifiedRecord> unclassified;
};

struct QueryFilter {
    std::optional<std::string> field;
    std::optional<ModularOntology> module;
    std::optional<ScenarioCode> scenario;
    std::optional<int> year_min;
    std::optional<int> year_max;
    std::optional<int> merit_min;
    std::optional<int> merit_max;
};

struct FieldStats {
    std::size_t articles = 0;
    std::size_t classified = 0;
    std::size_t unclassified = 0;
    std::map<ModularOntology, std::size_t> by_module;
    std::map<std::string, std::size_t> by_scenario; // canonical code text
    std::map<int, std::size_t> merit_histogram;
};

struct KnowledgeGraph {
    std::vector<Entity> nodes; // sorted by id
    std::vector<Edge> edges;   // sorted by (src, dst, relation, provenance)
};

namespace detail {

inline std::tuple<const std::string&, const std::string&, RelationKind,
                  const std::string&>
edge_key(const Edge& e) {
    return {e.src, e.dst, e.relation, e.provenance};
}

inline bool edge_less(const Edge& a, const Edge& b) {
    return edge_key(a) < edge_key(b);
}

// Node label when an assertion carries no evidence text.
inline std::string default_entity_label(const Assertion& a) {
    if (a.kind == AssertionKind::Method) return a.label + " method";
    if (a.kind == AssertionKind::Observation) return a.label + " observation";
    if (a.label == "affirms") return "affirming argument";
    if (a.label == "extends") return "extending argument";
    if (a.label == "questions") return "questioning argument";
    if (a.label == "criticizes") return "critical argument";
    if (a.label == "proposes_correlation") return "proposed correlation model";
    return "new theoretical argument"; // proposes_theory
}

inline EntityKind entity_kind_of(const Assertion& a) {
    switch (a.kind) {
        case AssertionKind::Method: return EntityKind::Method;
        case AssertionKind::Observation: return EntityKind::Observation;
        case AssertionKind::Conclusion:
            return a.label == "proposes_correlation"
                       ? EntityKind::CorrelationModel
                       : EntityKind::KeyArgument;
    }
    return EntityKind::KeyArgument;
}

} // namespace detail

// Record shape: required keys id, title, year, field, assertions (array
// of {kind, label, evidence?}); optional abstract. Extra keys are ignored.
inline ArticleRecord parse_article_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "record is not an object");
    for (const char* key : {"id", "title", "year", "field", "assertions"})
        if (!j.contains(key))
            throw Error(ErrorCode::ParseError,
                        "missing required key '" + std::string(key) + "'");

    ArticleRecord article;
    if (!j["id"].is_string() || j["id"].get<std::string>().empty())
        throw Error(ErrorCode::ParseError, "id must be a non-empty string");
    article.id = j["id"].get<std::string>();
    if (!j["title"].is_string())
        throw Error(ErrorCode::ParseError, "title must be a string");
    article.title = j["title"].get<std::string>();
    if (!j["year"].is_number_integer())
        throw Error(ErrorCode::ParseError, "year must be an integer");
    article.year = j["year"].get<int>();
    if (article.year < 1600 || article.year > 2100)
        throw Error(ErrorCode::ParseError,
                    "year " + std::to_string(article.year) +
                        " outside 1600..2100");
    if (!j["field"].is_string() || j["field"].get<std::string>().empty())
        throw Error(ErrorCode::ParseError, "field must be a non-empty string");
    article.field_id = j["field"].get<std::string>();
    if (!j["assertions"].is_array())
        throw Error(ErrorCode::ParseError, "assertions must be an array");
    for (const auto& ja : j["assertions"]) {
        if (!ja.is_object() || !ja.contains("kind") || !ja.contains("label") ||
            !ja["kind"].is_string() || !ja["label"].is_string())
            throw Error(ErrorCode::ParseError,
                        "assertion must be an object with kind and label");
        auto kind = parse_assertion_kind(ja["kind"].get<std::string>());
        if (!kind)
            throw Error(ErrorCode::ParseError,
                        "unknown assertion kind '" +
                            ja["kind"].get<std::string>() + "'");
        std::string evidence;
        if (ja.contains("evidence")) {
            if (!ja["evidence"].is_string())
                throw Error(ErrorCode::ParseError, "evidence must be a string");
            evidence = ja["evidence"].get<std::string>();
        }
        article.assertions.push_back(
            make_assertion(*kind, ja["label"].get<std::string>(), evidence));
    }
    if (j.contains("abstract")) {
        if (!j["abstract"].is_string())
            throw Error(ErrorCode::ParseError, "abstract must be a string");
        article.abstract = j["abstract"].get<std::string>();
    }
    return article;
}

inline nlohmann::ordered_json article_to_json(const ArticleRecord& a) {
    nlohmann::ordered_json j;
    j["id"] = a.id;
    j["title"] = a.title;
    j["year"] = a.year;
    j["field"] = a.field_id;
    j["assertions"] = nlohmann::ordered_json::array();
    for (const Assertion& assertion : a.assertions) {
        nlohmann::ordered_json ja;
        ja["kind"] = std::string(assertion_kind_name(assertion.kind));
        ja["label"] = assertion.label;
        if (!assertion.evidence.empty()) ja["evidence"] = assertion.evidence;
        j["assertions"].push_back(ja);
    }
    if (!a.abstract.empty()) j["abstract"] = a.abstract;
    return j;
}

// Canonical graph document: fixed key order, arrays sorted, so equal
// graphs serialize to identical bytes.
inline std::string export_graph(const KnowledgeGraph& graph) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const Entity& e : graph.nodes) {
        nlohmann::ordered_json n;
        n["id"] = e.id;
        n["kind"] = std::string(entity_kind_name(e.kind));
        n["label"] = e.label;
        n["field"] = e.field_id;
        doc["nodes"].push_back(n);
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : graph.edges) {
        nlohmann::ordered_json je;
        je["src"] = e.src;
        je["dst"] = e.dst;
        je["relation"] = std::string(relation_kind_name(e.relation));
        je["provenance"] = e.provenance;
        doc["edges"].push_back(je);
    }
    return doc.dump(2) + "\n";
}

inline KnowledgeGraph import_graph(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError,
                    std::string("graph document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
        throw Error(ErrorCode::ParseError,
                    "graph document needs nodes and edges arrays");
    KnowledgeGraph graph;
    for (const auto& n : doc["nodes"]) {
        auto kind = parse_entity_kind(n.at("kind").get<std::string>());
        if (!kind)
            throw Error(ErrorCode::ParseError,
                        "unknown entity kind '" +
                            n.at("kind").get<std::string>() + "'");
        graph.nodes.push_back(Entity{n.at("id").get<std::string>(), *kind,
                                     n.at("label").get<std::string>(),
                                     n.value("field", std::string{})});
    }
    for (const auto& e : doc["edges"]) {
        auto relation = parse_relation_kind(e.at("relation").get<std::string>());
        if (!relation)
            throw Error(ErrorCode::ParseError,
                        "unknown relation '" +
                            e.at("relation").get<std::string>() + "'");
        graph.edges.push_back(Edge{e.at("src").get<std::string>(),
                                   e.at("dst").get<std::string>(), *relation,
                                   e.value("provenance", std::string{})});
    }
    return graph;
}

class Corpus {
public:
    Corpus() = default;

    // --- ingest ------------------------------------------------------------

    // Parses line-delimited JSON records. Blank lines and `#` comments are
    // skipped; one bad line rejects only that line. Records whose
    // assertion list is empty but whose abstract is present are run
    // through the cue extractor when a lexicon is given. Every stored
    // record is classified eagerly; classification failures keep the
    // record and land in the report.
    IngestReport ingest_stream(std::istream& in,
                               const CueLexicon* lexicon = nullptr) {
        IngestReport report;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string_view trimmed = line;
            while (!trimmed.empty() &&
                   (trimmed.front() == ' ' || trimmed.front() == '\t' ||
                    trimmed.front() == '\r'))
                trimmed.remove_prefix(1);
            while (!trimmed.empty() && trimmed.back() == '\r')
                trimmed.remove_suffix(1);
            if (trimmed.empty() || trimmed.front() == '#') continue;

            ArticleRecord article;
            try {
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(trimmed);
                } catch (const nlohmann::json::exception& e) {
                    throw Error(ErrorCode::ParseError, e.what());
                }
                article = parse_article_json(j);
            } catch (const Error& e) {
                report.rejected.push_back({line_no, e.what()});
                continue;
            }
            if (articles_.contains(article.id)) {
                report.rejected.push_back(
                    {line_no, std::string(error_code_name(ErrorCode::DuplicateId)) +
                                  ": '" + article.id + "' already ingested"});
                continue;
            }
            if (article.assertions.empty() && !article.abstract.empty() && lexicon)
                article.assertions = extract_assertions(article.abstract, *lexicon);

            ++report.accepted;
            const std::string id = article.id;
            articles_.emplace(id, std::move(article));
            try {
                classifications_.emplace(id, classify(articles_.at(id)));
            } catch (const Error& e) {
                classification_errors_[id] = e.what();
                report.unclassified.push_back({line_no, id, e.what()});
            }
        }
        return report;
    }

    IngestReport ingest(const std::filesystem::path& path,
                        const CueLexicon* lexicon = nullptr) {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorCode::IoFailure,
                        "cannot read '" + path.string() + "'");
        return ingest_stream(in, lexicon);
    }

    // --- lookups -----------------------------------------------------------

    std::size_t article_count() const { return articles_.size(); }
    std::size_t classified_count() const { return classifications_.size(); }

    const ArticleRecord* find_article(const std::string& id) const {
        auto it = articles_.find(id);
        return it == articles_.end() ? nullptr : &it->second;
    }

    const Classification* find_classification(const std::string& id) const {
        auto it = classifications_.find(id);
        return it == classifications_.end() ? nullptr : &it->second;
    }

    // id -> classification error, for records that failed to classify.
    const std::map<std::string, std::string>& classification_errors() const {
        return classification_errors_;
    }

    std::vector<std::string> fields() const {
        std::set<std::string> seen;
        for (const auto& [id, a] : articles_) seen.insert(a.field_id);
        return {seen.begin(), seen.end()};
    }

    bool has_field(const std::string& field_id) const {
        for (const auto& [id, a] : articles_)
            if (a.field_id == field_id) return true;
        return false;
    }

    // --- queries -----------------------------------------------------------

    // Conjunctive filter over classifications; stable (year, article id)
    // order.
    std::vector<Classification> query(const QueryFilter& filter) const {
        std::vector<Classification> out;
        for (const auto& [id, c] : classifications_) {
            if (filter.field && c.field_id != *filter.field) continue;
            if (filter.module && c.module != *filter.module) continue;
            if (filter.scenario && !(c.scenario == *filter.scenario)) continue;
            if (filter.year_min && c.year < *filter.year_min) continue;
            if (filter.year_max && c.year > *filter.year_max) continue;
            if (filter.merit_min && c.merit < *filter.merit_min) continue;
            if (filter.merit_max && c.merit > *filter.merit_max) continue;
            out.push_back(c);
        }
        std::sort(out.begin(), out.end(),
                  [](const Classification& a, const Classification& b) {
                      return std::tie(a.year, a.article_id) <
                             std::tie(b.year, b.article_id);
                  });
        return out;
    }

    FieldStats stats(const std::string& field_id) const {
        if (!has_field(field_id))
            throw Error(ErrorCode::UnknownField,
                        "no article in field '" + field_id + "'");
        FieldStats s;
        for (ModularOntology m : kAllModules) s.by_module[m] = 0;
        for (const auto& [id, a] : articles_) {
            if (a.field_id != field_id) continue;
            ++s.articles;
            const Classification* c = find_classification(id);
            if (!c) {
                ++s.unclassified;
                continue;
            }
            ++s.classified;
            ++s.by_module[c->module];
            ++s.by_scenario[c->scenario.text()];
            ++s.merit_histogram[c->merit];
        }
        return s;
    }

    FieldTimeline timeline(const std::string& field_id,
                           const TrackerConfig& config = {}) const {
        if (!has_field(field_id))
            throw Error(ErrorCode::UnknownField,
                        "no article in field '" + field_id + "'");
        QueryFilter filter;
        filter.field = field_id;
        std::vector<Classification> stream = query(filter);
        return track(stream, config);
    }

    // --- knowledge graph ---------------------------------------------------

    // Deterministic graph over the whole corpus. One field node per field,
    // one article node per article linked to its field, one node per
    // asserted content entity deduplicated by (field, kind, label), plus a
    // per-field model node (and paradigm node once anything new is
    // proposed) that the content hangs off.
    KnowledgeGraph build_graph() const {
        std::map<std::string, Entity> nodes;
        std::vector<Edge> edges;

        auto ensure = [&](Entity e) -> const std::string& {
            return nodes.emplace(e.id, std::move(e)).first->first;
        };
        auto model_node = [&](const std::string& field) {
            return ensure({"model:" + field, EntityKind::Model,
                           "established model", field});
        };
        auto paradigm_node = [&](const std::string& field) {
            return ensure({"paradigm:" + field, EntityKind::Paradigm,
                           "new paradigm", field});
        };

        for (const auto& [id, article] : articles_) {
            const std::string& field = article.field_id;
            std::string field_node =
                ensure({"field:" + field, EntityKind::Field, field, field});
            std::string article_node =
                ensure({"article:" + id, EntityKind::Article,
                        article.title.empty() ? id : article.title, field});
            edges.push_back(
                {article_node, field_node, RelationKind::ElementOf, id});

            for (const Assertion& a : article.assertions) {
                EntityKind kind = detail::entity_kind_of(a);
                std::string label = a.evidence.empty()
                                        ? detail::default_entity_label(a)
                                        : a.evidence;
                std::string node_id = std::string(entity_kind_name(kind)) +
                                      ":" + field + ":" + label;
                ensure({node_id, kind, label, field});

                bool challenges =
                    (a.kind == AssertionKind::Observation &&
                     a.label == "anomalous") ||
                    (a.kind == AssertionKind::Conclusion &&
                     (a.label == "questions" || a.label == "criticizes"));
                bool proposes =
                    a.kind == AssertionKind::Conclusion &&
                    (a.label == "proposes_correlation" ||
                     a.label == "proposes_theory");
                if (proposes) {
                    edges.push_back({node_id, paradigm_node(field),
                                     RelationKind::ElementOf, id});
                } else if (challenges) {
                    edges.push_back({node_id, model_node(field),
                                     RelationKind::Limits, id});
                } else {
                    edges.push_back({node_id, model_node(field),
                                     RelationKind::ElementOf, id});
                }
            }
        }

        KnowledgeGraph graph;
        for (auto& [id, entity] : nodes) graph.nodes.push_back(entity);
        std::sort(edges.begin(), edges.end(), detail::edge_less);
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        graph.edges = std::move(edges);
        return graph;
    }

    // --- persistence -------------------------------------------------------

    static bool store_exists(const std::filesystem::path& dir) {
        return std::filesystem::exists(dir / "articles.jsonl");
    }

    void save(const std::filesystem::path& dir) const {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw Error(ErrorCode::IoFailure,
                        "cannot create '" + dir.string() + "': " + ec.message());

        auto open = [&](const char* name) {
            std::ofstream out(dir / name);
            if (!out)
                throw Error(ErrorCode::IoFailure,
                            "cannot write '" + (dir / name).string() + "'");
            return out;
        };

        {
            std::ofstream out = open("articles.jsonl");
            for (const auto& [id, a] : articles_)
                out << article_to_json(a).dump() << "\n";
        }
        {
            std::ofstream out = open("classifications.jsonl");
            for (const auto& [id, c] : classifications_) {
                nlohmann::ordered_json j;
                j["article_id"] = c.article_id;
                j["field"] = c.field_id;
                j["year"] = c.year;
                j["scenario"] = c.scenario.text();
                j["module"] = std::string(module_name(c.module));
                j["merit"] = c.merit;
                out << j.dump() << "\n";
            }
        }
        {
            std::ofstream out = open("timelines.jsonl");
            for (const std::string& field : fields()) {
                FieldTimeline tl = timeline(field);
                nlohmann::ordered_json j;
                j["field"] = field;
                j["entries"] = nlohmann::ordered_json::array();
                for (const TimelineEntry& e : tl.entries) {
                    nlohmann::ordered_json je;
                    je["article_id"] = e.article_id;
                    je["year"] = e.year;
                    je["scenario"] = e.scenario.text();
                    je["indicator"] = std::string(stage_name(e.indicator));
                    je["stage"] = std::string(stage_name(e.machine));
                    j["entries"].push_back(je);
                }
                out << j.dump() << "\n";
            }
        }
        open("graph.json") << export_graph(build_graph());
    }

    // Loads articles and re-derives everything else; classification is
    // deterministic, so the loaded corpus answers every query like the
    // saved one.
    void load(const std::filesystem::path& dir) {
        std::ifstream in(dir / "articles.jsonl");
        if (!in)
            throw Error(ErrorCode::IoFailure,
                        "cannot read '" + (dir / "articles.jsonl").string() + "'");
        articles_.clear();
        classifications_.clear();
        classification_errors_.clear();
        IngestReport report = ingest_stream(in);
        if (!report.rejected.empty())
            throw Error(ErrorCode::ParseError,
                        "corpus store corrupt: line " +
                            std::to_string(report.rejected.front().line) +
                            " of articles.jsonl: " +
                            report.rejected.front().reason);
    }

private:
    std::map<std::string, ArticleRecord> articles_;
    std::map<std::string, Classification> classifications_;
    std::map<std::string, std::string> classification_errors_;
};

} // namespace kuhn
