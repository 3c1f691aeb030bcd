#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "kuhn/corpus.hpp"

using namespace kuhn;
namespace fs = std::filesystem;

namespace {

std::string record_line(const std::string& id, int year,
                        const std::string& field, int m, int n, int p) {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["title"] = "Article " + id;
    j["year"] = year;
    j["field"] = field;
    j["assertions"] = nlohmann::json::array(
        {{{"kind", "method"},
          {"label", std::string(label_text(AssertionKind::Method, m))}},
         {{"kind", "observation"},
          {"label", std::string(label_text(AssertionKind::Observation, n))}},
         {{"kind", "conclusion"},
          {"label", std::string(label_text(AssertionKind::Conclusion, p))}}});
    return j.dump();
}

std::string fixture(const char* name) {
    return std::string(KONTOLOGY_DATA_DIR) + "/" + name;
}

Corpus corpus48() {
    Corpus c;
    IngestReport r = c.ingest(fixture("scenarios48.jsonl"));
    REQUIRE(r.accepted == 48);
    REQUIRE(r.rejected.empty());
    REQUIRE(r.unclassified.empty());
    return c;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::current_path() / ("tmp_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("ingest: line bookkeeping", "[corpus]") {
    SECTION("three records plus a truncated line") {
        std::istringstream in(record_line("a1", 2000, "f", 1, 1, 1) + "\n" +
                              record_line("a2", 2001, "f", 2, 2, 3) + "\n" +
                              record_line("a3", 2002, "f", 3, 3, 6) + "\n" +
                              "{\"id\": \"a4\", \"title\":\n");
        Corpus c;
        IngestReport r = c.ingest_stream(in);
        CHECK(r.accepted == 3);
        REQUIRE(r.rejected.size() == 1);
        CHECK(r.rejected[0].line == 4);
        CHECK(c.article_count() == 3);
        CHECK(c.find_article("a2") != nullptr);
        CHECK(c.find_article("a4") == nullptr);
    }
    SECTION("duplicate id on line 2") {
        std::istringstream in(record_line("dup", 2000, "f", 1, 1, 1) + "\n" +
                              record_line("dup", 2001, "f", 2, 2, 3) + "\n");
        Corpus c;
        IngestReport r = c.ingest_stream(in);
        CHECK(r.accepted == 1);
        REQUIRE(r.rejected.size() == 1);
        CHECK(r.rejected[0].line == 2);
        CHECK(r.rejected[0].reason.find("DuplicateId") != std::string::npos);
        CHECK(c.find_article("dup")->year == 2000);
    }
    SECTION("comments and blank lines are not counted") {
        std::istringstream in("# header\n\n" +
                              record_line("a1", 2000, "f", 1, 1, 1) +
                              "\n   \nnot json\n");
        Corpus c;
        IngestReport r = c.ingest_stream(in);
        CHECK(r.accepted == 1);
        REQUIRE(r.rejected.size() == 1);
        CHECK(r.rejected[0].line == 5);
    }
    SECTION("missing file") {
        Corpus c;
        try {
            c.ingest("no/such/file.jsonl");
            FAIL("expected IoFailure");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::IoFailure);
        }
    }
    SECTION("year bounds are enforced") {
        std::istringstream in(record_line("old", 1500, "f", 1, 1, 1) + "\n");
        Corpus c;
        IngestReport r = c.ingest_stream(in);
        CHECK(r.accepted == 0);
        REQUIRE(r.rejected.size() == 1);
        CHECK(r.rejected[0].reason.find("1600") != std::string::npos);
    }
}

TEST_CASE("ingest: unclassifiable records stay queryable", "[corpus]") {
    nlohmann::ordered_json j;
    j["id"] = "partial";
    j["title"] = "No conclusion";
    j["year"] = 2010;
    j["field"] = "f";
    j["assertions"] = nlohmann::json::array(
        {{{"kind", "method"}, {"label", "established"}},
         {{"kind", "observation"}, {"label", "confirmatory"}}});
    std::istringstream in(j.dump() + "\n");

    Corpus c;
    IngestReport r = c.ingest_stream(in);
    CHECK(r.accepted == 1);
    CHECK(r.rejected.empty());
    REQUIRE(r.unclassified.size() == 1);
    CHECK(r.unclassified[0].id == "partial");
    CHECK(r.unclassified[0].reason.find("conclusion") != std::string::npos);

    CHECK(c.find_article("partial") != nullptr);
    CHECK(c.find_classification("partial") == nullptr);
    FieldStats s = c.stats("f");
    CHECK(s.articles == 1);
    CHECK(s.classified == 0);
    CHECK(s.unclassified == 1);
}

TEST_CASE("ingest: cue extraction fills empty assertion lists", "[corpus]") {
    nlohmann::ordered_json j;
    j["id"] = "abstract-only";
    j["title"] = "From text";
    j["year"] = 2015;
    j["field"] = "f";
    j["assertions"] = nlohmann::json::array();
    j["abstract"] =
        "We propose a novel method. The data are inconsistent with prior "
        "fits, suggesting a new paradigm.";

    SECTION("with a lexicon the record classifies") {
        std::istringstream in(j.dump() + "\n");
        Corpus c;
        IngestReport r = c.ingest_stream(in, &default_lexicon());
        CHECK(r.accepted == 1);
        CHECK(r.unclassified.empty());
        const Classification* cl = c.find_classification("abstract-only");
        REQUIRE(cl != nullptr);
        CHECK(cl->scenario.text() == "M3 N2 P6");
    }
    SECTION("without a lexicon it stays unclassified") {
        std::istringstream in(j.dump() + "\n");
        Corpus c;
        IngestReport r = c.ingest_stream(in);
        CHECK(r.accepted == 1);
        CHECK(r.unclassified.size() == 1);
    }
}

TEST_CASE("48-scenario fixture: stats split 18/12/18", "[corpus]") {
    Corpus c = corpus48();
    FieldStats s = c.stats("synthetic");
    CHECK(s.articles == 48);
    CHECK(s.classified == 48);
    CHECK(s.unclassified == 0);
    CHECK(s.by_module.at(ModularOntology::Formalism) == 18);
    CHECK(s.by_module.at(ModularOntology::Model) == 12);
    CHECK(s.by_module.at(ModularOntology::ParadigmShift) == 18);

    CHECK(s.by_scenario.size() == 48);
    for (const auto& [code, count] : s.by_scenario) CHECK(count == 1);
    // 48 distinct merit levels, one article each.
    CHECK(s.merit_histogram.size() == 48);

    std::size_t module_total = 0;
    for (const auto& [m, n] : s.by_module) module_total += n;
    CHECK(module_total == s.classified);
    std::size_t scenario_total = 0;
    for (const auto& [code, n] : s.by_scenario) scenario_total += n;
    CHECK(scenario_total == s.classified);
}

TEST_CASE("stats: duplicates accumulate per scenario", "[corpus]") {
    std::istringstream in(record_line("a", 2000, "f", 1, 1, 1) + "\n" +
                          record_line("b", 2001, "f", 1, 1, 1) + "\n");
    Corpus c;
    c.ingest_stream(in);
    FieldStats s = c.stats("f");
    CHECK(s.by_scenario.at("M1 N1 P1") == 2);
    CHECK(s.merit_histogram.at(21) == 2);
}

TEST_CASE("stats: unknown field", "[corpus]") {
    Corpus c = corpus48();
    try {
        c.stats("astrology");
        FAIL("expected UnknownField");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownField);
    }
}

TEST_CASE("query: conjunctive filters with stable order", "[corpus]") {
    Corpus c = corpus48();

    CHECK(c.query({}).size() == 48);

    QueryFilter by_module;
    by_module.module = ModularOntology::ParadigmShift;
    CHECK(c.query(by_module).size() == 18);
    by_module.module = ModularOntology::Model;
    CHECK(c.query(by_module).size() == 12);

    QueryFilter by_scenario;
    by_scenario.scenario = ScenarioCode(1, 2, 3);
    auto hits = c.query(by_scenario);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].scenario == ScenarioCode(1, 2, 3));

    QueryFilter by_year;
    by_year.year_min = 2000;
    by_year.year_max = 2009;
    CHECK(c.query(by_year).size() == 10);

    QueryFilter by_merit;
    by_merit.merit_min = 21;
    by_merit.merit_max = 21;
    REQUIRE(c.query(by_merit).size() == 1);
    CHECK(c.query(by_merit)[0].scenario == ScenarioCode(1, 1, 1));

    QueryFilter conjunctive;
    conjunctive.field = "synthetic";
    conjunctive.module = ModularOntology::Formalism;
    conjunctive.merit_min = 100;
    for (const Classification& hit : c.query(conjunctive)) {
        CHECK(hit.module == ModularOntology::Formalism);
        CHECK(hit.merit >= 100);
    }

    QueryFilter none;
    none.field = "elsewhere";
    CHECK(c.query(none).empty());

    auto all = c.query({});
    for (size_t i = 1; i < all.size(); ++i)
        CHECK(std::tie(all[i - 1].year, all[i - 1].article_id) <
              std::tie(all[i].year, all[i].article_id));
}

TEST_CASE("timeline through the corpus", "[corpus]") {
    Corpus c;
    IngestReport r = c.ingest(fixture("storyline.jsonl"));
    REQUIRE(r.accepted == 40);
    FieldTimeline tl = c.timeline("demo");
    REQUIRE(tl.entries.size() == 40);
    CHECK(tl.final_stage() == CycleStage::NormalScience);
    CHECK_THROWS_AS(c.timeline("nowhere"), Error);
}

TEST_CASE("build_graph: single baseline article", "[corpus]") {
    std::istringstream in(record_line("a1", 2000, "phys", 1, 1, 1) + "\n");
    Corpus c;
    c.ingest_stream(in);
    KnowledgeGraph g = c.build_graph();

    std::map<EntityKind, int> kinds;
    for (const Entity& n : g.nodes) ++kinds[n.kind];
    CHECK(kinds[EntityKind::Article] == 1);
    CHECK(kinds[EntityKind::Field] == 1);
    CHECK(kinds[EntityKind::Method] == 1);
    CHECK(kinds[EntityKind::Observation] == 1);
    CHECK(kinds[EntityKind::KeyArgument] == 1);
    CHECK(kinds[EntityKind::Model] == 1);
    CHECK(g.nodes.size() == 6);
    CHECK(g.edges.size() == 4);

    std::map<std::string, Entity> by_id;
    for (const Entity& n : g.nodes) by_id[n.id] = n;
    for (const Edge& e : g.edges) {
        EdgeVerdict v = validate_edge(e, by_id.at(e.src), by_id.at(e.dst));
        INFO(e.src << " -" << relation_kind_name(e.relation) << "-> " << e.dst);
        CHECK(v.accepted);
    }
}

TEST_CASE("build_graph: dedup, challenges and proposals", "[corpus]") {
    // Two articles sharing identical default-labelled assertions collapse
    // onto the same content nodes; a criticizing article limits the model
    // and a proposing article feeds the paradigm node.
    std::istringstream in(record_line("a1", 2000, "f", 1, 1, 1) + "\n" +
                          record_line("a2", 2001, "f", 1, 1, 1) + "\n" +
                          record_line("a3", 2002, "f", 1, 2, 4) + "\n" +
                          record_line("a4", 2003, "f", 3, 3, 6) + "\n");
    Corpus c;
    c.ingest_stream(in);
    KnowledgeGraph g = c.build_graph();

    std::map<EntityKind, int> kinds;
    for (const Entity& n : g.nodes) ++kinds[n.kind];
    CHECK(kinds[EntityKind::Article] == 4);
    CHECK(kinds[EntityKind::Field] == 1);
    CHECK(kinds[EntityKind::Model] == 1);
    CHECK(kinds[EntityKind::Paradigm] == 1);
    // method: established + new; observation: confirmatory + anomalous +
    // new; key-argument: affirming + critical + new theoretical.
    CHECK(kinds[EntityKind::Method] == 2);
    CHECK(kinds[EntityKind::Observation] == 3);
    CHECK(kinds[EntityKind::KeyArgument] == 3);

    int limits = 0, to_paradigm = 0;
    std::map<std::string, Entity> by_id;
    for (const Entity& n : g.nodes) by_id[n.id] = n;
    for (const Edge& e : g.edges) {
        CHECK(validate_edge(e, by_id.at(e.src), by_id.at(e.dst)).accepted);
        if (e.relation == RelationKind::Limits) ++limits;
        if (by_id.at(e.dst).kind == EntityKind::Paradigm) ++to_paradigm;
    }
    CHECK(limits == 2);      // a3's anomalous observation + critical argument
    CHECK(to_paradigm == 1); // a4's new theoretical argument
}

TEST_CASE("build_graph: empty corpus, determinism, ingest-order independence",
          "[corpus]") {
    Corpus empty;
    KnowledgeGraph g0 = empty.build_graph();
    CHECK(g0.nodes.empty());
    CHECK(g0.edges.empty());
    CHECK(import_graph(export_graph(g0)).nodes.empty());

    Corpus a = corpus48();
    std::string first = export_graph(a.build_graph());
    std::string second = export_graph(a.build_graph());
    CHECK(first == second);

    // Same records in reverse line order produce the same bytes.
    std::vector<std::string> lines;
    std::ifstream in(fixture("scenarios48.jsonl"));
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line.front() != '#') lines.push_back(line);
    std::string reversed;
    for (auto it = lines.rbegin(); it != lines.rend(); ++it)
        reversed += *it + "\n";
    std::istringstream rev(reversed);
    Corpus b;
    b.ingest_stream(rev);
    CHECK(export_graph(b.build_graph()) == first);
}

TEST_CASE("graph export/import round-trip", "[corpus]") {
    Corpus c = corpus48();
    KnowledgeGraph g = c.build_graph();
    KnowledgeGraph back = import_graph(export_graph(g));
    CHECK(back.nodes == g.nodes);
    CHECK(back.edges == g.edges);

    CHECK_THROWS_AS(import_graph("not json"), Error);
    CHECK_THROWS_AS(import_graph("{\"nodes\": []}"), Error);
}

TEST_CASE("every edge of the 48-fixture graph validates", "[corpus]") {
    Corpus c = corpus48();
    KnowledgeGraph g = c.build_graph();
    CHECK(g.edges.size() > 48); // at least one edge per article
    std::map<std::string, Entity> by_id;
    for (const Entity& n : g.nodes) by_id[n.id] = n;
    for (const Edge& e : g.edges)
        CHECK(validate_edge(e, by_id.at(e.src), by_id.at(e.dst)).accepted);
}

TEST_CASE("persistence: save, load, equal answers", "[corpus]") {
    fs::path dir = fresh_dir("persist");
    CHECK_FALSE(Corpus::store_exists(dir));

    Corpus original = corpus48();
    original.save(dir);
    CHECK(Corpus::store_exists(dir));
    for (const char* name : {"articles.jsonl", "classifications.jsonl",
                             "timelines.jsonl", "graph.json"})
        CHECK(fs::exists(dir / name));

    Corpus loaded;
    loaded.load(dir);
    CHECK(loaded.article_count() == 48);

    FieldStats before = original.stats("synthetic");
    FieldStats after = loaded.stats("synthetic");
    CHECK(after.by_module == before.by_module);
    CHECK(after.by_scenario == before.by_scenario);
    CHECK(after.merit_histogram == before.merit_histogram);

    QueryFilter filter;
    filter.module = ModularOntology::Model;
    auto q0 = original.query(filter);
    auto q1 = loaded.query(filter);
    REQUIRE(q0.size() == q1.size());
    for (size_t i = 0; i < q0.size(); ++i) {
        CHECK(q0[i].article_id == q1[i].article_id);
        CHECK(q0[i].scenario == q1[i].scenario);
        CHECK(q0[i].merit == q1[i].merit);
    }

    // Two saves of equivalent corpora write byte-identical graphs.
    fs::path dir2 = fresh_dir("persist2");
    loaded.save(dir2);
    CHECK(slurp(dir / "graph.json") == slurp(dir2 / "graph.json"));

    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("persistence: corrupt store is refused", "[corpus]") {
    fs::path dir = fresh_dir("corrupt");
    fs::create_directories(dir);
    std::ofstream(dir / "articles.jsonl") << "this is not a record\n";
    Corpus c;
    try {
        c.load(dir);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
    }
    fs::remove_all(dir);

    Corpus missing;
    CHECK_THROWS_AS(missing.load(dir), Error);
}
