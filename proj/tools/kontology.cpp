// kontology: command-line surface for the Kuhnian-cycle toolkit.
//
// Subcommands: enumerate, classify, ingest, track, stats, export.
// stdout stays machine-parseable (fixed field order, single spaces; the
// scenario table uses tabs between its three columns); anything meant for
// humans goes to stderr. Exit codes: 0 success, 1 input/environment
// error, 2 domain error (unclassifiable record, invalid scenario).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kuhn/kuhn.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDomain = 2;

int exit_code_for(const kuhn::Error& e) {
    return e.is_domain_error() ? kExitDomain : kExitInput;
}

kuhn::CueLexicon load_lexicon(const kuhn::CliConfig& config) {
    if (!config.lexicon_path) return kuhn::default_lexicon();
    std::ifstream in(*config.lexicon_path);
    if (!in)
        throw kuhn::Error(kuhn::ErrorCode::IoFailure,
                          "cannot read lexicon '" + *config.lexicon_path + "'");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return kuhn::parse_lexicon(text);
}

kuhn::Corpus load_corpus(const kuhn::CliConfig& config) {
    kuhn::Corpus corpus;
    if (!kuhn::Corpus::store_exists(config.corpus_dir))
        throw kuhn::Error(kuhn::ErrorCode::IoFailure,
                          "no corpus store at '" + config.corpus_dir +
                              "' (run `ingest` first)");
    corpus.load(config.corpus_dir);
    return corpus;
}

int cmd_enumerate(const std::optional<std::string>& module_arg,
                  const std::string& format) {
    std::optional<kuhn::ModularOntology> module;
    if (module_arg) {
        module = kuhn::parse_module(*module_arg);
        if (!module) {
            std::cerr << "unknown module '" << *module_arg
                      << "' (expected formalism, model or paradigm-shift)\n";
            return kExitInput;
        }
    }

    if (format == "table") {
        auto formalism = kuhn::enumerate_valid(kuhn::ModularOntology::Formalism);
        auto model = kuhn::enumerate_valid(kuhn::ModularOntology::Model);
        auto shift = kuhn::enumerate_valid(kuhn::ModularOntology::ParadigmShift);
        std::cout << "formalism\tmodel\tparadigm-shift\n";
        for (size_t i = 0; i < formalism.size(); ++i) {
            std::cout << formalism[i].text() << '\t'
                      << (i < model.size() ? model[i].text() : "") << '\t'
                      << shift[i].text() << '\n';
        }
        return kExitOk;
    }

    for (const kuhn::ScenarioCode& code : kuhn::enumerate_valid(module))
        std::cout << code.text() << '\n';
    return kExitOk;
}

int cmd_classify(const std::string& input, bool emit_diagnostics,
                 const kuhn::CliConfig& config) {
    std::ifstream in(input);
    if (!in) {
        std::cerr << "cannot read '" << input << "'\n";
        return kExitInput;
    }
    kuhn::CueLexicon lexicon = load_lexicon(config);

    bool any_failure = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view trimmed = line;
        while (!trimmed.empty() &&
               (trimmed.front() == ' ' || trimmed.front() == '\t'))
            trimmed.remove_prefix(1);
        while (!trimmed.empty() && trimmed.back() == '\r')
            trimmed.remove_suffix(1);
        if (trimmed.empty() || trimmed.front() == '#') continue;

        try {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(trimmed);
            } catch (const nlohmann::json::exception& e) {
                throw kuhn::Error(kuhn::ErrorCode::ParseError, e.what());
            }
            kuhn::ArticleRecord article = kuhn::parse_article_json(j);
            if (article.assertions.empty() && !article.abstract.empty())
                article.assertions =
                    kuhn::extract_assertions(article.abstract, lexicon);
            kuhn::Classification c = kuhn::classify(article);
            std::cout << c.article_id << ' ' << c.scenario.text() << ' '
                      << kuhn::module_name(c.module) << ' ' << c.merit << '\n';
            if (emit_diagnostics) {
                for (const kuhn::AssertionPick& pick : c.diagnostics) {
                    std::cout << "# " << c.article_id << ' '
                              << kuhn::assertion_kind_name(pick.chosen.kind)
                              << " chosen " << pick.chosen.label
                              << " discarded";
                    if (pick.discarded.empty()) std::cout << " -";
                    for (const kuhn::Assertion& d : pick.discarded)
                        std::cout << ' ' << d.label;
                    std::cout << '\n';
                }
            }
        } catch (const kuhn::Error& e) {
            any_failure = true;
            std::cerr << "line " << line_no << ": " << e.what() << '\n';
        }
    }
    return any_failure ? kExitDomain : kExitOk;
}

int cmd_ingest(const std::string& input, const kuhn::CliConfig& config) {
    kuhn::CueLexicon lexicon = load_lexicon(config);
    kuhn::Corpus corpus;
    if (kuhn::Corpus::store_exists(config.corpus_dir))
        corpus.load(config.corpus_dir);

    kuhn::IngestReport report = corpus.ingest(input, &lexicon);
    corpus.save(config.corpus_dir);

    std::cout << "accepted " << report.accepted << '\n';
    std::cout << "rejected " << report.rejected.size() << '\n';
    std::cout << "unclassified " << report.unclassified.size() << '\n';
    for (const kuhn::RejectedLine& r : report.rejected)
        std::cerr << "line " << r.line << ": " << r.reason << '\n';
    for (const kuhn::UnclassifiedRecord& u : report.unclassified)
        std::cerr << "line " << u.line << " (" << u.id << "): " << u.reason
                  << '\n';
    return kExitOk;
}

int cmd_track(const std::string& field, const kuhn::CliConfig& config) {
    kuhn::Corpus corpus = load_corpus(config);
    kuhn::FieldTimeline timeline = corpus.timeline(field, config.tracker);
    for (const kuhn::TimelineEntry& e : timeline.entries)
        std::cout << e.year << ' ' << e.article_id << ' ' << e.scenario.text()
                  << ' ' << kuhn::stage_name(e.indicator) << ' '
                  << kuhn::stage_name(e.machine) << '\n';
    return kExitOk;
}

int cmd_stats(const std::string& field, const kuhn::CliConfig& config) {
    kuhn::Corpus corpus = load_corpus(config);
    kuhn::FieldStats stats = corpus.stats(field);
    std::cout << "articles " << stats.articles << '\n';
    std::cout << "classified " << stats.classified << '\n';
    std::cout << "unclassified " << stats.unclassified << '\n';
    for (const auto& [module, count] : stats.by_module)
        std::cout << "module " << kuhn::module_name(module) << ' ' << count
                  << '\n';
    for (const auto& [scenario, count] : stats.by_scenario)
        std::cout << "scenario " << scenario << ' ' << count << '\n';
    for (const auto& [merit, count] : stats.merit_histogram)
        std::cout << "merit " << merit << ' ' << count << '\n';
    return kExitOk;
}

int cmd_export(const std::string& out_path, const kuhn::CliConfig& config) {
    kuhn::Corpus corpus;
    if (kuhn::Corpus::store_exists(config.corpus_dir))
        corpus.load(config.corpus_dir);
    kuhn::KnowledgeGraph graph = corpus.build_graph();

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return kExitInput;
    }
    out << kuhn::export_graph(graph);
    if (!out) {
        std::cerr << "write failed for '" << out_path << "'\n";
        return kExitInput;
    }
    std::cout << "nodes " << graph.nodes.size() << '\n';
    std::cout << "edges " << graph.edges.size() << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kuhnian-cycle classification toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string corpus_dir;
    app.add_option("--config", config_path, "config file (flat key = value)");
    app.add_option("--corpus", corpus_dir, "corpus store directory");

    auto* enumerate = app.add_subcommand(
        "enumerate", "print the valid scenario codes");
    std::string module_arg;
    std::string format = "text";
    enumerate->add_option("--module", module_arg,
                          "formalism, model or paradigm-shift");
    enumerate->add_option("--format", format, "text or table")
        ->check(CLI::IsMember({"text", "table"}));

    auto* classify = app.add_subcommand(
        "classify", "classify article records from a file");
    std::string classify_input;
    bool emit_diagnostics = false;
    classify->add_option("input", classify_input, "article records (JSON lines)")
        ->required();
    classify->add_flag("--emit-diagnostics", emit_diagnostics,
                       "print per-kind assertion picks as # comment lines");

    auto* ingest = app.add_subcommand(
        "ingest", "add article records to the corpus store");
    std::string ingest_input;
    ingest->add_option("input", ingest_input, "article records (JSON lines)")
        ->required();

    auto* track = app.add_subcommand(
        "track", "print a field's Kuhnian-cycle timeline");
    std::string track_field;
    track->add_option("--field", track_field, "field id")->required();
    std::optional<std::size_t> opt_window, opt_min_establish;
    std::optional<double> opt_theta_drift, opt_theta_crisis;
    track->add_option("--window", opt_window, "sliding window size");
    track->add_option("--min-establish", opt_min_establish,
                      "P1/P2 articles needed for normal science");
    track->add_option("--theta-drift", opt_theta_drift, "drift threshold");
    track->add_option("--theta-crisis", opt_theta_crisis, "crisis threshold");

    auto* stats = app.add_subcommand(
        "stats", "print per-field module/scenario/merit counts");
    std::string stats_field;
    stats->add_option("--field", stats_field, "field id")->required();

    auto* export_cmd = app.add_subcommand(
        "export", "write the knowledge graph document");
    std::string export_out;
    export_cmd->add_option("--out", export_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        kuhn::CliConfig config;
        if (!config_path.empty()) config = kuhn::load_config(config_path);
        if (!corpus_dir.empty()) config.corpus_dir = corpus_dir;
        if (opt_window) config.tracker.window = *opt_window;
        if (opt_min_establish) config.tracker.min_establish = *opt_min_establish;
        if (opt_theta_drift) config.tracker.theta_drift = *opt_theta_drift;
        if (opt_theta_crisis) config.tracker.theta_crisis = *opt_theta_crisis;

        if (*enumerate)
            return cmd_enumerate(module_arg.empty()
                                     ? std::nullopt
                                     : std::make_optional(module_arg),
                                 format);
        if (*classify)
            return cmd_classify(classify_input, emit_diagnostics, config);
        if (*ingest) return cmd_ingest(ingest_input, config);
        if (*track) return cmd_track(track_field, config);
        if (*stats) return cmd_stats(stats_field, config);
        if (*export_cmd) return cmd_export(export_out, config);
    } catch (const kuhn::Error& e) {
        std::cerr << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
