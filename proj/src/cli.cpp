#include "psel/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "psel/corpus.hpp"
#include "psel/error.hpp"
#include "psel/index.hpp"
#include "psel/projector.hpp"
#include "psel/query.hpp"
#include "psel/selection.hpp"
#include "psel/sweep.hpp"

namespace psel::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string corpus_path;
  std::string index_path;
  std::string query_path;
  std::string mode = "syntactic";
  double lsw = kDefaultLsw;
  std::string grid = "1.0:0.7:0.05";
  bool no_normalize_d = false;
  std::size_t top_k = kDefaultTopK;
  std::string out_path;
  std::string json_path;
  std::string tree;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  sink->set_pattern("psel: %l: %v");
  auto logger = std::make_shared<spdlog::logger>("psel", sink);
  auto level = spdlog::level::warn;
  if (const char* env = std::getenv("PSEL_LOG"); env != nullptr && *env != '\0') {
    level = spdlog::level::from_str(env);
  }
  logger->set_level(level);
  return logger;
}

struct Loaded {
  Corpus corpus;
  std::optional<Projector> projector;
};

Loaded load_source(const Options& opt, bool need_projector, spdlog::logger& log) {
  Loaded loaded;
  if (!opt.index_path.empty()) {
    Index index = load_index(opt.index_path);
    loaded.corpus = std::move(index.corpus);
    loaded.projector = std::move(index.projector);
    log.info("loaded index {} ({} records)", opt.index_path, loaded.corpus.size());
  } else {
    loaded.corpus = ingest(opt.corpus_path);
    log.info("ingested {} ({} records)", opt.corpus_path, loaded.corpus.size());
  }
  if (need_projector && !loaded.projector) {
    log.info("fitting projector on {} acoustic embeddings", loaded.corpus.size());
    loaded.projector = Projector::fit(loaded.corpus);
  }
  return loaded;
}

ordered_json candidate_json(const RankedCandidate& c) {
  return ordered_json{{"id", c.id}, {"ls", c.ls}, {"d", c.d}, {"loss", c.loss}};
}

ordered_json result_json(const SelectionResult& r) {
  ordered_json runner_ups = ordered_json::array();
  for (const auto& c : r.runner_ups) runner_ups.push_back(candidate_json(c));
  return ordered_json{{"chosen_id", r.chosen_id}, {"ls", r.ls},       {"d", r.d},
                      {"loss", r.loss},           {"runner_ups", runner_ups}};
}

void note_degenerate(const SelectionResult& r, const std::string& what, spdlog::logger& log) {
  if (r.degenerate_candidates > 0) {
    log.warn("{}: {} candidate(s) scored 0 because of a zero-norm representation", what,
             r.degenerate_candidates);
  }
}

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + opt.out_path + "' for writing");
  file << text;
  if (!file) throw Error("write to '" + opt.out_path + "' failed");
}

int cmd_build_index(const Options& opt, std::ostream& out, spdlog::logger& log) {
  const Corpus corpus = ingest(opt.corpus_path);
  std::optional<Projector> projector;
  if (corpus.size() >= 3) {
    projector = Projector::fit(corpus);
  } else {
    log.warn("corpus has {} records; index written without a projector", corpus.size());
  }
  save_index(opt.index_path, corpus, projector);
  ordered_json summary{{"index", opt.index_path},
                       {"records", corpus.size()},
                       {"cwe_dim", corpus.cwe_dim()},
                       {"acoustic_dim", corpus.acoustic_dim()},
                       {"projector", projector.has_value()}};
  out << summary.dump(2) << '\n';
  return kExitOk;
}

int cmd_inspect(const Options& opt, std::ostream& out) {
  const Index index = load_index(opt.index_path);
  ordered_json j{{"records", index.corpus.size()},
                 {"cwe_dim", index.corpus.cwe_dim()},
                 {"acoustic_dim", index.corpus.acoustic_dim()}};
  if (index.projector) {
    const auto& p = *index.projector;
    j["projector"] = ordered_json{{"explained_variance", p.explained_variance()},
                                  {"diameter", p.diameter()}};
  } else {
    j["projector"] = nullptr;
  }
  ordered_json ids = ordered_json::array();
  for (const auto& r : index.corpus.records()) ids.push_back(r.id);
  j["ids"] = ids;
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_distances(const Options& opt, std::ostream& out) {
  const DistanceVector d = distance_vector(parse_tree(opt.tree));
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (i > 0) out << ' ';
    out << d.values[i];
  }
  out << '\n';
  return kExitOk;
}

int cmd_select(const Options& opt, std::ostream& out, spdlog::logger& log) {
  const SimilarityMode mode = parse_similarity_mode(opt.mode);
  const auto queries = load_queries(opt.query_path);
  const Loaded src = load_source(opt, false, log);
  const Selector selector(src.corpus);

  ordered_json results = ordered_json::array();
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const auto r = selector.select_sentence(queries[k].repr, mode, opt.top_k);
    const std::string label = queries[k].id.empty() ? "query " + std::to_string(k + 1) : queries[k].id;
    note_degenerate(r, label, log);
    ordered_json row{{"query", queries[k].id}};
    row.update(result_json(r));
    results.push_back(std::move(row));
  }
  ordered_json doc{{"mode", to_string(mode)}, {"results", results}};
  emit(doc.dump(2) + "\n", opt, out);
  return kExitOk;
}

std::vector<Paragraph> to_reprs(const std::vector<std::vector<Query>>& paragraphs) {
  std::vector<Paragraph> out;
  out.reserve(paragraphs.size());
  for (const auto& p : paragraphs) {
    Paragraph reprs;
    for (const auto& q : p) reprs.push_back(q.repr);
    out.push_back(std::move(reprs));
  }
  return out;
}

int cmd_select_paragraph(const Options& opt, std::ostream& out, spdlog::logger& log) {
  SelectionConfig cfg;
  cfg.mode = parse_similarity_mode(opt.mode);
  cfg.lsw = opt.lsw;
  cfg.normalize_d = !opt.no_normalize_d;
  cfg.top_k = opt.top_k;
  validate(cfg);
  const auto paragraphs = load_paragraphs(opt.query_path);
  const Loaded src = load_source(opt, true, log);
  const Selector selector(src.corpus, *src.projector);

  ordered_json all = ordered_json::array();
  for (std::size_t p = 0; p < paragraphs.size(); ++p) {
    Paragraph reprs;
    for (const auto& q : paragraphs[p]) reprs.push_back(q.repr);
    const auto picks = selector.select_paragraph(reprs, cfg);
    ordered_json rows = ordered_json::array();
    for (std::size_t s = 0; s < picks.size(); ++s) {
      note_degenerate(picks[s], "paragraph " + std::to_string(p + 1) + " sentence " +
                                    std::to_string(s + 1), log);
      ordered_json row{{"sentence", s + 1}, {"query", paragraphs[p][s].id}};
      row.update(result_json(picks[s]));
      rows.push_back(std::move(row));
    }
    all.push_back(std::move(rows));
  }
  ordered_json doc{{"mode", to_string(cfg.mode)},
                   {"lsw", cfg.lsw},
                   {"normalize_d", cfg.normalize_d},
                   {"paragraphs", all}};
  emit(doc.dump(2) + "\n", opt, out);
  return kExitOk;
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err, spdlog::logger& log) {
  SelectionConfig base;
  base.mode = parse_similarity_mode(opt.mode);
  base.normalize_d = !opt.no_normalize_d;
  const std::vector<double> grid = parse_grid(opt.grid);
  const auto paragraphs = to_reprs(load_paragraphs(opt.query_path));
  const Loaded src = load_source(opt, true, log);

  const SweepResult result = sweep(src.corpus, *src.projector, paragraphs, base, grid);
  emit(to_csv(result), opt, out);

  if (result.max_drop) {
    err << "max acoustic-distance drop: lsw " << result.max_drop->from_lsw << " -> "
        << result.max_drop->to_lsw << " (" << result.max_drop->drop << ")\n";
  }
  if (!opt.json_path.empty()) {
    ordered_json points = ordered_json::array();
    for (const auto& p : result.points) {
      points.push_back(ordered_json{{"lsw", p.lsw},
                                    {"mean_linguistic_distance", p.mean_linguistic_distance},
                                    {"mean_acoustic_distance", p.mean_acoustic_distance},
                                    {"transitions", p.transitions}});
    }
    ordered_json doc{{"mode", to_string(base.mode)},
                     {"normalize_d", base.normalize_d},
                     {"points", points}};
    if (result.max_drop) {
      doc["max_drop"] = ordered_json{{"from_lsw", result.max_drop->from_lsw},
                                     {"to_lsw", result.max_drop->to_lsw},
                                     {"drop", result.max_drop->drop}};
    } else {
      doc["max_drop"] = nullptr;
    }
    std::ofstream file(opt.json_path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open '" + opt.json_path + "' for writing");
    file << doc.dump(2) << '\n';
  }
  return kExitOk;
}

void add_source(CLI::App* cmd, Options& opt) {
  auto* corpus = cmd->add_option("--corpus", opt.corpus_path, "Corpus JSONL file")
                     ->check(CLI::ExistingFile);
  auto* index = cmd->add_option("--index", opt.index_path, "Binary index built by build-index")
                    ->check(CLI::ExistingFile);
  corpus->excludes(index);
  index->excludes(corpus);
}

void add_mode(CLI::App* cmd, Options& opt) {
  cmd->add_option("--mode", opt.mode, "Similarity mode")
      ->check(CLI::IsMember({"syntactic", "cwe", "combined"}))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);
  Options opt;

  CLI::App app{"Linguistically driven acoustic-embedding selection"};
  app.name(args.empty() ? "psel" : args.front());
  app.require_subcommand(1, 1);

  auto* build = app.add_subcommand("build-index", "Validate a corpus and write a binary index");
  build->add_option("--corpus", opt.corpus_path, "Corpus JSONL file")
      ->required()
      ->check(CLI::ExistingFile);
  build->add_option("--index", opt.index_path, "Index file to write")->required();

  auto* select = app.add_subcommand("select", "Pick the closest training utterance per query");
  add_source(select, opt);
  select->add_option("--query", opt.query_path, "Query JSONL file")
      ->required()
      ->check(CLI::ExistingFile);
  add_mode(select, opt);
  select->add_option("--top-k", opt.top_k, "Runner-ups to report")->capture_default_str();
  select->add_option("--out", opt.out_path, "Write JSON here instead of standard output");

  auto* paragraph =
      app.add_subcommand("select-paragraph", "Greedy paragraph selection with acoustic smoothing");
  add_source(paragraph, opt);
  paragraph->add_option("--query", opt.query_path, "Paragraph JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  add_mode(paragraph, opt);
  paragraph->add_option("--lsw", opt.lsw, "Linguistic similarity weight")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  paragraph->add_flag("--no-normalize-d", opt.no_normalize_d,
                      "Use raw projected distances instead of diameter-normalized ones");
  paragraph->add_option("--top-k", opt.top_k, "Runner-ups to report")->capture_default_str();
  paragraph->add_option("--out", opt.out_path, "Write JSON here instead of standard output");

  auto* sweep_cmd = app.add_subcommand("sweep", "Trade-off curves over a grid of lsw values");
  add_source(sweep_cmd, opt);
  sweep_cmd->add_option("--query", opt.query_path, "Paragraph JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  add_mode(sweep_cmd, opt);
  sweep_cmd->add_option("--grid", opt.grid, "start:stop:step or comma list")->capture_default_str();
  sweep_cmd->add_flag("--no-normalize-d", opt.no_normalize_d,
                      "Use raw projected distances instead of diameter-normalized ones");
  sweep_cmd->add_option("--out", opt.out_path, "Write CSV here instead of standard output");
  sweep_cmd->add_option("--json", opt.json_path, "Also write the curves as JSON");

  auto* distances = app.add_subcommand("distances", "Print the syntactic distances of a tree");
  distances->add_option("tree", opt.tree, "Bracketed constituency tree")->required();

  auto* inspect = app.add_subcommand("inspect", "Summarize an index");
  inspect->add_option("--index", opt.index_path, "Index file")->required()->check(CLI::ExistingFile);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
    if (select->parsed() || paragraph->parsed() || sweep_cmd->parsed()) {
      if (opt.corpus_path.empty() && opt.index_path.empty()) {
        throw CLI::RequiredError("one of --corpus or --index");
      }
    }
    if (sweep_cmd->parsed()) parse_grid(opt.grid);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (build->parsed()) return cmd_build_index(opt, out, *log);
    if (select->parsed()) return cmd_select(opt, out, *log);
    if (paragraph->parsed()) return cmd_select_paragraph(opt, out, *log);
    if (sweep_cmd->parsed()) return cmd_sweep(opt, out, err, *log);
    if (distances->parsed()) return cmd_distances(opt, out);
    if (inspect->parsed()) return cmd_inspect(opt, out);
  } catch (const Error& e) {
    err << app.get_name() << ": error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const nlohmann::json::exception& e) {
    err << app.get_name() << ": error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace psel::cli
