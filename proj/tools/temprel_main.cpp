// temprel: corpus pipelines for temporal-relation learning, inference,
// knowledge-base construction and evaluation. See README.md for the file
// formats and a worked example.

#include "temprel/composition.hpp"
#include "temprel/corpus.hpp"
#include "temprel/errors.hpp"
#include "temprel/evaluation.hpp"
#include "temprel/inference.hpp"
#include "temprel/kb.hpp"
#include "temprel/lexicon.hpp"
#include "temprel/perceptron.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;
using namespace temprel;

int thread_count_from(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("TEMPREL_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

/// Runs fn(doc_index) over [0, count) on a bounded worker pool. Results are
/// indexed by document, so the thread count never changes any output.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(threads), count));
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (const std::exception& e) {
          std::lock_guard lock(error_mutex);
          failed.store(true);
          if (error.empty()) error = e.what();
          return;
        }
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (failed.load()) throw std::runtime_error(error);
}

struct PipelineConfig {
  std::string mode = "greedy";
  double lambda = 0.5;
  int threads = 0;
  std::filesystem::path model_dir;
  std::filesystem::path lexicon_dir;
  std::filesystem::path kb_path;
};

LexicalResource load_lexicon(const PipelineConfig& config) {
  if (config.lexicon_dir.empty()) return LexicalResource::defaults();
  return load_lexical_resource(config.lexicon_dir);
}

struct LoadedModels {
  PerceptronModel same;
  PerceptronModel neighbor;
};

LoadedModels load_models(const std::filesystem::path& dir) {
  LoadedModels models;
  models.same = PerceptronModel::load(dir / "same.model");
  models.neighbor = PerceptronModel::load(dir / "neighbor.model");
  if (models.same.bucket() != DistanceBucket::kSame ||
      models.neighbor.bucket() != DistanceBucket::kNeighbor) {
    throw ValidationError("model files carry the wrong bucket headers");
  }
  return models;
}

struct DocInference {
  TemporalGraph graph;
  GreedyStats greedy_stats;
  std::optional<Assignment> assignment;
};

/// Labels every document of the corpus with the configured engine.
std::vector<DocInference> infer_corpus(const std::vector<Document>& docs,
                                       const PipelineConfig& config,
                                       const LexicalResource& lex,
                                       const LoadedModels& models,
                                       const CompositionTable& table,
                                       const KnowledgeBase* kb) {
  std::vector<DocInference> results(docs.size());
  parallel_for(docs.size(), thread_count_from(config.threads), [&](std::size_t i) {
    if (config.mode == "greedy") {
      results[i].graph = infer_greedy(docs[i], lex, models.same,
                                      models.neighbor, table,
                                      &results[i].greedy_stats);
    } else {
      IlpProblem problem = build_problem(docs[i], lex, models.same,
                                         models.neighbor, *kb, config.lambda);
      Assignment assignment = infer_ilp(problem, table);
      results[i].graph = assignment_graph(docs[i], assignment);
      results[i].assignment = std::move(assignment);
    }
  });
  return results;
}

std::map<int, std::string> frame_map(const Document& doc) {
  std::map<int, std::string> frames;
  for (const Event& event : doc.events) frames[event.id] = event.frame;
  return frames;
}

void log_greedy_totals(const std::vector<DocInference>& results) {
  GreedyStats totals;
  for (const DocInference& result : results) {
    totals.classifier_edges += result.greedy_stats.classifier_edges;
    totals.closure_edges += result.greedy_stats.closure_edges;
    totals.vague_fills += result.greedy_stats.vague_fills;
    totals.conflict_skips += result.greedy_stats.conflict_skips;
  }
  std::cerr << "graphs=" << results.size()
            << " classifier_edges=" << totals.classifier_edges
            << " closure_edges=" << totals.closure_edges
            << " vague_fills=" << totals.vague_fills
            << " conflict_skips=" << totals.conflict_skips << "\n";
}

TemporalGraph gold_graph(const Document& doc) {
  std::vector<int> ids;
  for (const Event& event : doc.events) ids.push_back(event.id);
  TemporalGraph graph(ids);
  for (const GoldRelation& gold : doc.gold) {
    graph.add_edge(gold.source, gold.target, gold.label);
  }
  return graph;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_ingest(const std::filesystem::path& in,
               const std::filesystem::path& out) {
  IngestResult result = ingest_corpus(in);
  std::size_t events = 0, gold = 0, pairs = 0;
  for (const Document& doc : result.documents) {
    events += doc.events.size();
    gold += doc.gold.size();
    pairs += candidate_pairs(doc).size();
  }
  std::cout << "documents\t" << result.documents.size() << "\n"
            << "events\t" << events << "\n"
            << "candidate_pairs\t" << pairs << "\n"
            << "gold_relations\t" << gold << "\n"
            << "dropped_gold_pairs\t" << result.dropped_gold_pairs << "\n";
  if (!out.empty()) {
    write_corpus(result.documents, out);
  }
  return 0;
}

std::vector<LabeledExample> bucket_examples(const std::vector<Document>& docs,
                                            const LexicalResource& lex,
                                            DistanceBucket bucket) {
  std::vector<LabeledExample> examples;
  for (const Document& doc : docs) {
    for (const GoldRelation& gold : doc.gold) {
      const Event& e1 = doc.event_by_id(gold.source);
      const Event& e2 = doc.event_by_id(gold.target);
      const DistanceBucket pair_bucket = e1.sentence == e2.sentence
                                             ? DistanceBucket::kSame
                                             : DistanceBucket::kNeighbor;
      if (pair_bucket != bucket) continue;
      examples.push_back({extract(doc, e1, e2, lex), gold.label, doc.doc_id});
    }
  }
  return examples;
}

int cmd_train(const std::filesystem::path& in, const std::filesystem::path& out,
              const PipelineConfig& config, int folds, std::uint64_t seed,
              int fixed_epochs, std::vector<int> candidates) {
  const IngestResult corpus = ingest_corpus(in);
  const LexicalResource lex = load_lexicon(config);
  std::filesystem::create_directories(out);
  if (candidates.empty()) candidates = {1, 3, 5, 10};

  for (DistanceBucket bucket : {DistanceBucket::kSame, DistanceBucket::kNeighbor}) {
    const auto examples = bucket_examples(corpus.documents, lex, bucket);
    if (examples.empty()) {
      throw ValidationError(std::string("no training pairs in bucket ") +
                            std::string(to_string(bucket)));
    }
    int epochs = fixed_epochs;
    if (epochs <= 0) {
      epochs = tune_epochs(examples, bucket, folds, candidates, seed);
    }
    const PerceptronModel model = train(examples, bucket, epochs, seed);
    const auto path =
        out / (bucket == DistanceBucket::kSame ? "same.model" : "neighbor.model");
    model.save(path);
    std::cerr << "bucket=" << to_string(bucket) << " examples=" << examples.size()
              << " epochs=" << epochs << " model=" << path.string() << "\n";
  }
  return 0;
}

int cmd_build_kb(const std::filesystem::path& in,
                 const std::filesystem::path& out,
                 const PipelineConfig& config) {
  const IngestResult corpus = ingest_corpus(in);
  const LexicalResource lex = load_lexicon(config);
  const LoadedModels models = load_models(config.model_dir);
  const CompositionTable table = derive_composition_table();

  KnowledgeBase prior_kb;
  if (config.mode == "ilp") {
    if (config.kb_path.empty()) {
      throw ValidationError("ILP mode requires a KB (--kb)");
    }
    prior_kb = KnowledgeBase::load(config.kb_path);
  }

  const auto results =
      infer_corpus(corpus.documents, config, lex, models, table,
                   config.mode == "ilp" ? &prior_kb : nullptr);

  KnowledgeBase kb;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    kb.accumulate(results[i].graph, frame_map(corpus.documents[i]));
  }
  kb.save(out);
  if (config.mode == "greedy") log_greedy_totals(results);
  std::cerr << "kb entries=" << kb.counts().size()
            << " graphs=" << kb.graph_count() << " -> " << out.string() << "\n";
  return 0;
}

int cmd_infer(const std::filesystem::path& in, const std::filesystem::path& out,
              const PipelineConfig& config) {
  const IngestResult corpus = ingest_corpus(in);
  const LexicalResource lex = load_lexicon(config);
  const LoadedModels models = load_models(config.model_dir);
  const CompositionTable table = derive_composition_table();

  KnowledgeBase kb;
  if (config.mode == "ilp") {
    if (config.kb_path.empty()) {
      throw ValidationError("ILP mode requires a KB (--kb)");
    }
    kb = KnowledgeBase::load(config.kb_path);
  }

  const auto results = infer_corpus(corpus.documents, config, lex, models,
                                    table, &kb);

  std::ofstream report(out);
  if (!report) throw ValidationError("cannot open output file " + out.string());
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const Document& doc = corpus.documents[i];
    const DocInference& result = results[i];
    for (const CandidatePair& pair : candidate_pairs(doc)) {
      const Event& e1 = doc.event_by_id(pair.source);
      const Event& e2 = doc.event_by_id(pair.target);
      const PerceptronModel& model = pair.bucket == DistanceBucket::kSame
                                         ? models.same
                                         : models.neighbor;
      const ScoredPrediction scored = model.predict(extract(doc, e1, e2, lex));
      json record;
      record["doc_id"] = doc.doc_id;
      record["source"] = pair.source;
      record["target"] = pair.target;
      record["label"] = std::string(
          to_string(result.graph.try_label(pair.source, pair.target)
                        .value_or(Relation::kVague)));
      json scores;
      for (Relation r : kAllRelations) {
        scores[std::string(to_string(r))] = scored.score(r);
      }
      record["scores"] = std::move(scores);
      if (result.assignment) {
        record["objective"] = result.assignment->objective;
        record["optimal"] = result.assignment->optimal;
      }
      report << record.dump() << "\n";
    }
  }
  if (config.mode == "greedy") log_greedy_totals(results);
  return 0;
}

/// Predicted labels per document, parsed from an inference report.
std::map<std::string, std::map<std::pair<int, int>, Relation>> load_predictions(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open predictions file " + path.string());
  std::map<std::string, std::map<std::pair<int, int>, Relation>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                       ": " + e.what());
    }
    const auto label = relation_from_string(record.at("label").get<std::string>());
    if (!label) {
      throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                       ": unknown label");
    }
    out[record.at("doc_id").get<std::string>()]
       [{record.at("source").get<int>(), record.at("target").get<int>()}] =
           *label;
  }
  return out;
}

void print_report(const std::string& heading, const EvalReport& report,
                  bool with_awareness) {
  std::printf("%s\tP=%.4f\tR=%.4f\tF1=%.4f", heading.c_str(), report.precision,
              report.recall, report.f1);
  if (with_awareness) std::printf("\tF1_aware=%.4f", report.awareness_f1);
  std::printf("\n");
  std::printf("label\tP\tR\tF1\n");
  for (Relation r : kAllRelations) {
    const LabelMetrics& m = report.per_label[static_cast<std::size_t>(index_of(r))];
    std::printf("%s\t%.4f\t%.4f\t%.4f\n", std::string(to_string(r)).c_str(),
                m.precision, m.recall, m.f1);
  }
}

/// Scores the tau-threshold KB predictor over all gold pairs, Relation
/// frames taken in text order.
int eval_threshold_baseline(const std::vector<Document>& docs,
                            const std::filesystem::path& kb_path, double tau) {
  const KnowledgeBase kb = KnowledgeBase::load(kb_path);
  ScoreCounts totals;
  for (const Document& doc : docs) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const GoldRelation& gold : doc.gold) {
      pairs.emplace_back(doc.event_by_id(gold.source).frame,
                         doc.event_by_id(gold.target).frame);
    }
    const std::vector<Relation> predicted = threshold_predict(kb, pairs, tau);
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      ++totals.confusion[static_cast<std::size_t>(index_of(doc.gold[i].label))]
                        [static_cast<std::size_t>(index_of(predicted[i]))];
    }
  }
  print_report("threshold tau=" + std::to_string(tau),
               report_from_counts(totals), /*with_awareness=*/false);
  return 0;
}

int cmd_eval(const std::filesystem::path& pred_path,
             const std::filesystem::path& gold_path,
             const std::filesystem::path& pred2_path, bool by_bucket,
             const std::filesystem::path& kb_path, double tau) {
  const IngestResult corpus = ingest_corpus(gold_path);
  if (pred_path.empty()) {
    if (kb_path.empty()) {
      throw ValidationError("eval needs --pred, or --kb for the threshold baseline");
    }
    return eval_threshold_baseline(corpus.documents, kb_path, tau);
  }
  const auto predictions = load_predictions(pred_path);
  const CompositionTable table = derive_composition_table();

  ScoreCounts totals;
  ScoreCounts bucket_totals[2];
  AwarenessCounts awareness_totals;
  std::vector<bool> correct_a;
  for (const Document& doc : corpus.documents) {
    TemporalGraph gold = gold_graph(doc);
    std::vector<int> ids;
    for (const Event& event : doc.events) ids.push_back(event.id);
    TemporalGraph pred(ids);
    if (auto it = predictions.find(doc.doc_id); it != predictions.end()) {
      for (const auto& [pair, label] : it->second) {
        pred.add_edge(pair.first, pair.second, label);
      }
    }
    totals.add(score_counts(pred, gold));
    awareness_totals.add(awareness_counts(pred, gold, table));
    for (const GoldRelation& gold_pair : doc.gold) {
      const Relation predicted =
          pred.try_label(gold_pair.source, gold_pair.target)
              .value_or(Relation::kVague);
      correct_a.push_back(predicted == gold_pair.label);
      if (by_bucket) {
        TemporalGraph single_gold(ids);
        single_gold.add_edge(gold_pair.source, gold_pair.target, gold_pair.label);
        const int dist = sentence_distance(doc, gold_pair.source, gold_pair.target);
        bucket_totals[dist].add(score_counts(pred, single_gold));
      }
    }
  }

  EvalReport report = report_from_counts(totals);
  const double ap = awareness_totals.pred_reduced == 0
                        ? 0.0
                        : static_cast<double>(awareness_totals.pred_hits) /
                              static_cast<double>(awareness_totals.pred_reduced);
  const double ar = awareness_totals.gold_reduced == 0
                        ? 0.0
                        : static_cast<double>(awareness_totals.gold_hits) /
                              static_cast<double>(awareness_totals.gold_reduced);
  report.awareness_f1 = (ap + ar) == 0.0 ? 0.0 : 2.0 * ap * ar / (ap + ar);
  print_report("overall", report, /*with_awareness=*/true);
  if (by_bucket) {
    print_report("dist=0", report_from_counts(bucket_totals[0]), false);
    print_report("dist=1", report_from_counts(bucket_totals[1]), false);
  }

  if (!pred2_path.empty()) {
    const auto predictions_b = load_predictions(pred2_path);
    std::vector<bool> correct_b;
    for (const Document& doc : corpus.documents) {
      auto it = predictions_b.find(doc.doc_id);
      for (const GoldRelation& gold_pair : doc.gold) {
        Relation predicted = Relation::kVague;
        if (it != predictions_b.end()) {
          auto found = it->second.find({gold_pair.source, gold_pair.target});
          if (found != it->second.end()) predicted = found->second;
        }
        correct_b.push_back(predicted == gold_pair.label);
      }
    }
    std::printf("mcnemar_p\t%.6g\n", mcnemar(correct_a, correct_b));
  }
  if (!kb_path.empty()) {
    eval_threshold_baseline(corpus.documents, kb_path, tau);
  }
  return 0;
}

int cmd_query(const std::filesystem::path& kb_path,
              const std::vector<std::string>& pair, const std::string& frame,
              const std::string& direction, int top) {
  const KnowledgeBase kb = KnowledgeBase::load(kb_path);
  if (!pair.empty()) {
    const PairPrior prior = kb.eta(pair[0], pair[1]);
    const PriorDistribution dist = kb.prior_distribution(pair[0], pair[1]);
    std::printf("pair\t%s\t%s\n", pair[0].c_str(), pair[1].c_str());
    std::printf("eta_before\t%.6f\n", prior.eta_before);
    std::printf("eta_after\t%.6f\n", prior.eta_after);
    for (Relation r : kAllRelations) {
      std::printf("prior_%s\t%.6f\n", std::string(to_string(r)).c_str(),
                  dist.prob(r));
    }
  }
  if (!frame.empty()) {
    const NeighborDirection dir = direction == "tafter"
                                      ? NeighborDirection::kTAfter
                                      : NeighborDirection::kTBefore;
    const NeighborDistribution dist = kb.neighbor_distribution(frame, dir, top);
    std::printf("frame\t%s\t%s\n", frame.c_str(),
                dir == NeighborDirection::kTBefore ? "t-before" : "t-after");
    for (const auto& [neighbor, prob] : dist.entries) {
      std::printf("%s\t%.2f\n", neighbor.c_str(), prob * 1000.0);  // permille
    }
  }
  return 0;
}

int cmd_stats(const std::filesystem::path& kb_path, double threshold,
              std::uint64_t min_count) {
  const KnowledgeBase kb = KnowledgeBase::load(kb_path);
  std::printf("frame1\tframe2\tcount_before\tcount_after\tratio\tdirection\n");
  for (const ExtremePair& entry : kb.extreme_pairs(threshold, min_count)) {
    std::printf("%s\t%s\t%llu\t%llu\t%.4f\t%s\n", entry.frame1.c_str(),
                entry.frame2.c_str(),
                static_cast<unsigned long long>(entry.count_before),
                static_cast<unsigned long long>(entry.count_after), entry.ratio,
                entry.t_before ? "t-before" : "t-after");
  }
  return 0;
}

int cmd_bootstrap(const std::filesystem::path& in,
                  const std::vector<std::string>& pair_args, int folds,
                  double fraction, std::uint64_t seed) {
  const IngestResult corpus = ingest_corpus(in);
  std::vector<TemporalGraph> graphs;
  std::vector<std::map<int, std::string>> frames;
  for (const Document& doc : corpus.documents) {
    graphs.push_back(gold_graph(doc));
    frames.push_back(frame_map(doc));
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i + 1 < pair_args.size(); i += 2) {
    pairs.emplace_back(pair_args[i], pair_args[i + 1]);
  }
  const auto results =
      bootstrap_priors(graphs, frames, pairs, folds, fraction, seed);
  for (const BootstrapPair& result : results) {
    for (Relation r : kAllRelations) {
      const auto idx = static_cast<std::size_t>(index_of(r));
      std::printf("%s\t%s\t%s", result.frame1.c_str(), result.frame2.c_str(),
                  std::string(to_string(r)).c_str());
      for (const auto& fold : result.fold_values) {
        std::printf("\t%.6f", fold[idx]);
      }
      std::printf("\tmin=%.6f\tmax=%.6f\n", result.min[idx], result.max[idx]);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal-relation inference and prior-knowledge toolkit"};
  app.require_subcommand(1);

  PipelineConfig config;
  std::filesystem::path in_path, out_path, pred_path, pred2_path, gold_path;
  int folds = 3;
  std::uint64_t seed = 42;
  int fixed_epochs = 0;
  std::vector<int> candidates;
  double tau = 0.5;
  double threshold = 0.9;
  std::uint64_t min_count = 20;
  double fraction = 0.5;
  int bootstrap_folds = 10;
  std::vector<std::string> pair_args;
  std::string frame, direction = "tbefore";
  int top = 10;
  bool by_bucket = false;

  auto* ingest = app.add_subcommand("ingest", "validate a corpus file");
  ingest->add_option("--in", in_path, "corpus file")->required();
  ingest->add_option("--out", out_path, "rewrite in canonical form");

  auto* train_cmd = app.add_subcommand("train", "fit both bucket classifiers");
  train_cmd->add_option("--in", in_path, "gold corpus")->required();
  train_cmd->add_option("--out", out_path, "model directory")->required();
  train_cmd->add_option("--lexicon", config.lexicon_dir, "lexical resource dir");
  train_cmd->add_option("--folds", folds, "cross-validation folds");
  train_cmd->add_option("--seed", seed, "random seed");
  train_cmd->add_option("--epochs", fixed_epochs, "skip tuning, train this many epochs");
  train_cmd->add_option("--epoch-candidates", candidates, "tuning grid");

  auto* build = app.add_subcommand("build-kb", "infer a corpus and aggregate counts");
  build->add_option("--in", in_path, "corpus file")->required();
  build->add_option("--out", out_path, "KB output file")->required();
  build->add_option("--model", config.model_dir, "model directory")->required();
  build->add_option("--lexicon", config.lexicon_dir, "lexical resource dir");
  build->add_option("--mode", config.mode, "greedy or ilp")
      ->check(CLI::IsMember({"greedy", "ilp"}));
  build->add_option("--kb", config.kb_path, "prior KB (required for ilp)");
  build->add_option("--lambda", config.lambda, "regularization weight");
  build->add_option("--threads", config.threads, "worker threads");

  auto* infer = app.add_subcommand("infer", "label a corpus");
  infer->add_option("--in", in_path, "corpus file")->required();
  infer->add_option("--out", out_path, "report output file")->required();
  infer->add_option("--model", config.model_dir, "model directory")->required();
  infer->add_option("--lexicon", config.lexicon_dir, "lexical resource dir");
  infer->add_option("--mode", config.mode, "greedy or ilp")
      ->check(CLI::IsMember({"greedy", "ilp"}));
  infer->add_option("--kb", config.kb_path, "KB for priors (required for ilp)");
  infer->add_option("--lambda", config.lambda, "regularization weight");
  infer->add_option("--threads", config.threads, "worker threads");

  auto* eval = app.add_subcommand("eval", "score predictions against gold");
  eval->add_option("--pred", pred_path, "inference report");
  eval->add_option("--gold", gold_path, "gold corpus")->required();
  eval->add_option("--pred2", pred2_path, "second report for McNemar");
  eval->add_flag("--by-bucket", by_bucket, "split by sentence distance");
  eval->add_option("--kb", config.kb_path, "also score the tau-threshold KB baseline");
  eval->add_option("--tau", tau, "threshold for the KB baseline");

  auto* query = app.add_subcommand("query", "KB lookups");
  query->add_option("--kb", config.kb_path, "KB file")->required();
  query->add_option("--pair", pair_args, "frame pair")->expected(2);
  query->add_option("--frame", frame, "frame for neighbor listing");
  query->add_option("--direction", direction, "tbefore or tafter")
      ->check(CLI::IsMember({"tbefore", "tafter"}));
  query->add_option("--top", top, "neighbor list size");

  auto* stats = app.add_subcommand("stats", "extreme pair listing");
  stats->add_option("--kb", config.kb_path, "KB file")->required();
  stats->add_option("--threshold", threshold, "ratio threshold");
  stats->add_option("--min-count", min_count, "before+after support floor");

  auto* bootstrap = app.add_subcommand("bootstrap", "prior confidence envelopes");
  bootstrap->add_option("--in", in_path, "gold corpus")->required();
  bootstrap->add_option("--pair", pair_args, "frame pair (repeatable)")
      ->expected(-2);
  bootstrap->add_option("--folds", bootstrap_folds, "bootstrap folds");
  bootstrap->add_option("--fraction", fraction, "resample fraction");
  bootstrap->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (*ingest) return cmd_ingest(in_path, out_path);
    if (*train_cmd) {
      return cmd_train(in_path, out_path, config, folds, seed, fixed_epochs,
                       candidates);
    }
    if (*build) return cmd_build_kb(in_path, out_path, config);
    if (*infer) return cmd_infer(in_path, out_path, config);
    if (*eval) {
      return cmd_eval(pred_path, gold_path, pred2_path, by_bucket,
                      config.kb_path, tau);
    }
    if (*query) return cmd_query(config.kb_path, pair_args, frame, direction, top);
    if (*stats) return cmd_stats(config.kb_path, threshold, min_count);
    if (*bootstrap) {
      return cmd_bootstrap(in_path, pair_args, bootstrap_folds, fraction, seed);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ChecksumMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
