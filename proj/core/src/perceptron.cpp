#include "temprel/perceptron.hpp"

#include "temprel/errors.hpp"
#include "temprel/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace temprel {

PerceptronModel::PerceptronModel(DistanceBucket bucket,
                                 WeightMap averaged_weights, int epochs_trained,
                                 std::uint64_t seed)
    : bucket_(bucket),
      averaged_(std::move(averaged_weights)),
      epochs_trained_(epochs_trained),
      seed_(seed) {}

namespace {

std::array<double, kRelationCount> activations(
    const PerceptronModel::WeightMap& weights, const FeatureVector& fv) {
  std::array<double, kRelationCount> act{};
  for (const auto& [feature, value] : fv) {
    auto it = weights.find(feature);
    if (it == weights.end()) continue;  // unseen features contribute nothing
    for (int r = 0; r < kRelationCount; ++r) {
      act[static_cast<std::size_t>(r)] +=
          it->second[static_cast<std::size_t>(r)] * value;
    }
  }
  return act;
}

Relation argmax_label(const std::array<double, kRelationCount>& act) {
  int best = 0;
  for (int r = 1; r < kRelationCount; ++r) {
    if (act[static_cast<std::size_t>(r)] > act[static_cast<std::size_t>(best)]) {
      best = r;  // strict improvement keeps the canonical tie order
    }
  }
  return static_cast<Relation>(best);
}

std::array<double, kRelationCount> softmax(
    std::array<double, kRelationCount> act) {
  const double peak = *std::max_element(act.begin(), act.end());
  double total = 0.0;
  for (double& a : act) {
    a = std::exp(a - peak);
    total += a;
  }
  for (double& a : act) a /= total;
  return act;
}

}  // namespace

ScoredPrediction PerceptronModel::predict(const FeatureVector& fv) const {
  const auto act = activations(averaged_, fv);
  ScoredPrediction out;
  out.scores = softmax(act);
  // argmax on the raw activations; softmax is monotone, so this is the same
  // label without depending on exp() rounding near ties.
  out.label = argmax_label(act);
  return out;
}

PerceptronModel train(const std::vector<LabeledExample>& examples,
                      DistanceBucket bucket, int epochs, std::uint64_t seed) {
  if (examples.empty()) throw EmptyTrainingSet();
  if (epochs < 1) throw ValidationError("epochs must be at least 1");

  PerceptronModel::WeightMap raw;
  // Visit-index-weighted sum of the updates; it collapses the average of the
  // per-visit weight snapshots into a closed form, so late (usually
  // converged) weights dominate the way the averaged perceptron intends.
  PerceptronModel::WeightMap weighted;
  std::uint64_t visits = 0;

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);

  for (int epoch = 0; epoch < epochs; ++epoch) {
    deterministic_shuffle(order, rng);
    for (std::size_t idx : order) {
      ++visits;
      const LabeledExample& example = examples[idx];
      const Relation predicted =
          argmax_label(activations(raw, example.features));
      if (predicted == example.label) continue;
      const auto t = static_cast<double>(visits);
      for (const auto& [feature, value] : example.features) {
        auto& w = raw[feature];
        auto& u = weighted[feature];
        w[static_cast<std::size_t>(index_of(example.label))] += value;
        u[static_cast<std::size_t>(index_of(example.label))] += t * value;
        w[static_cast<std::size_t>(index_of(predicted))] -= value;
        u[static_cast<std::size_t>(index_of(predicted))] -= t * value;
      }
    }
  }

  // averaged = ((T + 1) * final - weighted) / T, the mean over all T visits.
  PerceptronModel::WeightMap averaged;
  const double total = static_cast<double>(visits);
  for (const auto& [feature, w] : raw) {
    auto& avg = averaged[feature];
    const auto& u = weighted[feature];
    for (std::size_t r = 0; r < kRelationCount; ++r) {
      avg[r] = ((total + 1.0) * w[r] - u[r]) / total;
    }
  }
  return PerceptronModel(bucket, std::move(averaged), epochs, seed);
}

int tune_epochs(const std::vector<LabeledExample>& examples,
                DistanceBucket bucket, int folds,
                const std::vector<int>& candidate_epochs, std::uint64_t seed) {
  if (folds < 2) throw ValidationError("cross validation needs at least 2 folds");
  if (candidate_epochs.empty()) {
    throw ValidationError("no candidate epoch counts given");
  }

  std::vector<std::string> doc_ids;
  std::set<std::string> seen;
  for (const LabeledExample& example : examples) {
    if (seen.insert(example.doc_id).second) doc_ids.push_back(example.doc_id);
  }
  if (doc_ids.size() < static_cast<std::size_t>(folds)) {
    throw InsufficientDocuments(
        "need at least " + std::to_string(folds) + " documents, got " +
        std::to_string(doc_ids.size()));
  }

  std::mt19937_64 rng(seed);
  deterministic_shuffle(doc_ids, rng);
  std::map<std::string, int> fold_of;
  for (std::size_t i = 0; i < doc_ids.size(); ++i) {
    fold_of[doc_ids[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
  }

  int best_epochs = candidate_epochs.front();
  double best_accuracy = -1.0;
  for (int candidate : candidate_epochs) {
    double accuracy_sum = 0.0;
    for (int fold = 0; fold < folds; ++fold) {
      std::vector<LabeledExample> train_split;
      std::vector<const LabeledExample*> eval_split;
      for (const LabeledExample& example : examples) {
        if (fold_of[example.doc_id] == fold) {
          eval_split.push_back(&example);
        } else {
          train_split.push_back(example);
        }
      }
      if (train_split.empty() || eval_split.empty()) continue;
      PerceptronModel model = train(train_split, bucket, candidate, seed);
      std::size_t correct = 0;
      for (const LabeledExample* example : eval_split) {
        if (model.predict(example->features).label == example->label) {
          ++correct;
        }
      }
      accuracy_sum += static_cast<double>(correct) /
                      static_cast<double>(eval_split.size());
    }
    const double mean = accuracy_sum / folds;
    if (mean > best_accuracy ||
        (mean == best_accuracy && candidate < best_epochs)) {
      best_accuracy = mean;
      best_epochs = candidate;
    }
  }
  return best_epochs;
}

void PerceptronModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open model file " + path.string());
  out << "#temprel-model v1\n";
  out << "bucket=" << to_string(bucket_) << "\n";
  out << "epochs=" << epochs_trained_ << "\n";
  out << "seed=" << seed_ << "\n";

  std::map<std::string, std::array<double, kRelationCount>> sorted(
      averaged_.begin(), averaged_.end());
  char buffer[64];
  for (Relation r : kAllRelations) {
    for (const auto& [feature, weights] : sorted) {
      const double w = weights[static_cast<std::size_t>(index_of(r))];
      if (w == 0.0) continue;
      std::snprintf(buffer, sizeof buffer, "%.17g", w);
      out << to_string(r) << '\t' << feature << '\t' << buffer << '\n';
    }
  }
}

PerceptronModel PerceptronModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& message) -> ParseError {
    return ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                      ": " + message);
  };

  auto expect_header = [&](const std::string& prefix) -> std::string {
    if (!std::getline(in, line)) throw fail("unexpected end of file");
    ++line_no;
    if (line.rfind(prefix, 0) != 0) throw fail("expected '" + prefix + "...'");
    return line.substr(prefix.size());
  };

  if (expect_header("#temprel-model v1") != "") {
    throw fail("unsupported model version");
  }
  const std::string bucket_name = expect_header("bucket=");
  DistanceBucket bucket;
  if (bucket_name == "Same") {
    bucket = DistanceBucket::kSame;
  } else if (bucket_name == "Neighbor") {
    bucket = DistanceBucket::kNeighbor;
  } else {
    throw fail("unknown bucket '" + bucket_name + "'");
  }
  const int epochs = std::stoi(expect_header("epochs="));
  const std::uint64_t seed = std::stoull(expect_header("seed="));

  WeightMap averaged;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string label_name, feature, weight_text;
    if (!std::getline(fields, label_name, '\t') ||
        !std::getline(fields, feature, '\t') ||
        !std::getline(fields, weight_text)) {
      throw fail("expected label<TAB>feature<TAB>weight");
    }
    auto label = relation_from_string(label_name);
    if (!label) throw fail("unknown relation '" + label_name + "'");
    try {
      averaged[feature][static_cast<std::size_t>(index_of(*label))] =
          std::stod(weight_text);
    } catch (const std::exception&) {
      throw fail("bad weight '" + weight_text + "'");
    }
  }
  return PerceptronModel(bucket, std::move(averaged), epochs, seed);
}

}  // namespace temprel
