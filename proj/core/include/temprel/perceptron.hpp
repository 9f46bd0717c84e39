#pragma once

#include "temprel/document.hpp"
#include "temprel/features.hpp"
#include "temprel/relations.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace temprel {

struct LabeledExample {
  FeatureVector features;
  Relation label = Relation::kVague;
  /// Owning document, used to split cross-validation folds by document.
  std::string doc_id;
};

struct ScoredPrediction {
  Relation label = Relation::kBefore;
  /// Softmax over the six per-label activations; sums to one.
  std::array<double, kRelationCount> scores{};

  double score(Relation r) const { return scores[index_of(r)]; }
};

/// Multiclass averaged perceptron for one sentence-distance bucket. Only the
/// averaged weights survive training; they are what predictions use.
class PerceptronModel {
 public:
  using WeightMap =
      std::unordered_map<std::string, std::array<double, kRelationCount>>;

  PerceptronModel() = default;
  PerceptronModel(DistanceBucket bucket, WeightMap averaged_weights,
                  int epochs_trained, std::uint64_t seed);

  DistanceBucket bucket() const { return bucket_; }
  int epochs_trained() const { return epochs_trained_; }
  std::uint64_t seed() const { return seed_; }
  const WeightMap& averaged_weights() const { return averaged_; }

  ScoredPrediction predict(const FeatureVector& fv) const;

  /// Text serialization with 17 significant digits so weights round-trip
  /// exactly.
  void save(const std::filesystem::path& path) const;
  static PerceptronModel load(const std::filesystem::path& path);

 private:
  DistanceBucket bucket_ = DistanceBucket::kSame;
  WeightMap averaged_;
  int epochs_trained_ = 1;
  std::uint64_t seed_ = 0;
};

/// Trains an averaged perceptron: one pass order reshuffle per epoch with the
/// seeded generator; on a mistake the feature vector is added to the gold
/// label's weights and subtracted from the predicted label's. The averaged
/// weights are the exact mean of the weight snapshots after each update.
PerceptronModel train(const std::vector<LabeledExample>& examples,
                      DistanceBucket bucket, int epochs, std::uint64_t seed);

/// Cross-validated epoch selection. Folds split whole documents; returns the
/// candidate with the highest mean fold accuracy, ties toward fewer epochs.
int tune_epochs(const std::vector<LabeledExample>& examples,
                DistanceBucket bucket, int folds,
                const std::vector<int>& candidate_epochs, std::uint64_t seed);

}  // namespace temprel
