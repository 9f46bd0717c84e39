#pragma once

#include "temprel/graph.hpp"
#include "temprel/relations.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace temprel {

/// Two-label ratio for a frame pair in text order, add-one smoothed so the
/// two sides always sum to one.
struct PairPrior {
  double eta_before = 0.5;
  double eta_after = 0.5;
};

/// Add-one smoothed distribution over all six labels; sums to one.
struct PriorDistribution {
  std::array<double, kRelationCount> probs{};

  double prob(Relation r) const { return probs[index_of(r)]; }
};

enum class NeighborDirection { kTBefore, kTAfter };

/// Conditional neighbor distribution of one frame: the frames it most often
/// precedes (or follows) in time, with conditional probabilities sorted
/// descending, frame-lexicographic on ties.
struct NeighborDistribution {
  NeighborDirection direction = NeighborDirection::kTBefore;
  std::vector<std::pair<std::string, double>> entries;
};

struct ExtremePair {
  std::string frame1;
  std::string frame2;
  PairPrior prior;
  std::uint64_t count_before = 0;
  std::uint64_t count_after = 0;
  /// Unsmoothed ratio the threshold filter and the ordering use.
  double ratio = 0.0;
  bool t_before = true;
};

/// Aggregated (frame1, frame2, relation) counts over a corpus of temporal
/// graphs, keyed in text order only: frame1's event appears earlier in text.
class KnowledgeBase {
 public:
  using Counts =
      std::map<std::pair<std::string, std::string>,
               std::array<std::uint64_t, kRelationCount>>;

  /// Counts every stored edge of the graph under the event-to-frame mapping
  /// and bumps the graph counter.
  void accumulate(const TemporalGraph& graph,
                  const std::map<int, std::string>& frames);

  /// Entrywise sum; merging per-document KBs in any order equals a single
  /// sequential accumulation.
  void merge(const KnowledgeBase& other);

  /// Direct count injection for curated or externally aggregated data.
  void add_counts(const std::string& v1, const std::string& v2, Relation r,
                  std::uint64_t n);

  std::uint64_t count(const std::string& v1, const std::string& v2,
                      Relation r) const;
  /// Marginal over second frames: sum_v' count(v, v', r).
  std::uint64_t marginal(const std::string& v, Relation r) const;

  PairPrior eta(const std::string& v1, const std::string& v2) const;
  PriorDistribution prior_distribution(const std::string& v1,
                                       const std::string& v2) const;
  NeighborDistribution neighbor_distribution(const std::string& v,
                                             NeighborDirection direction,
                                             int k) const;
  std::vector<ExtremePair> extreme_pairs(double threshold,
                                         std::uint64_t min_count) const;

  std::uint64_t graph_count() const { return graph_count_; }
  const Counts& counts() const { return counts_; }
  /// Frames occurring in at least one count entry.
  std::set<std::string> vocabulary() const;

  void save(const std::filesystem::path& path) const;
  static KnowledgeBase load(const std::filesystem::path& path);

  bool operator==(const KnowledgeBase&) const = default;

 private:
  Counts counts_;
  std::uint64_t graph_count_ = 0;
};

/// Per-fold smoothed prior distributions for one requested frame pair,
/// resampled over graphs, plus the per-relation envelope across folds.
struct BootstrapPair {
  std::string frame1;
  std::string frame2;
  /// folds x 6 prior values.
  std::vector<std::array<double, kRelationCount>> fold_values;
  std::array<double, kRelationCount> min{};
  std::array<double, kRelationCount> max{};
};

/// Bootstrap over graphs: each fold draws ceil(fraction * N) graphs with
/// replacement using the seeded generator, rebuilds counts and recomputes
/// the prior distribution of every requested pair.
std::vector<BootstrapPair> bootstrap_priors(
    const std::vector<TemporalGraph>& graphs,
    const std::vector<std::map<int, std::string>>& frames,
    const std::vector<std::pair<std::string, std::string>>& pairs, int folds,
    double fraction, std::uint64_t seed);

}  // namespace temprel
