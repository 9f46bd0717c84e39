#pragma once

#include "temprel/composition.hpp"
#include "temprel/document.hpp"
#include "temprel/graph.hpp"
#include "temprel/inference.hpp"
#include "temprel/kb.hpp"
#include "temprel/perceptron.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace temprel::testing {

/// Builds a single-sentence document from (text, pos, lemma) triples; every
/// token whose POS starts with "VB" becomes an event with frame lemma.01.
Document sentence_doc(const std::vector<std::array<std::string, 3>>& tokens);

/// A KB of curated frame pairs with strongly one-sided before/after counts,
/// twelve rows used across threshold and ratio tests.
KnowledgeBase extreme_fixture_kb();

/// Number of rows in the extreme fixture.
inline constexpr std::size_t kExtremeFixtureRows = 12;

/// Random graph guaranteed consistent by construction: nodes are realized as
/// concrete intervals and a random subset of pairs is labeled with the
/// relation those intervals exhibit.
TemporalGraph random_consistent_graph(std::mt19937_64& rng, int max_nodes);

/// Random solver instance: up to `max_events` events, up to `max_pairs`
/// candidate pairs, random score/prior simplexes, lambda from {0, 0.5, 1}.
IlpProblem random_problem(std::mt19937_64& rng, int max_events = 4,
                          int max_pairs = 4);

/// Reference maximizer: enumerates all 6^n assignments, keeping the first
/// feasible maximum in lexicographic assignment order.
Assignment brute_force_ilp(const IlpProblem& problem,
                           const CompositionTable& table);

/// Perceptron model whose averaged weights are set directly.
PerceptronModel rigged_model(DistanceBucket bucket,
                             PerceptronModel::WeightMap weights);

/// Lexical resource whose temporal-connective list is replaced by the given
/// comma-separated words.
LexicalResource lexicon_with_connectives(const std::string& comma_list);

// --- synthetic corpora -----------------------------------------------------

/// Connective-rule corpus: every document plants "before"/"after"/"and"
/// between event mentions and labels pairs accordingly (vague for "and"),
/// both within sentences and across adjacent sentences.
std::vector<Document> connective_corpus(int documents, std::uint64_t seed,
                                        bool with_gold = true);

/// Two-event documents over one fixed frame pair, differing only in a
/// preposition-tagged filler word drawn from a fixed pool; the filler
/// surfaces as a prep2 feature, so it is the only instance-specific signal.
std::vector<Document> ambiguous_eval_docs(int documents, std::uint64_t seed);

/// Same-bucket classifier with near-uniform scores: a tiny before/after lean
/// whose direction alternates with the filler word, every other weight zero.
PerceptronModel ambiguous_model();

/// The frame pair every ambiguous document uses, in text order.
std::pair<std::string, std::string> ambiguous_pair();

}  // namespace temprel::testing
