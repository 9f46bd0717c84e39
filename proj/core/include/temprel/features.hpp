#pragma once

#include "temprel/document.hpp"
#include "temprel/lexicon.hpp"

#include <map>
#include <string>

namespace temprel {

/// Sparse feature vector: indicator features carry 1.0, the raw distance
/// feature carries the signed token distance. Names are namespaced by family
/// prefix (pos1:, pos2:, ctx:, dist:, modal:, conn:, syn:, deriv:, prep1:,
/// prep2:, prop:).
using FeatureVector = std::map<std::string, double>;

/// Extracts the pairwise feature vector for two events of one document:
/// verb and context POS windows, token distance (raw and bucketed), modal
/// verbs and temporal connectives between the mentions, synonym and
/// derivation indicators, nearest preceding preposition per verb, and event
/// property indicators.
///
/// Requires e1 before e2 in text order and sentence distance at most one;
/// violations throw ValidationError rather than silently reordering.
FeatureVector extract(const Document& doc, const Event& e1, const Event& e2,
                      const LexicalResource& lex);

}  // namespace temprel
