#include "temprel/kb.hpp"

#include "temprel/errors.hpp"
#include "temprel/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace temprel {

namespace {

// Plain CRC-32 (IEEE 802.3) over the data section of a KB file.
class Crc32 {
 public:
  void update(const std::string& bytes) {
    for (unsigned char ch : bytes) {
      state_ = table()[(state_ ^ ch) & 0xffu] ^ (state_ >> 8);
    }
  }

  std::uint32_t value() const { return state_ ^ 0xffffffffu; }

 private:
  static const std::array<std::uint32_t, 256>& table() {
    static const std::array<std::uint32_t, 256> t = [] {
      std::array<std::uint32_t, 256> out{};
      for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int bit = 0; bit < 8; ++bit) {
          c = (c & 1u) ? 0xedb88320u ^ (c >> 1) : c >> 1;
        }
        out[i] = c;
      }
      return out;
    }();
    return t;
  }

  std::uint32_t state_ = 0xffffffffu;
};

std::string frame_of(const std::map<int, std::string>& frames, int node) {
  auto it = frames.find(node);
  if (it == frames.end()) {
    throw ValidationError("no frame mapping for event " + std::to_string(node));
  }
  return it->second;
}

}  // namespace

void KnowledgeBase::accumulate(const TemporalGraph& graph,
                               const std::map<int, std::string>& frames) {
  for (const auto& [pair, relation] : graph.edges()) {
    auto& slots = counts_[{frame_of(frames, pair.first),
                           frame_of(frames, pair.second)}];
    ++slots[static_cast<std::size_t>(index_of(relation))];
  }
  ++graph_count_;
}

void KnowledgeBase::add_counts(const std::string& v1, const std::string& v2,
                               Relation r, std::uint64_t n) {
  counts_[{v1, v2}][static_cast<std::size_t>(index_of(r))] += n;
}

void KnowledgeBase::merge(const KnowledgeBase& other) {
  for (const auto& [key, slots] : other.counts_) {
    auto& mine = counts_[key];
    for (std::size_t r = 0; r < slots.size(); ++r) mine[r] += slots[r];
  }
  graph_count_ += other.graph_count_;
}

std::uint64_t KnowledgeBase::count(const std::string& v1, const std::string& v2,
                                   Relation r) const {
  auto it = counts_.find({v1, v2});
  if (it == counts_.end()) return 0;
  return it->second[static_cast<std::size_t>(index_of(r))];
}

std::uint64_t KnowledgeBase::marginal(const std::string& v, Relation r) const {
  std::uint64_t total = 0;
  for (auto it = counts_.lower_bound({v, std::string()});
       it != counts_.end() && it->first.first == v; ++it) {
    total += it->second[static_cast<std::size_t>(index_of(r))];
  }
  return total;
}

PairPrior KnowledgeBase::eta(const std::string& v1, const std::string& v2) const {
  const auto before = static_cast<double>(count(v1, v2, Relation::kBefore));
  const auto after = static_cast<double>(count(v1, v2, Relation::kAfter));
  PairPrior prior;
  prior.eta_before = (before + 1.0) / (before + after + 2.0);
  prior.eta_after = 1.0 - prior.eta_before;
  return prior;
}

PriorDistribution KnowledgeBase::prior_distribution(const std::string& v1,
                                                    const std::string& v2) const {
  std::array<std::uint64_t, kRelationCount> raw{};
  if (auto it = counts_.find({v1, v2}); it != counts_.end()) raw = it->second;
  double total = 0.0;
  for (std::uint64_t c : raw) total += static_cast<double>(c);
  PriorDistribution prior;
  for (std::size_t r = 0; r < raw.size(); ++r) {
    prior.probs[r] = (static_cast<double>(raw[r]) + 1.0) /
                     (total + static_cast<double>(kRelationCount));
  }
  return prior;
}

NeighborDistribution KnowledgeBase::neighbor_distribution(
    const std::string& v, NeighborDirection direction, int k) const {
  if (k < 1) throw ValidationError("neighbor listing needs k >= 1");
  const Relation relation = direction == NeighborDirection::kTBefore
                                ? Relation::kBefore
                                : Relation::kAfter;
  NeighborDistribution out;
  out.direction = direction;
  const std::uint64_t denom = marginal(v, relation);
  if (denom == 0) return out;  // zero marginal yields an empty listing

  for (auto it = counts_.lower_bound({v, std::string()});
       it != counts_.end() && it->first.first == v; ++it) {
    const std::uint64_t c =
        it->second[static_cast<std::size_t>(index_of(relation))];
    if (c == 0) continue;
    out.entries.emplace_back(it->first.second,
                             static_cast<double>(c) /
                                 static_cast<double>(denom));
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (out.entries.size() > static_cast<std::size_t>(k)) {
    out.entries.resize(static_cast<std::size_t>(k));
  }
  return out;
}

std::vector<ExtremePair> KnowledgeBase::extreme_pairs(
    double threshold, std::uint64_t min_count) const {
  if (threshold < 0.5 || threshold >= 1.0) {
    throw ValidationError("threshold must lie in [0.5, 1)");
  }
  std::vector<ExtremePair> out;
  for (const auto& [key, slots] : counts_) {
    const std::uint64_t before =
        slots[static_cast<std::size_t>(index_of(Relation::kBefore))];
    const std::uint64_t after =
        slots[static_cast<std::size_t>(index_of(Relation::kAfter))];
    const std::uint64_t support = before + after;
    if (support < std::max<std::uint64_t>(min_count, 1)) continue;
    // The filter uses the unsmoothed two-label ratio; the smoothed PairPrior
    // is attached for reporting.
    const double ratio =
        static_cast<double>(std::max(before, after)) /
        static_cast<double>(support);
    if (ratio <= threshold) continue;
    ExtremePair entry;
    entry.frame1 = key.first;
    entry.frame2 = key.second;
    entry.prior = eta(key.first, key.second);
    entry.count_before = before;
    entry.count_after = after;
    entry.ratio = ratio;
    entry.t_before = before >= after;
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(), [](const ExtremePair& a,
                                       const ExtremePair& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return std::pair{a.frame1, a.frame2} < std::pair{b.frame1, b.frame2};
  });
  return out;
}

std::set<std::string> KnowledgeBase::vocabulary() const {
  std::set<std::string> vocab;
  for (const auto& [key, slots] : counts_) {
    vocab.insert(key.first);
    vocab.insert(key.second);
  }
  return vocab;
}

void KnowledgeBase::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open KB file " + path.string());
  out << "#temprob-kb v1\n";
  out << "graphs=" << graph_count_ << "\n";
  Crc32 crc;
  for (const auto& [key, slots] : counts_) {
    // Relations in lexicographic name order keep the data lines sorted.
    std::vector<Relation> order(kAllRelations.begin(), kAllRelations.end());
    std::sort(order.begin(), order.end(), [](Relation a, Relation b) {
      return to_string(a) < to_string(b);
    });
    for (Relation r : order) {
      const std::uint64_t c = slots[static_cast<std::size_t>(index_of(r))];
      if (c == 0) continue;
      std::ostringstream line;
      line << key.first << '\t' << key.second << '\t' << to_string(r) << '\t'
           << c << '\n';
      crc.update(line.str());
      out << line.str();
    }
  }
  char footer[16];
  std::snprintf(footer, sizeof footer, "%08x", crc.value());
  out << "#crc32=" << footer << "\n";
}

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open KB file " + path.string());
  const std::string name = path.filename().string();
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& message) -> ParseError {
    return ParseError(name + ":" + std::to_string(line_no) + ": " + message);
  };

  if (!std::getline(in, line) || line != "#temprob-kb v1") {
    ++line_no;
    throw fail("expected header '#temprob-kb v1'");
  }
  ++line_no;
  if (!std::getline(in, line) || line.rfind("graphs=", 0) != 0) {
    ++line_no;
    throw fail("expected 'graphs=<N>'");
  }
  ++line_no;

  KnowledgeBase kb;
  try {
    kb.graph_count_ = std::stoull(line.substr(7));
  } catch (const std::exception&) {
    throw fail("bad graph count");
  }

  Crc32 crc;
  bool saw_footer = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("#crc32=", 0) == 0) {
      char expected[16];
      std::snprintf(expected, sizeof expected, "%08x", crc.value());
      if (line.substr(7) != expected) {
        throw ChecksumMismatch(name + ": data checksum " + expected +
                               " does not match footer " + line.substr(7));
      }
      saw_footer = true;
      continue;
    }
    if (saw_footer) throw fail("data after checksum footer");
    crc.update(line + "\n");
    std::istringstream fields(line);
    std::string frame1, frame2, relation_name, count_text;
    if (!std::getline(fields, frame1, '\t') ||
        !std::getline(fields, frame2, '\t') ||
        !std::getline(fields, relation_name, '\t') ||
        !std::getline(fields, count_text)) {
      throw fail("expected frame1<TAB>frame2<TAB>relation<TAB>count");
    }
    auto relation = relation_from_string(relation_name);
    if (!relation) throw fail("unknown relation '" + relation_name + "'");
    std::uint64_t count = 0;
    try {
      std::size_t used = 0;
      count = std::stoull(count_text, &used);
      if (used != count_text.size()) throw std::invalid_argument(count_text);
    } catch (const std::exception&) {
      throw fail("bad count '" + count_text + "'");
    }
    kb.counts_[{frame1, frame2}]
              [static_cast<std::size_t>(index_of(*relation))] += count;
  }
  if (!saw_footer) {
    ++line_no;
    throw fail("missing checksum footer");
  }
  return kb;
}

std::vector<BootstrapPair> bootstrap_priors(
    const std::vector<TemporalGraph>& graphs,
    const std::vector<std::map<int, std::string>>& frames,
    const std::vector<std::pair<std::string, std::string>>& pairs, int folds,
    double fraction, std::uint64_t seed) {
  if (folds < 1) throw ValidationError("bootstrap needs at least one fold");
  if (fraction <= 0.0 || fraction > 1.0) {
    throw ValidationError("bootstrap fraction must lie in (0, 1]");
  }
  if (graphs.size() != frames.size()) {
    throw ValidationError("graphs and frame mappings differ in length");
  }

  std::vector<BootstrapPair> out(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    out[p].frame1 = pairs[p].first;
    out[p].frame2 = pairs[p].second;
    out[p].min.fill(1.0);
    out[p].max.fill(0.0);
  }

  const auto total = graphs.size();
  const auto sample_size = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(total)));
  std::mt19937_64 rng(seed);
  for (int fold = 0; fold < folds; ++fold) {
    KnowledgeBase kb;
    for (std::size_t draw = 0; draw < sample_size && total > 0; ++draw) {
      const auto pick = static_cast<std::size_t>(bounded_uniform(rng, total));
      kb.accumulate(graphs[pick], frames[pick]);
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const PriorDistribution prior =
          kb.prior_distribution(pairs[p].first, pairs[p].second);
      out[p].fold_values.push_back(prior.probs);
      for (std::size_t r = 0; r < prior.probs.size(); ++r) {
        out[p].min[r] = std::min(out[p].min[r], prior.probs[r]);
        out[p].max[r] = std::max(out[p].max[r], prior.probs[r]);
      }
    }
  }
  return out;
}

}  // namespace temprel
