#include "motifae/linkpred.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "motifae/rng.hpp"

namespace motifae {

double cosine_score(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(fmt::format("cosine of vectors of length {} and {}", a.size(), b.size()));
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::string_view baseline_name(Baseline b) noexcept {
  switch (b) {
    case Baseline::CommonNeighbors: return "CN";
    case Baseline::Jaccard:         return "JC";
    case Baseline::AdamicAdar:      return "AA";
  }
  return "?";
}

Baseline parse_baseline(std::string_view name) {
  std::string upper;
  for (char c : name) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  if (upper == "CN") return Baseline::CommonNeighbors;
  if (upper == "JC") return Baseline::Jaccard;
  if (upper == "AA") return Baseline::AdamicAdar;
  throw std::invalid_argument(fmt::format("unknown baseline '{}'", name));
}

std::vector<Baseline> parse_baselines(std::string_view list) {
  std::vector<Baseline> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto item = list.substr(0, comma);
    if (item.find_first_not_of(" \t") != std::string_view::npos) out.push_back(parse_baseline(item));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

namespace {

template <class Fn>
void for_each_common(const Graph& g, Vertex a, Vertex b, Fn&& fn) {
  const auto na = g.neighbors(a);
  const auto nb = g.neighbors(b);
  auto i = na.begin();
  auto j = nb.begin();
  while (i != na.end() && j != nb.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      fn(*i);
      ++i;
      ++j;
    }
  }
}

}  // namespace

std::size_t common_neighbors(const Graph& g, Vertex a, Vertex b) {
  std::size_t count = 0;
  for_each_common(g, a, b, [&](Vertex) { ++count; });
  return count;
}

double baseline_score(const Graph& g, Vertex a, Vertex b, Baseline method) {
  switch (method) {
    case Baseline::CommonNeighbors:
      return static_cast<double>(common_neighbors(g, a, b));
    case Baseline::Jaccard: {
      const std::size_t common = common_neighbors(g, a, b);
      const std::size_t uni = g.degree(a) + g.degree(b) - common;
      return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
    }
    case Baseline::AdamicAdar: {
      // A common neighbour is adjacent to both endpoints, so its degree is >= 2.
      double sum = 0.0;
      for_each_common(g, a, b, [&](Vertex t) {
        sum += 1.0 / std::log(static_cast<double>(g.degree(t)));
      });
      return sum;
    }
  }
  return 0.0;
}

RankedList rank_examples(std::vector<ScoredExample> scored, std::uint64_t seed) {
  for (const auto& e : scored) {
    if (!std::isfinite(e.score)) {
      throw std::invalid_argument(fmt::format("non-finite score for pair ({}, {})", e.pair.u, e.pair.v));
    }
  }
  Rng rng(seed);
  rng.shuffle(std::span<ScoredExample>(scored));
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredExample& a, const ScoredExample& b) { return a.score > b.score; });
  RankedList r;
  for (const auto& e : scored) (e.positive ? r.positives : r.negatives) += 1;
  r.examples = std::move(scored);
  return r;
}

double auc(const RankedList& r) {
  if (r.positives == 0 || r.negatives == 0) {
    throw std::invalid_argument("AUC needs at least one positive and one negative example");
  }
  // Ascending midranks: a tie group occupying ascending ranks lo..hi gets
  // (lo + hi) / 2. Twice the rank sum stays integral.
  const auto& ex = r.examples;
  const std::size_t n = ex.size();
  double twice_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    std::size_t pos_in_group = 0;
    while (j < n && ex[j].score == ex[i].score) {
      pos_in_group += ex[j].positive ? 1 : 0;
      ++j;
    }
    // Descending positions i..j-1 are ascending ranks n-j+1 .. n-i.
    const double lo = static_cast<double>(n - j + 1);
    const double hi = static_cast<double>(n - i);
    twice_rank_sum += static_cast<double>(pos_in_group) * (lo + hi);
    i = j;
  }
  const double np = static_cast<double>(r.positives);
  const double nn = static_cast<double>(r.negatives);
  // U = R+ - np (np + 1) / 2, doubled to keep half-integers exact.
  const double twice_u = twice_rank_sum - np * (np + 1.0);
  return (twice_u / 2.0) / (np * nn);
}

double precision_at_k(const RankedList& r, std::size_t k) {
  if (k < 1 || k > r.examples.size()) {
    throw std::out_of_range(
        fmt::format("precision cutoff {} outside 1..{}", k, r.examples.size()));
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i) hits += r.examples[i].positive ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(k);
}

double avg_rank(const RankedList& r) {
  if (r.positives == 0) throw std::invalid_argument("Avg. Rank needs at least one positive example");
  double sum = 0.0;
  for (std::size_t i = 0; i < r.examples.size(); ++i) {
    if (r.examples[i].positive) sum += static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(r.positives);
}

std::vector<WeakTie> weak_tie_filter(const EvalSplit& split, std::size_t threshold) {
  std::vector<WeakTie> out;
  for (const Edge& e : split.positives) {
    const std::size_t common = common_neighbors(split.train_graph, e.u, e.v);
    if (common < threshold) out.push_back({e, common});
  }
  return out;
}

Scorer embedding_scorer(const Embeddings& e, std::string name) {
  Scorer s;
  s.name = std::move(name);
  s.score = [&e](Vertex a, Vertex b) { return cosine_score(e.row(a), e.row(b)); };
  s.degenerate = [&e](Vertex a, Vertex b) {
    const auto zero = [](std::span<const double> v) {
      return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
    };
    return zero(e.row(a)) || zero(e.row(b));
  };
  return s;
}

Scorer baseline_scorer(const Graph& train_graph, Baseline method) {
  Scorer s;
  s.name = std::string(baseline_name(method));
  s.score = [&train_graph, method](Vertex a, Vertex b) {
    return baseline_score(train_graph, a, b, method);
  };
  return s;
}

std::vector<ScoredExample> score_pairs(const Scorer& scorer, std::span<const Edge> positives,
                                       std::span<const Edge> negatives,
                                       std::size_t* zero_vector_pairs) {
  std::vector<ScoredExample> out;
  out.reserve(positives.size() + negatives.size());
  std::size_t degenerate = 0;
  const auto add = [&](const Edge& e, bool positive) {
    out.push_back({e, scorer.score(e.u, e.v), positive});
    if (scorer.degenerate && scorer.degenerate(e.u, e.v)) ++degenerate;
  };
  for (const Edge& e : positives) add(e, true);
  for (const Edge& e : negatives) add(e, false);
  if (zero_vector_pairs != nullptr) *zero_vector_pairs = degenerate;
  return out;
}

MetricsReport evaluate(const Scorer& scorer, const EvalSplit& split, const EvalOptions& opts) {
  MetricsReport report;
  report.method = scorer.name;
  report.seed = opts.seed;
  report.positives = split.positives.size();
  report.negatives = split.negatives.size();

  const RankedList ranked = rank_examples(
      score_pairs(scorer, split.positives, split.negatives, &report.zero_vector_pairs), opts.seed);
  report.auc = auc(ranked);
  report.avg_rank = avg_rank(ranked);
  for (std::size_t k : opts.ks) report.precision_at[k] = precision_at_k(ranked, k);

  if (opts.weak_ties) {
    const auto ties = weak_tie_filter(split, opts.weak_tie_threshold);
    std::map<std::size_t, std::vector<Edge>> strata;
    std::vector<Edge> all;
    for (const auto& t : ties) {
      strata[t.common].push_back(t.pair);
      all.push_back(t.pair);
    }
    if (!all.empty()) {
      report.weak_tie_avg_rank =
          avg_rank(rank_examples(score_pairs(scorer, all, split.negatives), opts.seed));
    }
    for (const auto& [stratum, pairs] : strata) {
      report.weak_tie[stratum] =
          avg_rank(rank_examples(score_pairs(scorer, pairs, split.negatives), opts.seed));
      report.weak_tie_sizes[stratum] = pairs.size();
    }
  }
  return report;
}

std::string metrics_json(std::span<const MetricsReport> reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["auc"] = r.auc;
    nlohmann::ordered_json precision = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.precision_at) precision[std::to_string(k)] = v;
    j["precision"] = precision;
    j["avg_rank"] = r.avg_rank;
    nlohmann::ordered_json weak = nlohmann::ordered_json::object();
    for (const auto& [s, v] : r.weak_tie) weak[std::to_string(s)] = v;
    j["weak_tie"] = weak;
    if (r.weak_tie_avg_rank) j["weak_tie_avg_rank"] = *r.weak_tie_avg_rank;
    j["positives"] = r.positives;
    j["negatives"] = r.negatives;
    j["zero_vector_pairs"] = r.zero_vector_pairs;
    j["seed"] = r.seed;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string metrics_csv_header(std::span<const std::size_t> ks, bool weak_ties,
                               std::string_view leading_column) {
  std::string out = fmt::format("{},auc,avg_rank", leading_column);
  for (std::size_t k : ks) out += fmt::format(",precision@{}", k);
  if (weak_ties) out += ",weak_tie_avg_rank,weak_tie_0,weak_tie_1,weak_tie_2";
  return out;
}

std::string metrics_csv_row(const MetricsReport& r, std::span<const std::size_t> ks,
                            bool weak_ties, std::string_view leading_value) {
  std::string out = fmt::format("{},{:.6f},{:.6f}", leading_value, r.auc, r.avg_rank);
  for (std::size_t k : ks) {
    const auto it = r.precision_at.find(k);
    out += it == r.precision_at.end() ? std::string(",") : fmt::format(",{:.6f}", it->second);
  }
  if (weak_ties) {
    out += r.weak_tie_avg_rank ? fmt::format(",{:.6f}", *r.weak_tie_avg_rank) : std::string(",");
    for (std::size_t s = 0; s < 3; ++s) {
      const auto it = r.weak_tie.find(s);
      out += it == r.weak_tie.end() ? std::string(",") : fmt::format(",{:.6f}", it->second);
    }
  }
  return out;
}

}  // namespace motifae
