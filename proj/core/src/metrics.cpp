#include "wfq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "wfq/error.hpp"

namespace wfq {

EvalResult accuracy(std::span<const int> predictions, std::span<const int> gold) {
  if (predictions.size() != gold.size())
    throw Error("accuracy: prediction/gold length mismatch");
  if (predictions.empty()) throw Error("accuracy: empty input");
  EvalResult r;
  r.n = static_cast<long>(predictions.size());
  for (size_t i = 0; i < predictions.size(); ++i) {
    if (gold[i]) {
      ++(predictions[i] ? r.tp : r.fn);
    } else {
      ++(predictions[i] ? r.fp : r.tn);
    }
  }
  r.accuracy = static_cast<double>(r.tp + r.tn) / static_cast<double>(r.n);
  return r;
}

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (int k = 0; k < 4; ++k) {
    match[static_cast<size_t>(k)] += o.match[static_cast<size_t>(k)];
    total[static_cast<size_t>(k)] += o.total[static_cast<size_t>(k)];
  }
  cand_len += o.cand_len;
  ref_len += o.ref_len;
  return *this;
}

namespace {

// n-grams joined with \x1f, which cannot occur inside whitespace-split tokens.
std::unordered_map<std::string, long> ngram_counts(std::span<const std::string> tokens,
                                                   int n) {
  std::unordered_map<std::string, long> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + static_cast<size_t>(n) <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + static_cast<size_t>(k)];
    }
    ++counts[key];
  }
  return counts;
}

double brevity_penalty(long cand_len, long ref_len) {
  if (cand_len == 0) return 0.0;
  if (cand_len >= ref_len) return 1.0;
  return std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len));
}

}  // namespace

BleuStats bleu_stats(std::span<const std::string> candidate,
                     std::span<const std::string> reference, int max_order) {
  if (max_order < 1 || max_order > 4) throw Error("bleu: max_order must be in 1..4");
  BleuStats s;
  s.cand_len = static_cast<long>(candidate.size());
  s.ref_len = static_cast<long>(reference.size());
  for (int n = 1; n <= max_order; ++n) {
    auto cand = ngram_counts(candidate, n);
    auto ref = ngram_counts(reference, n);
    long matched = 0, total = 0;
    for (const auto& [gram, c] : cand) {
      total += c;
      auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(c, it->second);
    }
    s.match[static_cast<size_t>(n - 1)] = matched;
    s.total[static_cast<size_t>(n - 1)] = total;
  }
  return s;
}

double bleu_score(const BleuStats& stats, int max_order) {
  if (max_order < 1 || max_order > 4) throw Error("bleu: max_order must be in 1..4");
  double log_sum = 0.0;
  for (int n = 1; n <= max_order; ++n) {
    long m = stats.match[static_cast<size_t>(n - 1)];
    long t = stats.total[static_cast<size_t>(n - 1)];
    if (m == 0 || t == 0) return 0.0;
    log_sum += std::log(static_cast<double>(m) / static_cast<double>(t));
  }
  return brevity_penalty(stats.cand_len, stats.ref_len) *
         std::exp(log_sum / max_order);
}

double bleu_corpus(std::span<const Tokens> candidates,
                   std::span<const Tokens> references, int max_order) {
  if (candidates.empty()) throw Error("bleu_corpus: empty corpus");
  if (candidates.size() != references.size())
    throw Error("bleu_corpus: candidate/reference count mismatch");
  BleuStats sum;
  for (size_t i = 0; i < candidates.size(); ++i)
    sum += bleu_stats(candidates[i], references[i], max_order);
  return bleu_score(sum, max_order);
}

double bleu_sentence_smoothed(std::span<const std::string> candidate,
                              std::span<const std::string> reference,
                              int max_order) {
  if (candidate.empty()) return 0.0;
  BleuStats s = bleu_stats(candidate, reference, max_order);
  double log_sum = 0.0;
  for (int n = 1; n <= max_order; ++n) {
    double m = static_cast<double>(s.match[static_cast<size_t>(n - 1)]);
    double t = static_cast<double>(s.total[static_cast<size_t>(n - 1)]);
    if (n >= 2) {
      m += 1.0;
      t += 1.0;
    }
    if (m == 0.0 || t == 0.0) return 0.0;
    log_sum += std::log(m / t);
  }
  return brevity_penalty(s.cand_len, s.ref_len) * std::exp(log_sum / max_order);
}

}  // namespace wfq
