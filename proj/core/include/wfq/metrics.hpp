#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace wfq {

struct EvalResult {
  double accuracy = 0.0;
  long tp = 0, fp = 0, tn = 0, fn = 0;
  long n = 0;
};

EvalResult accuracy(std::span<const int> predictions, std::span<const int> gold);

// Sufficient statistics for corpus BLEU; additive across sentences.
struct BleuStats {
  std::array<long, 4> match{};  // clipped n-gram matches per order
  std::array<long, 4> total{};  // candidate n-gram counts per order
  long cand_len = 0;
  long ref_len = 0;

  BleuStats& operator+=(const BleuStats& o);
};

using Tokens = std::vector<std::string>;

BleuStats bleu_stats(std::span<const std::string> candidate,
                     std::span<const std::string> reference, int max_order = 4);

// Corpus BLEU: geometric mean of modified precisions over orders 1..max_order
// times the brevity penalty. Unsmoothed; any zero precision gives 0.
double bleu_score(const BleuStats& stats, int max_order);

double bleu_corpus(std::span<const Tokens> candidates,
                   std::span<const Tokens> references, int max_order);

// Sentence BLEU with add-1 smoothing on orders >= 2 (order 1 unsmoothed),
// for per-sentence oracle selection. Empty candidate scores 0.
double bleu_sentence_smoothed(std::span<const std::string> candidate,
                              std::span<const std::string> reference,
                              int max_order = 4);

}  // namespace wfq
