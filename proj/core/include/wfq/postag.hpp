#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace wfq {

struct TaggedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};

// Column format: one token per line, blank line between sentences, '#' lines
// skipped. Column indices select the token and POS fields.
std::vector<TaggedSentence> load_conll(const std::string& path, int token_col = 0,
                                       int tag_col = 1);

// TSV `query<TAB>tokens<TAB>tags` with space-separated fields; lets a user
// reuse tags produced by an external tagger. Duplicate queries: last one
// wins with a warning on stderr.
std::unordered_map<std::string, TaggedSentence> load_pretagged(const std::string& path);

// Averaged perceptron with greedy left-to-right decoding.
//
// Training walks the corpus `epochs` times, reshuffling the sentence order
// each epoch from a single Rng(seed) stream, predicts each token greedily
// with the current weights, and applies a +1/-1 update on mistakes. Final
// weights are the average of the weight vector after every token step.
// Deterministic given (corpus, epochs, seed); a trained tagger is immutable.
class PerceptronTagger {
 public:
  static PerceptronTagger train(std::span<const TaggedSentence> corpus, int epochs,
                                uint64_t seed);

  std::vector<std::string> tag(std::span<const std::string> tokens) const;
  TaggedSentence tag_sentence(const std::vector<std::string>& tokens) const;

  const std::vector<std::string>& tagset() const { return tagset_; }
  using WeightMap = std::unordered_map<std::string, std::unordered_map<int, double>>;
  const WeightMap& weights() const { return weights_; }

  void save(const std::string& path) const;
  static PerceptronTagger load(const std::string& path);
  std::string to_json_string() const;
  static PerceptronTagger from_json_string(const std::string& json);

  // Context features for the token at position i. prev/prev2 are the tags
  // predicted to the left ("<s>" before the sentence start).
  static std::vector<std::string> features(std::span<const std::string> tokens,
                                           size_t i, const std::string& prev,
                                           const std::string& prev2);

 private:
  std::vector<std::string> tagset_;  // sorted; index is the tag id
  std::unordered_map<std::string, int> tag_id_;
  WeightMap weights_;
  int epochs_ = 0;
  uint64_t seed_ = 0;

  int predict(const std::vector<std::string>& feats) const;
};

// Fraction of tokens tagged correctly over a tagged corpus.
double tag_accuracy(const PerceptronTagger& tagger,
                    std::span<const TaggedSentence> corpus);

}  // namespace wfq
