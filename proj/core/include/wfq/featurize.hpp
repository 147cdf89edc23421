#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wfq {

enum class FeatureFamily : int {
  Char3 = 0,
  Char4,
  Word1,
  Word2,
  Pos1,
  Pos2,
  Pos3,
};

inline constexpr int kNumFamilies = 7;

inline constexpr std::array<FeatureFamily, kNumFamilies> kAllFamilies = {
    FeatureFamily::Char3, FeatureFamily::Char4, FeatureFamily::Word1,
    FeatureFamily::Word2, FeatureFamily::Pos1,  FeatureFamily::Pos2,
    FeatureFamily::Pos3};

const char* family_name(FeatureFamily f);
bool family_is_char(FeatureFamily f);
bool family_is_pos(FeatureFamily f);

// Family subsets are bitmasks so ablation configurations are plain data.
using FamilyMask = unsigned;

inline constexpr FamilyMask family_bit(FeatureFamily f) {
  return 1u << static_cast<int>(f);
}
inline constexpr bool has_family(FamilyMask m, FeatureFamily f) {
  return (m & family_bit(f)) != 0;
}

// Accepts the compact ablation notation, e.g. "word-1,2 pos-1,2,3",
// "word-1,2+char-3,4", or plain names like "word1,word2". Throws on unknown
// family or order.
FamilyMask parse_families(std::string_view spec);
std::string families_to_string(FamilyMask m);

// Lowercases, splits on whitespace, and peels the punctuation marks
// ? . , ! ' " off token edges into their own tokens.
std::vector<std::string> tokenize(std::string_view text);

// Sliding windows of width n over the lowercased string with ^/$ boundary
// markers; spaces are ordinary characters, so windows cross word boundaries.
std::vector<std::string> char_ngrams(std::string_view text, int n);

// For n >= 2 the sequence is padded with n-1 <s> / </s> tokens per side;
// windows are joined with single spaces.
std::vector<std::string> token_ngrams(std::span<const std::string> tokens, int n);

inline std::vector<std::string> word_ngrams(std::span<const std::string> tokens, int n) {
  return token_ngrams(tokens, n);
}
inline std::vector<std::string> pos_ngrams(std::span<const std::string> tags, int n) {
  return token_ngrams(tags, n);
}

// A query with its derived token/tag views, computed once and shared by the
// featurizer and the sequence models.
struct PreparedQuery {
  std::string text;
  std::vector<std::string> tokens;
  std::vector<std::string> tags;  // empty when no tagger is configured
};

// Raw feature strings of one family for a query.
std::vector<std::string> family_strings(const PreparedQuery& q, FeatureFamily f);

struct FeatureVector {
  std::array<std::vector<int>, kNumFamilies> ids;

  size_t total() const;
};

// Per-family string -> dense id map. Built once over the training split and
// frozen; lookups of unseen strings return -1 and never grow the space.
class FeatureSpace {
 public:
  struct Options {
    // min_count per family: rare word/char n-grams are dropped, the POS
    // tagset is tiny so POS n-grams keep everything.
    std::array<int, kNumFamilies> min_count{2, 2, 2, 2, 1, 1, 1};
  };

  static FeatureSpace build(std::span<const PreparedQuery> queries,
                            FamilyMask families, const Options& opts = {});

  int lookup(FeatureFamily f, const std::string& s) const;
  int size(FeatureFamily f) const;
  const std::vector<std::string>& names(FeatureFamily f) const;
  FamilyMask families() const { return families_; }

  std::string to_json_string() const;
  static FeatureSpace from_json_string(const std::string& json);

  void save(const std::string& path) const;
  static FeatureSpace load(const std::string& path);

  bool operator==(const FeatureSpace& other) const;

 private:
  FamilyMask families_ = 0;
  std::array<std::unordered_map<std::string, int>, kNumFamilies> ids_;
  std::array<std::vector<std::string>, kNumFamilies> names_;

  void index_names();
};

// Unseen strings are dropped: absent features contribute nothing to the
// additive embedding input.
FeatureVector extract(const PreparedQuery& q, const FeatureSpace& space,
                      FamilyMask families);

}  // namespace wfq
