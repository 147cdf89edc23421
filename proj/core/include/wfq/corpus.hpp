#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wfq {

inline constexpr int kRaters = 5;

// One released-dataset row. The rating is kept as an integer count of
// positive votes out of five, so every legal p_wf value is exact.
struct AnnotatedQuery {
  std::string text;
  int votes = 0;  // 0..kRaters

  double p_wf() const { return static_cast<double>(votes) / kRaters; }
};

struct LabeledQuery {
  std::string text;
  int label = 0;
};

struct DatasetSplit {
  std::vector<AnnotatedQuery> train, dev, test;

  size_t total() const { return train.size() + dev.size() + test.size(); }
  std::vector<AnnotatedQuery> all() const;
};

struct AgreementReport {
  double kappa = 0.0;
  long agreement_count = 0;      // queries with p_wf <= 0.2 or p_wf >= 0.8
  double agreement_fraction = 0.0;
  std::array<long, kRaters + 1> histogram{};  // indexed by vote count
  long total = 0;
};

// TSV loader: one `query<TAB>rating` record per line. Ratings must be one of
// 0.0, 0.2, ..., 1.0; anything else is a ParseError carrying the line number.
std::vector<AnnotatedQuery> load_queries_tsv(const std::string& path);

// Pre-split layout: <dir>/train.tsv, <dir>/dev.tsv, <dir>/test.tsv.
DatasetSplit load_split_dir(const std::string& dir);

std::vector<LabeledQuery> binarize(std::span<const AnnotatedQuery> queries,
                                   double threshold = 0.8);

// Fleiss' kappa over the two categories, with per-item vote counts
// reconstructed as n_i1 = round(p_wf * raters). Perfect agreement with a
// degenerate chance term returns 1.0.
double fleiss_kappa(std::span<const AnnotatedQuery> queries, int raters = kRaters);

// Histogram, agreement count/fraction and kappa. kappa is NaN for a single
// query (the chance-corrected statistic needs at least two items).
AgreementReport agreement_report(std::span<const AnnotatedQuery> queries);

// Seeded shuffle followed by a contiguous partition; sizes must sum to the
// input size.
DatasetSplit split_dataset(std::vector<AnnotatedQuery> queries,
                           const std::array<size_t, 3>& sizes, uint64_t seed);

// Formats votes/5 as the released files do: 0.0, 0.2, ..., 1.0.
std::string format_rating(int votes);

void save_queries_tsv(const std::string& path,
                      std::span<const AnnotatedQuery> queries);

}  // namespace wfq
