#include "wfq/corpus.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "wfq/error.hpp"
#include "wfq/io.hpp"
#include "wfq/rng.hpp"

namespace wfq {

std::vector<AnnotatedQuery> DatasetSplit::all() const {
  std::vector<AnnotatedQuery> out;
  out.reserve(total());
  out.insert(out.end(), train.begin(), train.end());
  out.insert(out.end(), dev.begin(), dev.end());
  out.insert(out.end(), test.begin(), test.end());
  return out;
}

namespace {

int parse_rating(const std::string& field, const std::string& path, long line_no) {
  const char* s = field.c_str();
  char* end = nullptr;
  double r = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw ParseError(path, line_no, "unparseable rating '" + field + "'");
  double scaled = r * kRaters;
  long votes = std::lround(scaled);
  if (std::abs(scaled - static_cast<double>(votes)) > 1e-9 || votes < 0 ||
      votes > kRaters)
    throw ParseError(path, line_no,
                     "rating '" + field + "' is not a multiple of 0.2 in [0,1]");
  return static_cast<int>(votes);
}

}  // namespace

std::vector<AnnotatedQuery> load_queries_tsv(const std::string& path) {
  std::vector<AnnotatedQuery> out;
  long line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    size_t tab = line.rfind('\t');
    if (tab == std::string::npos)
      throw ParseError(path, line_no, "no tab separator");
    std::string text = line.substr(0, tab);
    if (trim(text).empty())
      throw ParseError(path, line_no, "empty query text");
    out.push_back({std::move(text), parse_rating(line.substr(tab + 1), path, line_no)});
  }
  return out;
}

DatasetSplit load_split_dir(const std::string& dir) {
  DatasetSplit s;
  s.train = load_queries_tsv(dir + "/train.tsv");
  s.dev = load_queries_tsv(dir + "/dev.tsv");
  s.test = load_queries_tsv(dir + "/test.tsv");
  return s;
}

std::vector<LabeledQuery> binarize(std::span<const AnnotatedQuery> queries,
                                   double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw Error("binarize threshold must be in (0,1]");
  std::vector<LabeledQuery> out;
  out.reserve(queries.size());
  for (const auto& q : queries)
    out.push_back({q.text, q.p_wf() >= threshold ? 1 : 0});
  return out;
}

double fleiss_kappa(std::span<const AnnotatedQuery> queries, int raters) {
  if (queries.size() < 2) throw Error("fleiss_kappa needs at least 2 queries");
  if (raters < 2) throw Error("fleiss_kappa needs at least 2 raters");
  const double n = static_cast<double>(queries.size());
  double p_sum = 0.0;   // sum of per-item agreement P_i
  double pos_votes = 0.0;
  for (const auto& q : queries) {
    long n1 = std::lround(q.p_wf() * raters);
    if (std::abs(q.p_wf() * raters - static_cast<double>(n1)) > 1e-9 || n1 < 0 ||
        n1 > raters)
      throw Error("query rating is not expressible as " + std::to_string(raters) +
                  " votes: '" + q.text + "'");
    long n0 = raters - n1;
    p_sum += static_cast<double>(n1 * (n1 - 1) + n0 * (n0 - 1)) /
             static_cast<double>(raters * (raters - 1));
    pos_votes += static_cast<double>(n1);
  }
  double p_bar = p_sum / n;
  double p1 = pos_votes / (n * raters);
  double pe = p1 * p1 + (1.0 - p1) * (1.0 - p1);
  if (1.0 - pe < 1e-15) {
    if (p_bar >= 1.0 - 1e-12) return 1.0;
    throw Error("fleiss_kappa: degenerate chance agreement with imperfect observed agreement");
  }
  return (p_bar - pe) / (1.0 - pe);
}

AgreementReport agreement_report(std::span<const AnnotatedQuery> queries) {
  if (queries.empty()) throw Error("agreement_report: empty input");
  AgreementReport rep;
  rep.total = static_cast<long>(queries.size());
  for (const auto& q : queries) ++rep.histogram[static_cast<size_t>(q.votes)];
  rep.agreement_count =
      rep.histogram[0] + rep.histogram[1] + rep.histogram[4] + rep.histogram[5];
  rep.agreement_fraction =
      static_cast<double>(rep.agreement_count) / static_cast<double>(rep.total);
  rep.kappa = queries.size() >= 2 ? fleiss_kappa(queries)
                                  : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

DatasetSplit split_dataset(std::vector<AnnotatedQuery> queries,
                           const std::array<size_t, 3>& sizes, uint64_t seed) {
  size_t want = sizes[0] + sizes[1] + sizes[2];
  if (want != queries.size())
    throw Error("split sizes sum to " + std::to_string(want) + " but dataset has " +
                std::to_string(queries.size()) + " queries");
  Rng rng(seed);
  rng.shuffle(queries);
  DatasetSplit s;
  auto it = queries.begin();
  s.train.assign(it, it + static_cast<long>(sizes[0]));
  it += static_cast<long>(sizes[0]);
  s.dev.assign(it, it + static_cast<long>(sizes[1]));
  it += static_cast<long>(sizes[1]);
  s.test.assign(it, it + static_cast<long>(sizes[2]));
  return s;
}

std::string format_rating(int votes) {
  static const char* kRatings[] = {"0.0", "0.2", "0.4", "0.6", "0.8", "1.0"};
  if (votes < 0 || votes > kRaters) throw Error("vote count out of range");
  return kRatings[votes];
}

void save_queries_tsv(const std::string& path,
                      std::span<const AnnotatedQuery> queries) {
  AtomicFile f(path);
  for (const auto& q : queries)
    f.stream() << q.text << '\t' << format_rating(q.votes) << '\n';
  f.commit();
}

}  // namespace wfq
