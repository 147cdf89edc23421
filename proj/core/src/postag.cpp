#include "wfq/postag.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>
#include <numeric>
#include <set>

#include <json.hpp>

#include "wfq/error.hpp"
#include "wfq/io.hpp"
#include "wfq/rng.hpp"

namespace wfq {

std::vector<TaggedSentence> load_conll(const std::string& path, int token_col,
                                       int tag_col) {
  std::vector<TaggedSentence> out;
  TaggedSentence cur;
  long line_no = 0;
  int need = std::max(token_col, tag_col) + 1;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    if (trim(line).empty()) {
      if (!cur.tokens.empty()) out.push_back(std::move(cur));
      cur = {};
      continue;
    }
    if (line[0] == '#' && line.find('\t') == std::string::npos) continue;
    std::vector<std::string> cols = split_ws(line);
    if (static_cast<int>(cols.size()) < need)
      throw ParseError(path, line_no,
                       "expected at least " + std::to_string(need) + " columns, got " +
                           std::to_string(cols.size()));
    if (cols[static_cast<size_t>(tag_col)].empty())
      throw ParseError(path, line_no, "empty POS tag");
    cur.tokens.push_back(cols[static_cast<size_t>(token_col)]);
    cur.tags.push_back(cols[static_cast<size_t>(tag_col)]);
  }
  if (!cur.tokens.empty()) out.push_back(std::move(cur));
  return out;
}

std::unordered_map<std::string, TaggedSentence> load_pretagged(const std::string& path) {
  std::unordered_map<std::string, TaggedSentence> out;
  long line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3)
      throw ParseError(path, line_no, "expected 3 tab-separated columns");
    TaggedSentence s;
    s.tokens = split_ws(cols[1]);
    s.tags = split_ws(cols[2]);
    if (s.tokens.size() != s.tags.size())
      throw ParseError(path, line_no,
                       std::to_string(s.tokens.size()) + " tokens vs " +
                           std::to_string(s.tags.size()) + " tags");
    if (out.count(cols[0]))
      std::cerr << "warning: " << path << ":" << line_no
                << ": duplicate query, keeping the later entry\n";
    out[cols[0]] = std::move(s);
  }
  return out;
}

std::vector<std::string> PerceptronTagger::features(std::span<const std::string> tokens,
                                                    size_t i, const std::string& prev,
                                                    const std::string& prev2) {
  const std::string& w = tokens[i];
  std::string lw = lowercase_ascii(w);
  std::vector<std::string> f;
  f.reserve(16);
  f.push_back("b");  // bias
  f.push_back("w=" + w);
  f.push_back("lw=" + lw);
  size_t n = lw.size();
  for (size_t k = 1; k <= 3 && k <= n; ++k) f.push_back("suf" + std::to_string(k) + "=" + lw.substr(n - k));
  if (n >= 1) f.push_back("pre1=" + lw.substr(0, 1));
  bool has_digit = false, has_hyphen = false;
  for (char c : w) {
    if (std::isdigit(static_cast<unsigned char>(c))) has_digit = true;
    if (c == '-') has_hyphen = true;
  }
  if (has_digit) f.push_back("hasdig");
  if (has_hyphen) f.push_back("hashyph");
  if (!w.empty() && std::isupper(static_cast<unsigned char>(w[0]))) f.push_back("iscap");
  f.push_back("pw=" + (i > 0 ? lowercase_ascii(tokens[i - 1]) : std::string("<s>")));
  f.push_back("nw=" + (i + 1 < tokens.size() ? lowercase_ascii(tokens[i + 1])
                                             : std::string("</s>")));
  f.push_back("pt=" + prev);
  f.push_back("ptt=" + prev2 + "|" + prev);
  return f;
}

int PerceptronTagger::predict(const std::vector<std::string>& feats) const {
  std::vector<double> scores(tagset_.size(), 0.0);
  for (const auto& feat : feats) {
    auto it = weights_.find(feat);
    if (it == weights_.end()) continue;
    for (const auto& [tag, w] : it->second) scores[static_cast<size_t>(tag)] += w;
  }
  int best = 0;
  for (int t = 1; t < static_cast<int>(scores.size()); ++t)
    if (scores[static_cast<size_t>(t)] > scores[static_cast<size_t>(best)]) best = t;
  return best;
}

PerceptronTagger PerceptronTagger::train(std::span<const TaggedSentence> corpus,
                                         int epochs, uint64_t seed) {
  if (corpus.empty()) throw Error("train_tagger: empty corpus");
  if (epochs < 1) throw Error("train_tagger: epochs must be >= 1");
  PerceptronTagger tagger;
  tagger.epochs_ = epochs;
  tagger.seed_ = seed;

  std::set<std::string> tags;
  for (const auto& s : corpus) {
    if (s.tokens.size() != s.tags.size())
      throw Error("train_tagger: token/tag length mismatch");
    for (const auto& t : s.tags) tags.insert(t);
  }
  tagger.tagset_.assign(tags.begin(), tags.end());
  for (size_t i = 0; i < tagger.tagset_.size(); ++i)
    tagger.tag_id_[tagger.tagset_[i]] = static_cast<int>(i);

  // Lazily-averaged weights: w is the live value, total accumulates
  // w summed over token steps, stamp is the step at which w last changed.
  struct Cell {
    double w = 0.0, total = 0.0;
    long stamp = 0;
  };
  std::unordered_map<std::string, std::unordered_map<int, Cell>> cells;
  long step = 0;

  auto bump = [&cells, &step](const std::string& feat, int tag, double delta) {
    Cell& c = cells[feat][tag];
    c.total += c.w * static_cast<double>(step - 1 - c.stamp);
    c.w += delta;
    c.total += c.w;
    c.stamp = step;
  };

  // prediction against live weights
  auto live_predict = [&cells, &tagger](const std::vector<std::string>& feats) {
    std::vector<double> scores(tagger.tagset_.size(), 0.0);
    for (const auto& feat : feats) {
      auto it = cells.find(feat);
      if (it == cells.end()) continue;
      for (const auto& [tag, c] : it->second) scores[static_cast<size_t>(tag)] += c.w;
    }
    int best = 0;
    for (int t = 1; t < static_cast<int>(scores.size()); ++t)
      if (scores[static_cast<size_t>(t)] > scores[static_cast<size_t>(best)]) best = t;
    return best;
  };

  Rng rng(seed);
  std::vector<size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (size_t si : order) {
      const TaggedSentence& sent = corpus[si];
      std::string prev = "<s>", prev2 = "<s>";
      for (size_t i = 0; i < sent.tokens.size(); ++i) {
        ++step;
        auto feats = features(sent.tokens, i, prev, prev2);
        int guess = live_predict(feats);
        int gold = tagger.tag_id_.at(sent.tags[i]);
        if (guess != gold) {
          for (const auto& feat : feats) {
            bump(feat, gold, +1.0);
            bump(feat, guess, -1.0);
          }
        }
        prev2 = prev;
        prev = tagger.tagset_[static_cast<size_t>(guess)];
      }
    }
  }

  for (auto& [feat, per_tag] : cells) {
    for (auto& [tag, c] : per_tag) {
      c.total += c.w * static_cast<double>(step - c.stamp);
      double avg = c.total / static_cast<double>(step);
      if (avg != 0.0) tagger.weights_[feat][tag] = avg;
    }
  }
  return tagger;
}

std::vector<std::string> PerceptronTagger::tag(std::span<const std::string> tokens) const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::string prev = "<s>", prev2 = "<s>";
  for (size_t i = 0; i < tokens.size(); ++i) {
    int t = predict(features(tokens, i, prev, prev2));
    prev2 = prev;
    prev = tagset_[static_cast<size_t>(t)];
    out.push_back(prev);
  }
  return out;
}

TaggedSentence PerceptronTagger::tag_sentence(const std::vector<std::string>& tokens) const {
  return {tokens, tag(tokens)};
}

std::string PerceptronTagger::to_json_string() const {
  nlohmann::json j;
  j["format"] = "wfq-tagger";
  j["version"] = 1;
  j["epochs"] = epochs_;
  j["seed"] = seed_;
  j["tagset"] = tagset_;
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [feat, per_tag] : weights_) {
    nlohmann::json entry = nlohmann::json::object();
    for (const auto& [tag, val] : per_tag) entry[std::to_string(tag)] = val;
    w[feat] = std::move(entry);
  }
  j["weights"] = std::move(w);
  return j.dump();
}

PerceptronTagger PerceptronTagger::from_json_string(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  if (j.value("format", "") != "wfq-tagger" || j.value("version", 0) != 1)
    throw Error("not a wfq tagger file (bad header)");
  PerceptronTagger t;
  t.epochs_ = j.value("epochs", 0);
  t.seed_ = j.value("seed", 0ULL);
  t.tagset_ = j.at("tagset").get<std::vector<std::string>>();
  for (size_t i = 0; i < t.tagset_.size(); ++i)
    t.tag_id_[t.tagset_[i]] = static_cast<int>(i);
  for (const auto& [feat, per_tag] : j.at("weights").items())
    for (const auto& [tag, val] : per_tag.items())
      t.weights_[feat][std::stoi(tag)] = val.get<double>();
  return t;
}

void PerceptronTagger::save(const std::string& path) const {
  AtomicFile f(path);
  f.stream() << to_json_string() << '\n';
  f.commit();
}

PerceptronTagger PerceptronTagger::load(const std::string& path) {
  return from_json_string(read_file(path));
}

double tag_accuracy(const PerceptronTagger& tagger,
                    std::span<const TaggedSentence> corpus) {
  long correct = 0, total = 0;
  for (const auto& s : corpus) {
    auto pred = tagger.tag(s.tokens);
    for (size_t i = 0; i < s.tags.size(); ++i) {
      ++total;
      if (pred[i] == s.tags[i]) ++correct;
    }
  }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

}  // namespace wfq
