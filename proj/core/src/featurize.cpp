#include "wfq/featurize.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "wfq/error.hpp"
#include "wfq/io.hpp"

namespace wfq {

const char* family_name(FeatureFamily f) {
  switch (f) {
    case FeatureFamily::Char3: return "char3";
    case FeatureFamily::Char4: return "char4";
    case FeatureFamily::Word1: return "word1";
    case FeatureFamily::Word2: return "word2";
    case FeatureFamily::Pos1: return "pos1";
    case FeatureFamily::Pos2: return "pos2";
    case FeatureFamily::Pos3: return "pos3";
  }
  return "?";
}

bool family_is_char(FeatureFamily f) {
  return f == FeatureFamily::Char3 || f == FeatureFamily::Char4;
}

bool family_is_pos(FeatureFamily f) {
  return f == FeatureFamily::Pos1 || f == FeatureFamily::Pos2 ||
         f == FeatureFamily::Pos3;
}

namespace {

FeatureFamily family_from(const std::string& base, int order) {
  if (base == "char" && order == 3) return FeatureFamily::Char3;
  if (base == "char" && order == 4) return FeatureFamily::Char4;
  if (base == "word" && order == 1) return FeatureFamily::Word1;
  if (base == "word" && order == 2) return FeatureFamily::Word2;
  if (base == "pos" && order == 1) return FeatureFamily::Pos1;
  if (base == "pos" && order == 2) return FeatureFamily::Pos2;
  if (base == "pos" && order == 3) return FeatureFamily::Pos3;
  throw Error("unknown feature family " + base + "-" + std::to_string(order));
}

}  // namespace

FamilyMask parse_families(std::string_view spec) {
  FamilyMask mask = 0;
  // chunks are separated by whitespace or '+'; each chunk is
  // name-o1[,o2,...] or nameo1.
  std::string chunk;
  auto flush = [&mask, &chunk]() {
    if (chunk.empty()) return;
    std::string base;
    size_t i = 0;
    while (i < chunk.size() && std::isalpha(static_cast<unsigned char>(chunk[i])))
      base += static_cast<char>(std::tolower(static_cast<unsigned char>(chunk[i++])));
    if (i < chunk.size() && chunk[i] == '-') ++i;
    if (base.empty() || i >= chunk.size())
      throw Error("cannot parse feature family '" + chunk + "'");
    for (const std::string& part : split(chunk.substr(i), ',')) {
      if (part.size() != 1 || !std::isdigit(static_cast<unsigned char>(part[0])))
        throw Error("cannot parse feature family '" + chunk + "'");
      mask |= family_bit(family_from(base, part[0] - '0'));
    }
    chunk.clear();
  };
  for (char c : spec) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '+')
      flush();
    else
      chunk += c;
  }
  flush();
  if (mask == 0) throw Error("empty feature family specification");
  return mask;
}

std::string families_to_string(FamilyMask m) {
  // canonical grouped form, e.g. "word-1,2 pos-1,2,3"
  struct Group {
    const char* base;
    std::vector<int> orders;
  };
  std::vector<Group> groups = {{"word", {}}, {"char", {}}, {"pos", {}}};
  auto add = [&groups](int gi, int order) { groups[static_cast<size_t>(gi)].orders.push_back(order); };
  if (has_family(m, FeatureFamily::Word1)) add(0, 1);
  if (has_family(m, FeatureFamily::Word2)) add(0, 2);
  if (has_family(m, FeatureFamily::Char3)) add(1, 3);
  if (has_family(m, FeatureFamily::Char4)) add(1, 4);
  if (has_family(m, FeatureFamily::Pos1)) add(2, 1);
  if (has_family(m, FeatureFamily::Pos2)) add(2, 2);
  if (has_family(m, FeatureFamily::Pos3)) add(2, 3);
  std::string out;
  for (const auto& g : groups) {
    if (g.orders.empty()) continue;
    if (!out.empty()) out += ' ';
    out += g.base;
    out += '-';
    for (size_t i = 0; i < g.orders.size(); ++i) {
      if (i) out += ',';
      out += static_cast<char>('0' + g.orders[i]);
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  static const std::string kEdgePunct = "?.,!'\"";
  std::vector<std::string> out;
  for (std::string& raw : split_ws(lowercase_ascii(text))) {
    size_t begin = 0, end = raw.size();
    std::vector<std::string> leading;
    while (begin < end && kEdgePunct.find(raw[begin]) != std::string::npos)
      leading.emplace_back(1, raw[begin++]);
    std::vector<std::string> trailing;
    while (end > begin && kEdgePunct.find(raw[end - 1]) != std::string::npos)
      trailing.emplace_back(1, raw[--end]);
    for (auto& t : leading) out.push_back(std::move(t));
    if (end > begin) out.push_back(raw.substr(begin, end - begin));
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it)
      out.push_back(std::move(*it));
  }
  return out;
}

std::vector<std::string> char_ngrams(std::string_view text, int n) {
  std::string s = "^" + lowercase_ascii(text) + "$";
  std::vector<std::string> out;
  if (static_cast<int>(s.size()) < n) return out;
  out.reserve(s.size() - static_cast<size_t>(n) + 1);
  for (size_t i = 0; i + static_cast<size_t>(n) <= s.size(); ++i)
    out.push_back(s.substr(i, static_cast<size_t>(n)));
  return out;
}

std::vector<std::string> token_ngrams(std::span<const std::string> tokens, int n) {
  std::vector<std::string> out;
  if (n == 1) {
    out.assign(tokens.begin(), tokens.end());
    return out;
  }
  std::vector<std::string> padded;
  padded.reserve(tokens.size() + 2 * static_cast<size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) padded.emplace_back("<s>");
  padded.insert(padded.end(), tokens.begin(), tokens.end());
  for (int i = 0; i < n - 1; ++i) padded.emplace_back("</s>");
  for (size_t i = 0; i + static_cast<size_t>(n) <= padded.size(); ++i) {
    std::string gram = padded[i];
    for (int k = 1; k < n; ++k) {
      gram += ' ';
      gram += padded[i + static_cast<size_t>(k)];
    }
    out.push_back(std::move(gram));
  }
  return out;
}

std::vector<std::string> family_strings(const PreparedQuery& q, FeatureFamily f) {
  switch (f) {
    case FeatureFamily::Char3: return char_ngrams(q.text, 3);
    case FeatureFamily::Char4: return char_ngrams(q.text, 4);
    case FeatureFamily::Word1: return token_ngrams(q.tokens, 1);
    case FeatureFamily::Word2: return token_ngrams(q.tokens, 2);
    case FeatureFamily::Pos1: return token_ngrams(q.tags, 1);
    case FeatureFamily::Pos2: return token_ngrams(q.tags, 2);
    case FeatureFamily::Pos3: return token_ngrams(q.tags, 3);
  }
  return {};
}

size_t FeatureVector::total() const {
  size_t n = 0;
  for (const auto& v : ids) n += v.size();
  return n;
}

FeatureSpace FeatureSpace::build(std::span<const PreparedQuery> queries,
                                 FamilyMask families, const Options& opts) {
  FeatureSpace space;
  space.families_ = families;
  for (FeatureFamily f : kAllFamilies) {
    if (!has_family(families, f)) continue;
    const int fi = static_cast<int>(f);
    std::unordered_map<std::string, long> counts;
    for (const auto& q : queries)
      for (auto& s : family_strings(q, f)) ++counts[std::move(s)];
    std::vector<std::string> kept;
    for (auto& [s, c] : counts)
      if (c >= opts.min_count[static_cast<size_t>(fi)]) kept.push_back(s);
    std::sort(kept.begin(), kept.end());
    space.names_[static_cast<size_t>(fi)] = std::move(kept);
  }
  space.index_names();
  return space;
}

void FeatureSpace::index_names() {
  for (int fi = 0; fi < kNumFamilies; ++fi) {
    auto& map = ids_[static_cast<size_t>(fi)];
    map.clear();
    const auto& names = names_[static_cast<size_t>(fi)];
    map.reserve(names.size());
    for (size_t i = 0; i < names.size(); ++i)
      map.emplace(names[i], static_cast<int>(i));
  }
}

int FeatureSpace::lookup(FeatureFamily f, const std::string& s) const {
  const auto& map = ids_[static_cast<size_t>(f)];
  auto it = map.find(s);
  return it == map.end() ? -1 : it->second;
}

int FeatureSpace::size(FeatureFamily f) const {
  return static_cast<int>(names_[static_cast<size_t>(f)].size());
}

const std::vector<std::string>& FeatureSpace::names(FeatureFamily f) const {
  return names_[static_cast<size_t>(f)];
}

bool FeatureSpace::operator==(const FeatureSpace& other) const {
  return families_ == other.families_ && names_ == other.names_;
}

std::string FeatureSpace::to_json_string() const {
  nlohmann::json j;
  j["format"] = "wfq-feature-space";
  j["version"] = 1;
  j["families"] = families_to_string(families_);
  nlohmann::json fams = nlohmann::json::object();
  for (FeatureFamily f : kAllFamilies)
    if (has_family(families_, f))
      fams[family_name(f)] = names_[static_cast<size_t>(f)];
  j["feature_names"] = fams;
  return j.dump();
}

FeatureSpace FeatureSpace::from_json_string(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  if (j.value("format", "") != "wfq-feature-space" || j.value("version", 0) != 1)
    throw Error("not a wfq feature space (bad header)");
  FeatureSpace space;
  space.families_ = parse_families(j.at("families").get<std::string>());
  for (FeatureFamily f : kAllFamilies)
    if (has_family(space.families_, f))
      space.names_[static_cast<size_t>(f)] =
          j.at("feature_names").at(family_name(f)).get<std::vector<std::string>>();
  space.index_names();
  return space;
}

void FeatureSpace::save(const std::string& path) const {
  AtomicFile f(path);
  f.stream() << to_json_string() << '\n';
  f.commit();
}

FeatureSpace FeatureSpace::load(const std::string& path) {
  return from_json_string(read_file(path));
}

FeatureVector extract(const PreparedQuery& q, const FeatureSpace& space,
                      FamilyMask families) {
  FeatureVector fv;
  for (FeatureFamily f : kAllFamilies) {
    if (!has_family(families, f)) continue;
    auto& out = fv.ids[static_cast<size_t>(f)];
    for (const auto& s : family_strings(q, f)) {
      int id = space.lookup(f, s);
      if (id >= 0) out.push_back(id);
    }
  }
  return fv;
}

}  // namespace wfq
