#include "wfq/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "wfq/error.hpp"

namespace wfq {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t p = s.find(sep, start);
    if (p == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, p - start));
    start = p + 1;
  }
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

AtomicFile::AtomicFile(const std::string& path)
    : path_(path), tmp_path_(path + ".tmp"), out_(tmp_path_, std::ios::binary) {
  if (!out_) throw Error("cannot open " + tmp_path_ + " for writing");
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    out_.close();
    std::remove(tmp_path_.c_str());
  }
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) throw Error("write failed: " + tmp_path_);
  out_.close();
  if (std::rename(tmp_path_.c_str(), path_.c_str()) != 0)
    throw Error("cannot rename " + tmp_path_ + " to " + path_);
  committed_ = true;
}

namespace {
constexpr char kMagic[8] = {'W', 'F', 'Q', 'M', 'O', 'D', 'E', 'L'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ofstream& out, uint32_t x) {
  out.write(reinterpret_cast<const char*>(&x), sizeof x);
}
void put_u64(std::ofstream& out, uint64_t x) {
  out.write(reinterpret_cast<const char*>(&x), sizeof x);
}
}  // namespace

ModelWriter::ModelWriter(const std::string& path, const std::string& kind,
                         const std::string& json_header)
    : file_(path) {
  auto& out = file_.stream();
  out.write(kMagic, sizeof kMagic);
  put_u32(out, kVersion);
  put_u32(out, static_cast<uint32_t>(kind.size()));
  out.write(kind.data(), static_cast<std::streamsize>(kind.size()));
  put_u64(out, json_header.size());
  out.write(json_header.data(), static_cast<std::streamsize>(json_header.size()));
}

void ModelWriter::write_tensor(const std::vector<double>& v) {
  auto& out = file_.stream();
  put_u64(out, v.size());
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void ModelWriter::finish() { file_.commit(); }

ModelReader::ModelReader(const std::string& path, const std::string& kind)
    : path_(path) {
  buf_ = read_file(path);
  need(sizeof kMagic + 8);
  if (std::memcmp(buf_.data(), kMagic, sizeof kMagic) != 0)
    throw Error(path + ": not a wfq model file (bad magic)");
  pos_ = sizeof kMagic;
  uint32_t version, kind_len;
  std::memcpy(&version, buf_.data() + pos_, 4);
  pos_ += 4;
  if (version != kVersion)
    throw Error(path + ": unsupported model version " + std::to_string(version));
  std::memcpy(&kind_len, buf_.data() + pos_, 4);
  pos_ += 4;
  need(kind_len);
  std::string file_kind = buf_.substr(pos_, kind_len);
  pos_ += kind_len;
  if (file_kind != kind)
    throw Error(path + ": model kind is '" + file_kind + "', expected '" + kind + "'");
  need(8);
  uint64_t hlen;
  std::memcpy(&hlen, buf_.data() + pos_, 8);
  pos_ += 8;
  need(hlen);
  header_ = buf_.substr(pos_, hlen);
  pos_ += hlen;
}

void ModelReader::need(size_t n) const {
  if (pos_ + n > buf_.size()) throw Error(path_ + ": truncated model file");
}

std::vector<double> ModelReader::read_tensor() {
  need(8);
  uint64_t count;
  std::memcpy(&count, buf_.data() + pos_, 8);
  pos_ += 8;
  need(count * sizeof(double));
  std::vector<double> v(count);
  std::memcpy(v.data(), buf_.data() + pos_, count * sizeof(double));
  pos_ += count * sizeof(double);
  return v;
}

}  // namespace wfq
