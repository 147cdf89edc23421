#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace wfq {

static_assert(std::endian::native == std::endian::little,
              "model files assume a little-endian host");

std::vector<std::string> read_lines(const std::string& path);
std::string read_file(const std::string& path);

std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_ws(std::string_view s);
std::string trim(std::string_view s);
std::string lowercase_ascii(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Writes to <path>.tmp and renames into place on commit(); the temp file is
// removed if the writer is destroyed without committing, so failed commands
// never leave partial outputs behind.
class AtomicFile {
 public:
  explicit AtomicFile(const std::string& path);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ofstream& stream() { return out_; }
  void commit();

 private:
  std::string path_;
  std::string tmp_path_;
  std::ofstream out_;
  bool committed_ = false;
};

// Binary model container: magic, version, kind tag, JSON header, then raw
// little-endian doubles per tensor. Writes are byte-deterministic.
class ModelWriter {
 public:
  ModelWriter(const std::string& path, const std::string& kind,
              const std::string& json_header);
  void write_tensor(const std::vector<double>& v);
  void finish();

 private:
  AtomicFile file_;
};

class ModelReader {
 public:
  // Validates magic/version and that `kind` matches; throws Error otherwise.
  ModelReader(const std::string& path, const std::string& kind);
  const std::string& json_header() const { return header_; }
  std::vector<double> read_tensor();

 private:
  void need(size_t n) const;
  std::string buf_;
  std::string header_;
  size_t pos_ = 0;
  std::string path_;
};

}  // namespace wfq
