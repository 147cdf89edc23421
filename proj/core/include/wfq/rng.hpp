#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wfq {

// splitmix64 stream. Self-contained so that seeded runs are reproducible
// across compilers and standard libraries (std distributions are not).
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // [0, n); n must be > 0
  size_t below(size_t n) { return static_cast<size_t>(next_u64() % n); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent stream derived from this stream's seed and a label.
  // Does not consume state.
  Rng child(const std::string& label) const {
    uint64_t h = 1469598103934665603ULL;  // fnv1a-64
    for (unsigned char c : label) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    Rng r(seed_ ^ h);
    r.next_u64();  // decorrelate nearby seeds
    return Rng(r.next_u64());
  }

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  uint64_t state_;
};

}  // namespace wfq
