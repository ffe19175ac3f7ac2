#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace coherence {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic RNG wrapper. mt19937_64 has a standard-mandated output
// sequence and the bounded draw below avoids the implementation-defined
// std::uniform_int_distribution, so streams are reproducible across
// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t min = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x;
    do {
      x = eng_();
    } while (x < min);
    return x % n;
  }

  // uniform double in [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Derives a per-item seed from a run seed, a purpose label ("perm", "ins",
// ...) and an item key (dialogue id). Keeps task randomness frozen per
// dialogue regardless of corpus order.
inline std::uint64_t stream_seed(std::uint64_t seed, std::string_view purpose,
                                 std::string_view key) {
  std::uint64_t h = splitmix64(seed) ^ fnv1a64(purpose);
  return splitmix64(h * 0x9e3779b97f4a7c15ULL ^ fnv1a64(key));
}

}  // namespace coherence
