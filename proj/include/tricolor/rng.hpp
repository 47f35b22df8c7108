#ifndef TRICOLOR_RNG_HPP
#define TRICOLOR_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace tricolor {

/// xoshiro256++ pseudo-random generator (Blackman & Vigna), seeded through
/// splitmix64. Fully specified integer arithmetic, so uniform draws are
/// bit-identical across platforms and compilers. Sub-streams are derived by
/// hashing (seed, stream) with splitmix64, one stream per generation phase.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
  }

  /// Independent stream for phase `stream` of a process seeded with `seed`.
  static Rng substream(uint64_t seed, uint64_t stream) {
    return Rng(derive_seed(seed, stream));
  }

  /// splitmix64 hash chain: mix(seed) xor stream, mixed again.
  static uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    uint64_t x = seed;
    uint64_t a = splitmix64(x);
    x = a ^ (stream + 0x9e3779b97f4a7c15ULL);
    return splitmix64(x);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound). bound <= 1 returns 0 without consuming a draw,
  /// which keeps tie-breaking streams aligned when there is nothing to choose.
  uint64_t next_below(uint64_t bound) {
    if (bound <= 1) return 0;
    // Lemire's multiply-shift with rejection (unbiased).
    uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<uint64_t>(m);
    if (lo < bound) {
      const uint64_t threshold = -bound % bound;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  /// Uniform integer in [lo, hi], inclusive.
  int next_int(int lo, int hi) {
    return lo + static_cast<int>(next_below(static_cast<uint64_t>(hi - lo) + 1));
  }

  /// Uniform in [lo, hi).
  double next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Standard normal via Marsaglia's polar method; second value cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Fisher-Yates shuffle of a random-access container.
  template <typename Seq>
  void shuffle(Seq& seq) {
    for (size_t i = seq.size(); i > 1; --i) {
      const size_t j = next_below(i);
      using std::swap;
      swap(seq[i - 1], seq[j]);
    }
  }

  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// FNV-1a over a byte string; used to fold algorithm names into run seeds.
inline uint64_t fnv1a64(const char* data, size_t len) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace tricolor

#endif  // TRICOLOR_RNG_HPP
