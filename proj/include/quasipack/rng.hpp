#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace quasipack {

// Generator "qp-splitmix64-v1".
//
// Every randomized operation in the library draws from this generator and
// nothing else, so outputs are bit-identical across platforms and compilers.
//
//   mix(z):   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//             z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//             return z ^ (z >> 31)
//   next():   state += 0x9e3779b97f4a7c15; return mix(state)
//   below(b): high 64 bits of next() * b  (128-bit product)
//
// Per-subset values (colorings, G(n,p) coins) are not drawn from a running
// stream. Each subset T = {v_1 < ... < v_r} gets its own key
//
//   h = mix(seed ^ (tag * 0x9e3779b97f4a7c15)); for v in T: h = mix(h + v + 1)
//
// and the value is below(bound) on a generator seeded with h. The result for
// a subset depends only on (seed, tag, T), never on enumeration order.
inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t scale_below(std::uint64_t x, std::uint64_t bound) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * bound) >> 64);
}

class rng {
 public:
  explicit constexpr rng(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += golden_gamma;
    return mix64(state_);
  }

  // Uniform on [0, bound). bound == 0 yields 0.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept { return scale_below(next(), bound); }

  // True with probability num/den.
  constexpr bool chance(std::uint64_t num, std::uint64_t den) noexcept { return below(den) < num; }

  template <typename T>
  void shuffle(std::vector<T>& items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

  // r distinct values from [0, n), returned sorted. Requires r <= n.
  std::vector<std::uint32_t> sample_subset(std::uint32_t n, std::uint32_t r) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < r; ++i) std::swap(pool[i], pool[i + below(n - i)]);
    pool.resize(r);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::uint64_t state_;
};

// Independent child seed for restart / trial number `index`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index * golden_gamma + 0x632be59bd9b4e019ULL));
}

// Stream tags used by the generators. Changing one changes every output.
enum class stream_tag : std::uint64_t {
  coloring = 1,
  gnp_edge = 2,
  prop19_vertex = 3,
  prop19_link = 4,
};

inline std::uint64_t subset_key(std::uint64_t seed, stream_tag tag, std::span<const std::uint32_t> subset) noexcept {
  std::uint64_t h = mix64(seed ^ (static_cast<std::uint64_t>(tag) * golden_gamma));
  for (std::uint32_t v : subset) h = mix64(h + v + 1);
  return h;
}

inline std::uint64_t subset_below(std::uint64_t seed, stream_tag tag, std::span<const std::uint32_t> subset,
                                  std::uint64_t bound) noexcept {
  return rng(subset_key(seed, tag, subset)).below(bound);
}

}  // namespace quasipack
