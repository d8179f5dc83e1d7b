#ifndef ILSOLVE_RNG_HPP_
#define ILSOLVE_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "ilsolve/model.hpp"

namespace ilsolve {

// All randomized components draw from one mt19937_64 stream so that a run is
// reproducible from its seed. Sampling uses plain modulo reduction; the tiny
// bias does not matter here and it keeps draws identical across platforms.
using Rng = std::mt19937_64;

inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) { return rng() % n; }

// Uniform value in [lo, hi], both finite, hi >= lo.
inline Value rand_value(Rng& rng, Value lo, Value hi) {
  return lo + (Value)(rng() % (std::uint64_t)(hi - lo + 1));
}

// True with probability ppm / 1e6.
inline bool chance_ppm(Rng& rng, int ppm) {
  return (int)(rng() % 1000000u) < ppm;
}

// Moves k uniformly chosen distinct elements to the front of v.
template <typename T>
void sample_prefix(std::vector<T>& v, std::size_t k, Rng& rng) {
  if (k > v.size()) k = v.size();
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + rng() % (v.size() - i);
    std::swap(v[i], v[j]);
  }
}

// Uniform sample of up to `cap` items from a stream of unknown length.
template <typename T>
class Reservoir {
 public:
  Reservoir(std::size_t cap, Rng& rng) : cap_(cap), rng_(rng) {}

  void offer(const T& item) {
    ++seen_;
    if (items_.size() < cap_) {
      items_.push_back(item);
      return;
    }
    std::size_t j = (std::size_t)(rng_() % seen_);
    if (j < cap_) items_[j] = item;
  }

  std::vector<T>& items() { return items_; }
  std::uint64_t seen() const { return seen_; }

 private:
  std::size_t cap_;
  Rng& rng_;
  std::uint64_t seen_ = 0;
  std::vector<T> items_;
};

}  // namespace ilsolve

#endif  // ILSOLVE_RNG_HPP_
