#pragma once

// Counter-based random numbers (Philox4x32-10, Salmon et al. 2011).
//
// Every draw is a pure function of (key, counter), so any entry of a noise
// array can be generated independently of its neighbours and of the array
// bounds.

#include <array>
#include <cstdint>

namespace hrmlab::rng {

using Counter = std::array<std::uint32_t, 4>;
using Block = std::array<std::uint32_t, 4>;

namespace detail {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

constexpr void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace detail

constexpr Block philox4x32(Counter ctr, std::uint64_t key) {
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
    detail::mulhilo(detail::kMul0, ctr[0], hi0, lo0);
    detail::mulhilo(detail::kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
    k0 += detail::kWeyl0;
    k1 += detail::kWeyl1;
  }
  return ctr;
}

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Uniform on the open interval (0, 1) from two 32-bit words. 52 bits plus a
/// half step, so both endpoints are excluded exactly.
constexpr double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

/// Stream tags keep independent uses of one seed apart.
enum class Stream : std::uint32_t {
  noise = 0x4E4F4953u,
  gamma = 0x47414D4Du,
  lanczos = 0x4C414E43u,
  synthetic = 0x53594E54u,
};

/// Two independent open-unit uniforms keyed by (seed, stream, a, b, draw).
struct UniformPair {
  double first;
  double second;
};

constexpr UniformPair uniform_pair(std::uint64_t seed, Stream stream, std::uint32_t a, std::uint32_t b,
                                   std::uint32_t draw = 0) {
  const Block out = philox4x32({a, b, static_cast<std::uint32_t>(stream), draw}, seed);
  return {to_open_unit(out[0], out[1]), to_open_unit(out[2], out[3])};
}

}  // namespace hrmlab::rng
