// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef LSS_RNG_HPP
#define LSS_RNG_HPP

#include <array>
#include <bit>
#include <cstdint>

namespace lss {

// splitmix64 output mixer; used to expand (seed, stream) into generator state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

//! Seeded pseudo-random generator (xoshiro256++).
//!
//! Stream-splitting rule: the four state words are consecutive splitmix64
//! outputs of  seed ^ ((stream + 1) * 0x9e3779b97f4a7c15).  Generators built
//! from distinct (seed, stream) pairs are independent streams by
//! construction; identical pairs reproduce the same draw sequence on every
//! run and platform.  A generator instance is single-owner: parallel chains
//! each construct their own with stream = chain index.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t sm = seed ^ ((stream + 1) * 0x9e3779b97f4a7c15ULL);
    for (auto& word : state_) word = splitmix64(sm);
    // all-zero state is invalid for xoshiro
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  //! Uniform on [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  //! Uniform on the open interval (0, 1); safe as a log() argument.
  double next_double_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace lss

#endif
