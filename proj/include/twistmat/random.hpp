#pragma once

#include <cstdint>
#include <random>

#include "twistmat/ring.hpp"

namespace twistmat {

inline constexpr std::uint64_t default_seed = 20240001;

using Rng = std::mt19937_64;

namespace rings {

struct RandomParams {
  long height = 100;     // integer coefficients in [-height, height]
  int degree = 4;        // polynomial numerators of degree <= degree
  int exponent = 3;      // denominator / unit exponents in [0, exponent] resp. [-exponent, exponent]
};

RingElement random_element(const Ring& r, Rng& rng, const RandomParams& params = {});
RingElement random_nonzero(const Ring& r, Rng& rng, const RandomParams& params = {});
RingElement random_unit(const Ring& r, Rng& rng, const RandomParams& params = {});

long long uniform_int(Rng& rng, long long lo, long long hi);

}  // namespace rings
}  // namespace twistmat
