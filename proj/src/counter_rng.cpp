#include "fsc/counter_rng.hpp"

#include <cmath>
#include <numbers>

namespace fsc {

namespace {

Philox4x32::Counter block_for(std::uint64_t seed, std::uint64_t index, std::uint64_t block) {
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Philox4x32::block(ctr, key);
}

std::uint64_t join(std::uint32_t hi, std::uint32_t lo) { return (static_cast<std::uint64_t>(hi) << 32) | lo; }

}  // namespace

double keyed_gaussian(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel) {
  const auto out = block_for(seed, trial, channel >> 1);
  const double u1 = unit_interval(join(out[0], out[1]));
  const double u2 = unit_interval(join(out[2], out[3]));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  return (channel & 1u) ? r * std::sin(phi) : r * std::cos(phi);
}

double keyed_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t channel) {
  // Top bit of the block word separates this stream from the Gaussian one.
  const auto out = block_for(seed, index, (channel >> 1) | (std::uint64_t{1} << 63));
  return (channel & 1u) ? unit_interval(join(out[2], out[3])) : unit_interval(join(out[0], out[1]));
}

}  // namespace fsc
