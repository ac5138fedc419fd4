#include "ito/rng.hpp"

#include "ito/errors.hpp"
#include "ito/normal.hpp"

namespace ito {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// SplitMix64 finalizer (Steele/Lea/Flood; Vigna's public-domain code).
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(const SeedSpec& spec) {
  std::uint64_t h = mix64(spec.master_seed + kGolden);
  h = mix64(h ^ (spec.path_index + kGolden));
  h = mix64(h ^ (static_cast<std::uint64_t>(spec.purpose) + kGolden));
  return h;
}

}  // namespace

SeedSpec derive_seed(std::uint64_t master_seed, std::uint64_t path_index,
                     StreamPurpose purpose) {
  return SeedSpec{master_seed, path_index, purpose};
}

GaussianStream::GaussianStream(const SeedSpec& spec) : key_(stream_key(spec)) {}

double GaussianStream::at(std::uint64_t index) const {
  const std::uint64_t word = mix64(key_ + (index + 1) * kGolden);
  // 53-bit uniform shifted into the open interval (0,1), so the inverse
  // CDF never sees 0 or 1.
  const double u = (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
  return inverse_normal_cdf(u);
}

std::vector<double> gaussian_stream(const SeedSpec& spec, std::size_t count) {
  if (count == 0) throw UsageError("gaussian_stream: count must be >= 1");
  GaussianStream stream(spec);
  std::vector<double> draws(count);
  for (std::size_t i = 0; i < count; ++i) draws[i] = stream.at(i);
  return draws;
}

}  // namespace ito
