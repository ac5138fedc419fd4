#pragma once

#include <cstdint>
#include <vector>

namespace ito {

// What a stream is consumed for. Base path increments and bridge
// refinement draws must never share state, otherwise adding refinement
// levels would perturb already-sampled coarse paths.
enum class StreamPurpose : std::uint32_t {
  kPathIncrements = 0,
  kBridgeRefinement = 1,
};

// Identifies one Gaussian stream. Equal specs yield bit-identical draw
// sequences; distinct (path_index, purpose) pairs under one master seed
// yield streams with no shared internal state.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t path_index = 0;
  StreamPurpose purpose = StreamPurpose::kPathIncrements;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

SeedSpec derive_seed(std::uint64_t master_seed, std::uint64_t path_index,
                     StreamPurpose purpose);

// Counter-based standard-normal stream: draw i is a pure function of
// (spec, i). Streams for distinct specs can be generated in any order or
// concurrently; a single instance is consumed sequentially by one worker.
//
// Uniform words come from a SplitMix64-style mix of a per-spec key and the
// draw counter; the Gaussian transform is a fixed inverse CDF, so there is
// no rejection loop whose consumption could differ across platforms.
class GaussianStream {
 public:
  explicit GaussianStream(const SeedSpec& spec);

  // Draw with an explicit counter (random access).
  double at(std::uint64_t index) const;

  // Next sequential draw.
  double operator()() { return at(counter_++); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// First `count` draws of the stream for `spec`. count == 0 is a usage
// error.
std::vector<double> gaussian_stream(const SeedSpec& spec, std::size_t count);

}  // namespace ito
