#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "s3vmr/corpus.hpp"

namespace s3vmr {

// Desk-scale stand-in for a real ad corpus: two template families, one that
// fires the binary indicators and one that does not, with token-level noise
// blurring the boundary. Ground truth is kept separately from the corpus.
struct SyntheticData {
  std::vector<AdRecord> ads;
  std::vector<int> truth;                            // +/-1, aligned with ads
  std::vector<std::pair<std::string, int>> labeled;  // stratified subset, (id, label)
};

// n_labeled >= 4 with both classes; noise in [0, 0.5).
SyntheticData generate_synthetic(int n_labeled, int n_unlabeled, double noise,
                                 std::uint32_t seed);

}  // namespace s3vmr
