#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "s3vmr/features.hpp"

namespace s3vmr {

std::vector<std::string> split_csv_line(const std::string& line);

// Feature CSV: header id,<12 feature names>; one row per ad.
void write_f1_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& ids,
                  const std::vector<FeatureVectorF1>& vectors);
std::vector<std::pair<std::string, FeatureVectorF1>> read_f1_csv(
    const std::filesystem::path& path);

// Labels CSV: header id,label with label in {+1,-1} (1/-1/+1 accepted).
void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, int>>& labels);
std::vector<std::pair<std::string, int>> read_labels_csv(
    const std::filesystem::path& path);

}  // namespace s3vmr
