#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace s3vmr {

// One classified-ad document. Title and body may be empty but are always
// present; id must be nonempty and unique within a corpus.
struct AdRecord {
  std::string id;
  std::string title;
  std::string body;
  std::optional<int> age;
  std::optional<std::string> location;
};

// Title and body concatenated; the text every extractor works on.
std::string ad_text(const AdRecord& ad);

// JSON-lines: one object per ad with keys id, title, body and optional
// age, location. Parse errors name the 1-based line number.
std::vector<AdRecord> load_jsonl(const std::filesystem::path& path);
void save_jsonl(const std::filesystem::path& path, const std::vector<AdRecord>& ads);

}  // namespace s3vmr
