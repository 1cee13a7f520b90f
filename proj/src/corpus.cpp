#include "s3vmr/corpus.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "s3vmr/error.hpp"

namespace s3vmr {

std::string ad_text(const AdRecord& ad) {
  if (ad.title.empty()) return ad.body;
  if (ad.body.empty()) return ad.title;
  return ad.title + " " + ad.body;
}

std::vector<AdRecord> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file: " + path.string());
  std::vector<AdRecord> ads;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw Error("malformed JSONL at line " + std::to_string(lineno));
    AdRecord ad;
    try {
      ad.id = j.at("id").get<std::string>();
      ad.title = j.at("title").get<std::string>();
      ad.body = j.at("body").get<std::string>();
      if (j.contains("age") && !j["age"].is_null()) ad.age = j["age"].get<int>();
      if (j.contains("location") && !j["location"].is_null())
        ad.location = j["location"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error("malformed JSONL at line " + std::to_string(lineno) + ": " + e.what());
    }
    if (ad.id.empty()) throw Error("malformed JSONL at line " + std::to_string(lineno) + ": empty id");
    if (!seen.insert(ad.id).second)
      throw Error("malformed JSONL at line " + std::to_string(lineno) + ": duplicate id " + ad.id);
    ads.push_back(std::move(ad));
  }
  return ads;
}

void save_jsonl(const std::filesystem::path& path, const std::vector<AdRecord>& ads) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write corpus file: " + path.string());
  for (const auto& ad : ads) {
    nlohmann::json j;
    j["id"] = ad.id;
    j["title"] = ad.title;
    j["body"] = ad.body;
    if (ad.age) j["age"] = *ad.age;
    if (ad.location) j["location"] = *ad.location;
    out << j.dump() << "\n";
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace s3vmr
