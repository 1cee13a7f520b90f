#include "s3vmr/csv.hpp"

#include <fstream>

#include "s3vmr/error.hpp"

namespace s3vmr {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

void write_f1_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& ids,
                  const std::vector<FeatureVectorF1>& vectors) {
  if (ids.size() != vectors.size()) throw Error("write_f1_csv: size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write feature CSV: " + path.string());
  out << "id";
  for (const auto& name : f1_feature_names()) out << "," << name;
  out << "\n";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << ids[i];
    for (auto v : vectors[i].flags) out << "," << static_cast<int>(v);
    out << "\n";
  }
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<std::pair<std::string, FeatureVectorF1>> read_f1_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open feature CSV: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error("empty feature CSV: " + path.string());
  const auto header = split_csv_line(line);
  if (header.size() != kNumF1Features + 1 || header[0] != "id")
    throw Error("bad feature CSV header: " + path.string());
  for (std::size_t i = 0; i < kNumF1Features; ++i)
    if (header[i + 1] != f1_feature_names()[i])
      throw Error("bad feature CSV header: " + path.string());

  std::vector<std::pair<std::string, FeatureVectorF1>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != kNumF1Features + 1)
      throw Error("bad feature CSV row at line " + std::to_string(lineno));
    FeatureVectorF1 v;
    for (std::size_t i = 0; i < kNumF1Features; ++i) {
      if (fields[i + 1] != "0" && fields[i + 1] != "1")
        throw Error("bad feature value at line " + std::to_string(lineno));
      v.flags[i] = fields[i + 1] == "1" ? 1 : 0;
    }
    rows.emplace_back(fields[0], v);
  }
  return rows;
}

void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, int>>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write labels CSV: " + path.string());
  out << "id,label\n";
  for (const auto& [id, y] : labels) out << id << "," << y << "\n";
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<std::pair<std::string, int>> read_labels_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open labels CSV: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error("empty labels CSV: " + path.string());
  const auto header = split_csv_line(line);
  if (header.size() != 2 || header[0] != "id" || header[1] != "label")
    throw Error("bad labels CSV header: " + path.string());
  std::vector<std::pair<std::string, int>> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2)
      throw Error("bad labels CSV row at line " + std::to_string(lineno));
    int y = 0;
    if (fields[1] == "1" || fields[1] == "+1")
      y = 1;
    else if (fields[1] == "-1")
      y = -1;
    else
      throw Error("label must be +1 or -1 at line " + std::to_string(lineno));
    out.emplace_back(fields[0], y);
  }
  return out;
}

}  // namespace s3vmr
