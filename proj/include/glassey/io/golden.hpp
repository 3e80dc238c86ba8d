#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace glassey::io {

/// One frozen reference value: "name, value, resolution, tolerance".
struct GoldenRecord {
  std::string name;
  double value;
  long long resolution;
  double tolerance;
};

std::map<std::string, GoldenRecord> load_goldens(const std::filesystem::path& path);

}  // namespace glassey::io
