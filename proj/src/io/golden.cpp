#include "glassey/io/golden.hpp"

#include <fstream>
#include <sstream>

#include "glassey/errors.hpp"

namespace glassey::io {

std::map<std::string, GoldenRecord> load_goldens(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("golden file '" + path.string() + "' not found");
  std::map<std::string, GoldenRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string name, value, resolution, tolerance;
    if (!std::getline(row, name, ',') || !std::getline(row, value, ',') ||
        !std::getline(row, resolution, ',') || !std::getline(row, tolerance)) {
      throw IoError("golden file: malformed line '" + line + "'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    GoldenRecord rec{trim(name), std::stod(value), std::stoll(resolution), std::stod(tolerance)};
    out.emplace(rec.name, rec);
  }
  return out;
}

}  // namespace glassey::io
