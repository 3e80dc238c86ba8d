#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace glassey::io {

/// Shortest decimal that round-trips to the same double; "nan", "inf", "-inf" otherwise.
std::string format_double(double x);

/// CSV file opened with the "# glassey-lab v1 <subcommand>" banner and a header row.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view subcommand,
            std::vector<std::string> columns);

  class Row {
   public:
    explicit Row(CsvWriter& w) : writer_(w) {}
    Row& operator<<(double x);
    Row& operator<<(long long x);
    Row& operator<<(int x) { return *this << static_cast<long long>(x); }
    Row& operator<<(std::size_t x) { return *this << static_cast<long long>(x); }
    Row& operator<<(bool x) { return *this << std::string_view(x ? "true" : "false"); }
    Row& operator<<(std::string_view s);
    Row& operator<<(const char* s) { return *this << std::string_view(s); }
    Row& operator<<(const std::string& s) { return *this << std::string_view(s); }
    /// Writes an empty cell (parameter not applicable).
    Row& blank();
    ~Row();

   private:
    void separator();
    CsvWriter& writer_;
    std::size_t cells_ = 0;
  };

  Row row() { return Row(*this); }
  std::size_t columns() const noexcept { return columns_; }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

/// Writes an optional value: blank when NaN.
inline CsvWriter::Row& cell_or_blank(CsvWriter::Row& row, double x) {
  return x == x ? row << x : row.blank();
}

}  // namespace glassey::io
