#include "glassey/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "glassey/errors.hpp"

namespace glassey::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::string_view subcommand,
                     std::vector<std::string> columns)
    : path_(path), out_(path, std::ios::binary), columns_(columns.size()) {
  if (!out_) throw IoError("cannot write '" + path.string() + "'");
  out_ << "# glassey-lab v1 " << subcommand << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::Row::separator() {
  if (cells_++) writer_.out_ << ',';
}

CsvWriter::Row& CsvWriter::Row::operator<<(double x) {
  separator();
  writer_.out_ << format_double(x);
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(long long x) {
  separator();
  writer_.out_ << x;
  return *this;
}

CsvWriter::Row& CsvWriter::Row::operator<<(std::string_view s) {
  separator();
  writer_.out_ << s;
  return *this;
}

CsvWriter::Row& CsvWriter::Row::blank() {
  separator();
  return *this;
}

CsvWriter::Row::~Row() {
  while (cells_ < writer_.columns_) separator();
  writer_.out_ << '\n';
}

}  // namespace glassey::io
