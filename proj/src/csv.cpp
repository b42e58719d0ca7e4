#include "hqc/csv.hpp"

#include <cmath>
#include <sstream>

namespace hqc {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

CsvWriter::CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header) : os_(os) {
  for (std::string_view h : header) *this << h;
  end_row();
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os) {
  for (const std::string& h : header) *this << std::string_view(h);
  end_row();
}

void CsvWriter::separator() {
  if (row_started_) os_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::operator<<(double v) {
  separator();
  os_ << format_number(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view v) {
  separator();
  os_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
  separator();
  os_ << v;
  return *this;
}

void CsvWriter::end_row() {
  os_ << '\n';
  row_started_ = false;
}

}  // namespace hqc
