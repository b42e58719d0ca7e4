#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hqc {

/// Minimal CSV emitter. Every floating-point value is printed with 12
/// significant digits; "inf" is written for infinities.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header);
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(std::string_view v);
  CsvWriter& operator<<(int v);
  /// Terminates the current row.
  void end_row();

 private:
  void separator();

  std::ostream& os_;
  bool row_started_ = false;
};

std::string format_number(double v);

}  // namespace hqc
