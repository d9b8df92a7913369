#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace ptssh::csv {

/// 17 significant digits, '.' decimal point, independent of the C++ locale.
std::string format_number(double x);
/// Shortest text that parses back to the same double.
std::string format_shortest(double x);

/// RFC 4180 quoting: fields containing ',', '"' or a line break are quoted.
std::string quote(std::string_view field);

/// Accumulates comment lines, one header row and data rows.
class Writer {
 public:
  void comment(std::string_view line);
  void header(std::initializer_list<std::string_view> columns);
  /// Starts a new row; subsequent add_* calls append fields.
  Writer& row();
  Writer& add(double x);
  Writer& add(long long x);
  Writer& add(std::string_view text);
  Writer& add_empty();
  std::string str() const;

 private:
  void end_row();
  void separator();

  std::string out_;
  bool open_row_ = false;
  bool first_field_ = true;
};

/// Writes `contents` to a temporary file in the same directory, then renames it.
void write_atomic(const std::string& path, std::string_view contents);

}  // namespace ptssh::csv
