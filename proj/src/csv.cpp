#include "ptssh/csv.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "ptssh/errors.hpp"

namespace ptssh::csv {

namespace {

template <class... Args>
std::string to_chars_string(double x, Args... args) {
  std::array<char, 64> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), x, args...);
  if (ec != std::errc{}) throw Error("csv: number formatting failed");
  return std::string(buffer.data(), end);
}

}  // namespace

std::string format_number(double x) {
  return to_chars_string(x, std::chars_format::general, 17);
}

std::string format_shortest(double x) { return to_chars_string(x); }

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string q = "\"";
  for (char c : field) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

void Writer::comment(std::string_view line) {
  end_row();
  out_ += "# ";
  out_ += line;
  out_ += '\n';
}

void Writer::header(std::initializer_list<std::string_view> columns) {
  end_row();
  row();
  for (std::string_view c : columns) add(c);
  end_row();
}

Writer& Writer::row() {
  end_row();
  open_row_ = true;
  first_field_ = true;
  return *this;
}

void Writer::separator() {
  if (!first_field_) out_ += ',';
  first_field_ = false;
}

Writer& Writer::add(double x) {
  separator();
  out_ += format_number(x);
  return *this;
}

Writer& Writer::add(long long x) {
  separator();
  out_ += std::to_string(x);
  return *this;
}

Writer& Writer::add(std::string_view text) {
  separator();
  out_ += quote(text);
  return *this;
}

Writer& Writer::add_empty() {
  separator();
  return *this;
}

void Writer::end_row() {
  if (open_row_) out_ += '\n';
  open_row_ = false;
}

std::string Writer::str() const { return open_row_ ? out_ + '\n' : out_; }

void write_atomic(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + temp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("write to '" + temp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw Error("cannot move output into place at '" + path + "': " + ec.message());
  }
}

}  // namespace ptssh::csv
