#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace pfront {

/// 17 significant digits, '.' decimal point, independent of the global locale.
std::string format_number(double value);

/// Comma-separated table with LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  void add_numbers(std::initializer_list<double> values);

  [[nodiscard]] std::string str() const;
  /// Throws std::runtime_error naming the path on I/O failure.
  void write(const std::filesystem::path& path) const;

  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `text` verbatim (binary mode, so LF stays LF).
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace pfront
