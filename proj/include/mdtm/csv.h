#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mdtm {

// RFC 4180 style: quoted fields, doubled quotes, CRLF, leading BOM.
struct csv_table {
  struct row {
    std::size_t line_;
    std::vector<std::string> fields_;
  };

  // Index of a header column, nullopt if absent.
  std::optional<std::size_t> column(std::string_view name) const;

  // Throws parse_error naming the file if the column is absent.
  std::size_t required_column(std::string_view name) const;

  std::string name_;  // file name for diagnostics
  std::vector<std::string> header_;
  std::vector<row> rows_;
};

// The first line is taken as the header if `has_header`.
csv_table parse_csv(std::string_view content, std::string name,
                    bool has_header = true);
csv_table read_csv(std::filesystem::path const&, bool has_header = true);

}  // namespace mdtm
