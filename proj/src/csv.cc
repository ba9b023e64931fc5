#include "mdtm/csv.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fmt/core.h"

#include "mdtm/types.h"

namespace mdtm {

std::optional<std::size_t> csv_table::column(std::string_view name) const {
  auto const it = std::find(begin(header_), end(header_), name);
  return it == end(header_)
             ? std::nullopt
             : std::optional{static_cast<std::size_t>(it - begin(header_))};
}

std::size_t csv_table::required_column(std::string_view name) const {
  if (auto const c = column(name); c.has_value()) {
    return *c;
  }
  throw parse_error{fmt::format("{}: missing column {}", name_, name)};
}

csv_table parse_csv(std::string_view s, std::string name,
                    bool const has_header) {
  if (s.starts_with("\xEF\xBB\xBF")) {
    s.remove_prefix(3U);
  }

  auto t = csv_table{};
  t.name_ = std::move(name);

  auto fields = std::vector<std::string>{};
  auto field = std::string{};
  auto line = std::size_t{1U};
  auto row_line = line;
  auto in_quotes = false;
  auto row_has_content = false;

  auto const end_row = [&]() {
    fields.push_back(std::move(field));
    field.clear();
    if (row_has_content || fields.size() > 1U || !fields.front().empty()) {
      if (has_header && t.header_.empty() && t.rows_.empty()) {
        t.header_ = std::move(fields);
        for (auto& h : t.header_) {
          auto const first = h.find_first_not_of(" \t");
          auto const last = h.find_last_not_of(" \t");
          h = first == std::string::npos ? "" : h.substr(first, last - first + 1U);
        }
      } else {
        t.rows_.push_back({row_line, std::move(fields)});
      }
    }
    fields.clear();
    row_has_content = false;
  };

  for (auto i = std::size_t{0U}; i != s.size(); ++i) {
    auto const c = s[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1U < s.size() && s[i + 1U] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') {
          ++line;
        }
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        row_has_content = true;
        break;
      case '\r': break;
      case '\n':
        end_row();
        row_line = ++line;
        break;
      default: field.push_back(c);
    }
  }
  if (in_quotes) {
    throw parse_error{
        fmt::format("{}:{}: unterminated quoted field", t.name_, row_line)};
  }
  if (!field.empty() || !fields.empty()) {
    end_row();
  }
  return t;
}

csv_table read_csv(std::filesystem::path const& p, bool const has_header) {
  auto in = std::ifstream{p, std::ios::binary};
  if (!in) {
    throw parse_error{fmt::format("cannot open {}", p.string())};
  }
  auto ss = std::stringstream{};
  ss << in.rdbuf();
  return parse_csv(ss.str(), p.filename().string(), has_header);
}

}  // namespace mdtm
