#include "crisispulse/csv.hpp"

namespace crisispulse::csv {

std::vector<Row> parse(std::string_view data) {
  std::vector<Row> rows;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < data.size()) {
    Row row;
    row.line = line;
    std::string field;
    bool in_quotes = false;
    bool row_done = false;
    while (i < data.size() && !row_done) {
      const char c = data[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < data.size() && data[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            in_quotes = false;
            ++i;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++i;
        }
      } else {
        switch (c) {
          case '"':
            if (field.empty()) {
              in_quotes = true;
            } else {
              field.push_back(c);  // stray quote mid-field, keep verbatim
            }
            ++i;
            break;
          case ',':
            row.fields.push_back(std::move(field));
            field.clear();
            ++i;
            break;
          case '\r':
            if (i + 1 < data.size() && data[i + 1] == '\n') {
              i += 2;
            } else {
              ++i;
            }
            ++line;
            row_done = true;
            break;
          case '\n':
            ++i;
            ++line;
            row_done = true;
            break;
          default:
            field.push_back(c);
            ++i;
        }
      }
    }
    if (!row_done) {
      // last row without trailing newline (or unterminated quote)
    }
    row.fields.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void append_row(std::string& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  out.push_back('\n');
}

void append_row(std::string& out, std::initializer_list<std::string> fields) {
  append_row(out, std::span<const std::string>(fields.begin(), fields.size()));
}

}  // namespace crisispulse::csv
