#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crisispulse::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // physical line the row starts on (1-based)
};

// RFC 4180 reader: quoted fields, doubled-quote escapes, LF or CRLF row
// ends, newlines allowed inside quoted fields.
std::vector<Row> parse(std::string_view data);

std::string escape(std::string_view field);
void append_row(std::string& out, std::span<const std::string> fields);
void append_row(std::string& out, std::initializer_list<std::string> fields);

}  // namespace crisispulse::csv
