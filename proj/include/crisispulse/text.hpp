#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 handling and character classification used across the pipeline.
// Everything here is table-driven and locale-independent so runs produce
// the same bytes on every platform.

namespace crisispulse::text {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes the code point starting at byte offset i and advances i past it.
// Malformed sequences yield U+FFFD and advance a single byte.
char32_t decode_utf8(std::string_view s, std::size_t& i);

void append_utf8(std::string& out, char32_t cp);

bool valid_utf8(std::string_view s);

std::vector<char32_t> to_codepoints(std::string_view s);
std::string from_codepoints(const std::vector<char32_t>& cps);
std::size_t codepoint_count(std::string_view s);

bool is_ascii_digit(char32_t cp);
bool is_space(char32_t cp);
bool is_letter(char32_t cp);
// Letter, ASCII digit or underscore (hashtag runs).
bool is_word_char(char32_t cp);
// ASCII letter, digit or underscore (mention handles are ASCII-only).
bool is_handle_char(char32_t cp);
// Symbol and pictograph ranges (So/Sk blocks, emoji, skin-tone modifiers,
// variation selectors, zero-width joiner).
bool is_symbol_or_emoji(char32_t cp);

// Lowercases with the Turkish dotted/dotless rule: 'I' -> U+0131 and
// U+0130 -> 'i'. Covers ASCII, Latin-1, Latin Extended-A, Greek, Cyrillic.
char32_t lower_turkish(char32_t cp);
std::string lower_turkish(std::string_view s);

// Default lowercasing ('I' -> 'i', U+0130 -> 'i'); used where matching must
// be plain case-insensitive, e.g. hashtag and manifest comparison.
char32_t lower_simple(char32_t cp);
std::string lower_simple(std::string_view s);

// Runs of whitespace become single spaces; leading/trailing space dropped.
std::string collapse_whitespace(std::string_view s);

std::string trim(std::string_view s);

std::vector<std::string> split_whitespace(std::string_view s);

}  // namespace crisispulse::text
