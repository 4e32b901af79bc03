#include "crisispulse/text.hpp"

#include <string>
#include <vector>

#include "doctest.h"

using namespace crisispulse;

TEST_CASE("utf8 decode/encode round trip") {
  const std::vector<char32_t> cps = {
      U'a', U'Z', U'0', 0x00E7 /* ç */, 0x011F /* ğ */, 0x0131 /* ı */,
      0x0130 /* İ */, 0x015F /* ş */, 0x00FC /* ü */, 0x0416 /* Ж */,
      0x4E2D, 0x1F600 /* emoji */, 0x10FFFF};
  for (char32_t cp : cps) {
    std::string buf;
    text::append_utf8(buf, cp);
    std::size_t i = 0;
    CHECK(text::decode_utf8(buf, i) == cp);
    CHECK(i == buf.size());
  }
  const std::string s = "Geçmiş olsun İzmir 🙏";
  CHECK(text::from_codepoints(text::to_codepoints(s)) == s);
}

TEST_CASE("utf8 malformed input decodes to replacement, one byte at a time") {
  const std::string bad = "\x80\xC3";  // stray continuation, truncated lead
  std::size_t i = 0;
  CHECK(text::decode_utf8(bad, i) == text::kReplacement);
  CHECK(i == 1);
  CHECK(text::decode_utf8(bad, i) == text::kReplacement);
  CHECK(i == 2);
  CHECK_FALSE(text::valid_utf8(bad));
  CHECK_FALSE(text::valid_utf8("\xC0\xAF"));      // overlong '/'
  CHECK_FALSE(text::valid_utf8("\xED\xA0\x80"));  // surrogate
  CHECK(text::valid_utf8("ışık ve ötesi"));
  CHECK(text::valid_utf8("\xEF\xBF\xBD"));  // literal U+FFFD is data, not damage
}

TEST_CASE("codepoint_count counts characters, not bytes") {
  CHECK(text::codepoint_count("") == 0);
  CHECK(text::codepoint_count("abc") == 3);
  CHECK(text::codepoint_count("ışık") == 4);
  CHECK(text::codepoint_count("İzmir") == 5);
  CHECK(text::codepoint_count("🙏") == 1);
}

TEST_CASE("character classes") {
  CHECK(text::is_space(U' '));
  CHECK(text::is_space(U'\t'));
  CHECK(text::is_space(0x00A0));  // NBSP
  CHECK(text::is_space(0x2003));  // em space
  CHECK_FALSE(text::is_space(U'a'));

  CHECK(text::is_letter(U'q'));
  CHECK(text::is_letter(0x00E7));  // ç
  CHECK(text::is_letter(0x011F));  // ğ
  CHECK(text::is_letter(0x0131));  // ı
  CHECK(text::is_letter(0x0130));  // İ
  CHECK_FALSE(text::is_letter(U'3'));
  CHECK_FALSE(text::is_letter(U'#'));

  CHECK(text::is_word_char(U'_'));
  CHECK(text::is_word_char(U'7'));
  CHECK(text::is_word_char(0x015F));  // ş
  CHECK_FALSE(text::is_word_char(U'-'));

  // Handles are ASCII-only; Turkish letters end a handle run.
  CHECK(text::is_handle_char(U'A'));
  CHECK(text::is_handle_char(U'_'));
  CHECK_FALSE(text::is_handle_char(0x015F));

  CHECK(text::is_symbol_or_emoji(0x1F64F));  // 🙏
  CHECK(text::is_symbol_or_emoji(0x2764));   // ❤
  CHECK(text::is_symbol_or_emoji(0x00A9));   // ©
  CHECK(text::is_symbol_or_emoji(0x200D));   // ZWJ
  CHECK_FALSE(text::is_symbol_or_emoji(U'a'));
  CHECK_FALSE(text::is_symbol_or_emoji(0x00E7));
}

TEST_CASE("turkish lowercasing maps the dotted/dotless i pair") {
  CHECK(text::lower_turkish(U'I') == 0x0131);  // I -> ı
  CHECK(text::lower_turkish(char32_t{0x0130}) == U'i');
  CHECK(text::lower_turkish("IŞIK") == "ışık");
  CHECK(text::lower_turkish("İzmir") == "izmir");
  CHECK(text::lower_turkish("ÇAĞRI ÖZÜ ŞÜKRÜ") == "çağrı özü şükrü");
  CHECK(text::lower_turkish("ABC xyz 09") == "abc xyz 09");
}

TEST_CASE("simple lowercasing keeps I -> i for tag comparison") {
  CHECK(text::lower_simple(U'I') == U'i');
  CHECK(text::lower_simple(char32_t{0x0130}) == U'i');
  CHECK(text::lower_simple("IZMIRDEPREM") == "izmirdeprem");
  CHECK(text::lower_simple("İzmirDeprem") == "izmirdeprem");
}

TEST_CASE("whitespace helpers") {
  CHECK(text::collapse_whitespace("  a \t b\n\nc  ") == "a b c");
  CHECK(text::collapse_whitespace("") == "");
  CHECK(text::collapse_whitespace(" \t ") == "");
  CHECK(text::collapse_whitespace("tek") == "tek");

  CHECK(text::trim("  x  ") == "x");
  CHECK(text::trim("\r\nx\r\n") == "x");
  CHECK(text::trim("") == "");

  const auto parts = text::split_whitespace("bir iki  üç\t");
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "bir");
  CHECK(parts[1] == "iki");
  CHECK(parts[2] == "üç");
  CHECK(text::split_whitespace("   ").empty());
}
