#include "crisispulse/features.hpp"

#include <set>
#include <string>
#include <vector>

#include "crisispulse/csv.hpp"
#include "crisispulse/prep.hpp"
#include "crisispulse/rng.hpp"
#include "crisispulse/text.hpp"

#include "doctest.h"

using namespace crisispulse;
using ingest::RawTweet;

namespace {

prep::CleanTweet cleaned(const std::string& raw_text) {
  const std::vector<RawTweet> records = {
      {"deprem", "2020-10-30 15:00:00", "1", raw_text, "u"}};
  auto result = prep::preprocess(records, prep::default_stopwords(),
                                 prep::default_suffixes());
  REQUIRE(result.tweets.size() == 1);
  return result.tweets[0];
}

feat::TweetFeatures features_of(const std::string& raw_text) {
  const auto clean = cleaned(raw_text);
  return feat::extract_features(clean, prep::default_stopwords());
}

}  // namespace

TEST_CASE("mention extraction") {
  CHECK(feat::extract_mentions("@AFADBaskanlik ve @izmirbld yardım") ==
        std::vector<std::string>{"AFADBaskanlik", "izmirbld"});
  CHECK(feat::extract_mentions("email@domain.com").empty());
  CHECK(feat::extract_mentions("").empty());
  CHECK(feat::extract_mentions("(@izmirbld)") ==
        std::vector<std::string>{"izmirbld"});
  CHECK(feat::extract_mentions(".@haber son dakika") ==
        std::vector<std::string>{"haber"});
  // Handles are 1..15 ASCII word characters.
  CHECK(feat::extract_mentions("@abcdefghijklmno") ==
        std::vector<std::string>{"abcdefghijklmno"});
  CHECK(feat::extract_mentions("@abcdefghijklmnop").empty());
  CHECK(feat::extract_mentions("@ boşluk").empty());
  // A Turkish letter ends the ASCII handle run.
  CHECK(feat::extract_mentions("@kullanıcı") == std::vector<std::string>{"kullan"});
  // Duplicates kept in order.
  CHECK(feat::extract_mentions("@a @b @a") ==
        std::vector<std::string>{"a", "b", "a"});
}

TEST_CASE("hashtag extraction lowercases plainly") {
  const auto [tags, n] = feat::extract_hashtags("#deprem #İzmirDeprem");
  CHECK(tags == std::vector<std::string>{"deprem", "izmirdeprem"});
  CHECK(n == 2);

  CHECK(feat::extract_hashtags("no tags here").first.empty());
  CHECK(feat::extract_hashtags("no tags here").second == 0);
  CHECK(feat::extract_hashtags("[#deprem]! ve söz,#tag.").first ==
        std::vector<std::string>{"deprem", "tag"});
  CHECK(feat::extract_hashtags("#IZMIRDEPREM").first ==
        std::vector<std::string>{"izmirdeprem"});
  CHECK(feat::extract_hashtags("# boş").first.empty());
  CHECK(feat::extract_hashtags("#seferihisar_35").first ==
        std::vector<std::string>{"seferihisar_35"});
  CHECK(feat::extract_hashtags("#deprem #izmir #acil #yardım #afad").second == 5);
}

TEST_CASE("url counting") {
  CHECK(feat::count_urls("bkz https://t.co/a ve http://b.c") == 2);
  CHECK(feat::count_urls("") == 0);
  CHECK(feat::count_urls("WWW.ORNEK.COM ve https://x") == 2);
  CHECK(feat::count_urls("yanhttp://x.y yapışık") == 0);  // no boundary
  CHECK(feat::count_urls("(https://parantez.li)") == 1);
  CHECK(feat::count_urls("https://a https://b https://c") == 3);
}

TEST_CASE("full feature row for a hand-checked tweet") {
  const auto f = features_of("@AFADBaskanlik #deprem İzmir'de yardım! https://t.co/abc");
  CHECK(f.mentions == std::vector<std::string>{"AFADBaskanlik"});
  CHECK(f.hashtags == std::vector<std::string>{"deprem"});
  CHECK(f.hashtag_count == 1);
  CHECK(f.url_count == 1);
  CHECK(f.raw_word_count == 5);
  CHECK(f.clean_word_count == 3);  // deprem izmir yardım
  CHECK(f.unique_word_count == 3);
  CHECK(f.stopword_count == 0);
  CHECK(f.word_count_diff == 2);
  CHECK(f.raw_char_count == 56);
  CHECK(f.clean_char_count == 19);  // "deprem izmir yardım"
  CHECK(f.avg_word_length == doctest::Approx(17.0 / 3).epsilon(1e-12));
}

TEST_CASE("feature degenerate cases") {
  const auto one = features_of("a");
  CHECK(one.raw_word_count == 1);
  CHECK(one.clean_word_count == 1);
  CHECK(one.word_count_diff == 0);
  CHECK(one.avg_word_length == 1.0);

  // All tokens are stopwords: counts go to zero, average stays defined.
  const auto empty = features_of("ve ile ama");
  CHECK(empty.clean_word_count == 0);
  CHECK(empty.unique_word_count == 0);
  CHECK(empty.avg_word_length == 0.0);
  CHECK(empty.stopword_count == 3);
  CHECK(empty.raw_word_count == 3);
}

TEST_CASE("stopword_count reads the raw text, not the cleaned one") {
  const auto f = features_of("Bu ve şu deprem çok kötü!");
  // bu, ve, şu, çok are stopwords after lowercasing and punctuation stripping
  CHECK(f.stopword_count == 4);
  CHECK(f.clean_word_count == 2);  // deprem kötü
}

TEST_CASE("unique counts distinct cleaned tokens") {
  const auto f = features_of("deprem deprem deprem yardım");
  CHECK(f.clean_word_count == 4);
  CHECK(f.unique_word_count == 2);
}

TEST_CASE("feature invariants hold over generated tweets") {
  Rng rng(2020);
  static const std::vector<std::string> pieces = {
      "deprem",      "#izmir",    "@AFADBaskanlik", "https://t.co/xq",
      "yardım!",     "ve",        "🙏",             "İzmir'de",
      "ENKAZ",       "@a @b",     "#Seferihisar",   "www.ornek.com",
      "...",         "bir",       "ışık",           "kurtarma,",
      "(alıntı)",    "115.",      "saat 20:30",     "email@d.com"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string raw;
    const int len = 1 + static_cast<int>(rng.below(12));
    for (int i = 0; i < len; ++i) {
      if (i) raw.push_back(' ');
      raw += pieces[rng.below(static_cast<std::uint32_t>(pieces.size()))];
    }
    const auto clean = cleaned(raw);
    const auto f = feat::extract_features(clean, prep::default_stopwords());

    CHECK(f.clean_word_count <= f.raw_word_count);
    CHECK(f.word_count_diff == f.raw_word_count - f.clean_word_count);
    CHECK(f.word_count_diff >= 0);
    CHECK(f.unique_word_count <= f.clean_word_count);
    CHECK(f.hashtag_count == static_cast<int>(f.hashtags.size()));
    CHECK(f.raw_char_count == static_cast<int>(text::codepoint_count(raw)));

    // Independent recount of the average from the token list itself.
    if (f.clean_word_count == 0) {
      CHECK(f.avg_word_length == 0.0);
    } else {
      std::size_t letters = 0;
      for (const auto& t : clean.tokens) letters += text::codepoint_count(t);
      CHECK(f.avg_word_length ==
            doctest::Approx(static_cast<double>(letters) / clean.tokens.size())
                .epsilon(1e-12));
      CHECK(f.clean_char_count ==
            static_cast<int>(letters + clean.tokens.size() - 1));
    }
    CHECK(f.unique_word_count ==
          static_cast<int>(std::set<std::string>(clean.tokens.begin(),
                                                 clean.tokens.end())
                               .size()));
  }
}

TEST_CASE("feature rows round trip through jsonl and csv") {
  std::vector<feat::FeatureRow> rows;
  for (const auto* s : {"@AFADBaskanlik #deprem İzmir'de yardım! https://t.co/abc",
                        "ve ile ama", "deprem deprem yardım #acil"}) {
    const auto clean = cleaned(s);
    rows.push_back({clean.tweet_id,
                    feat::extract_features(clean, prep::default_stopwords())});
  }

  const auto back = feat::from_jsonl(feat::to_jsonl(rows));
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].features.mentions == rows[i].features.mentions);
    CHECK(back[i].features.hashtags == rows[i].features.hashtags);
    CHECK(back[i].features.url_count == rows[i].features.url_count);
    CHECK(back[i].features.stopword_count == rows[i].features.stopword_count);
    CHECK(back[i].features.avg_word_length ==
          doctest::Approx(rows[i].features.avg_word_length).epsilon(1e-12));
  }

  const auto table = csv::parse(feat::to_csv(rows));
  REQUIRE(table.size() == rows.size() + 1);
  CHECK(table[0].fields == feat::kCsvHeader);
  CHECK(table[1].fields[0] == "1");
  CHECK(table[1].fields[9] == "5.6667");  // avg word length, 4 decimals
  for (std::size_t r = 1; r < table.size(); ++r) {
    CHECK(table[r].fields.size() == feat::kCsvHeader.size());
  }
}
