#include "crisispulse/ingest.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include "crisispulse/config.hpp"
#include "crisispulse/errors.hpp"

#include "doctest.h"

using namespace crisispulse;
using ingest::ErrorReason;
using ingest::InputFormat;
using ingest::RawTweet;

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

const char* kHeader = "hashtag,datetime,tweet_id,text,username\n";

}  // namespace

TEST_CASE("csv record parsing keeps the id as a digit string") {
  const std::string src = std::string(kHeader) +
      "deprem,2020-10-30 15:00:00,1322588585016889344,Geçmiş olsun,ahmet\n";
  const auto result = ingest::parse_records(src, InputFormat::csv);
  REQUIRE(result.records.size() == 1);
  CHECK(result.errors.empty());
  const auto& t = result.records[0];
  CHECK(t.tweet_id == "1322588585016889344");  // 19 digits, no rounding
  CHECK(t.hashtag == "deprem");
  CHECK(t.username == "ahmet");
  CHECK(t.text == "Geçmiş olsun");
}

TEST_CASE("csv rows with defects become typed errors") {
  const std::string src = std::string(kHeader) +
      "deprem,2020-10-30 15:00:00,13222ABC99,text,ali\n"   // bad id
      "deprem,2020-10-30 15:00:00,132,text,\n"             // empty username
      "deprem,2020-10-30 15:00:00,132,short\n"             // 4 fields
      "deprem,2020-10-30 15:00:00,133,ok,veli\n";
  const auto result = ingest::parse_records(src, InputFormat::csv);
  REQUIRE(result.errors.size() == 3);
  CHECK(result.records.size() == 1);
  CHECK(result.errors[0].reason == ErrorReason::bad_id);
  CHECK(result.errors[0].line_number == 2);
  CHECK(result.errors[1].reason == ErrorReason::missing_field);
  CHECK(result.errors[2].reason == ErrorReason::bad_row);
}

TEST_CASE("header-only csv and empty jsonl parse to nothing") {
  const auto csv_result = ingest::parse_records(kHeader, InputFormat::csv);
  CHECK(csv_result.records.empty());
  CHECK(csv_result.errors.empty());
  const auto jsonl_result = ingest::parse_records("", InputFormat::jsonl);
  CHECK(jsonl_result.records.empty());
  CHECK(jsonl_result.errors.empty());
}

TEST_CASE("csv header must match exactly") {
  CHECK_THROWS_AS(ingest::parse_records("tag,when,id,text,user\nx,x,1,x,x\n",
                                        InputFormat::csv),
                  ValidationError);
  CHECK_THROWS_AS(ingest::parse_records("", InputFormat::csv), ValidationError);
}

TEST_CASE("jsonl records: integer ids accepted, floats rejected") {
  const std::string src =
      R"({"hashtag":"deprem","datetime":"2020-10-30 15:00:00","tweet_id":1322588585016889344,"text":"t1","username":"u1"})" "\n"
      R"({"hashtag":"deprem","datetime":"2020-10-30 15:00:00","tweet_id":1.5e18,"text":"t2","username":"u2"})" "\n"
      R"({"hashtag":"deprem","datetime":"2020-10-30 15:00:00","tweet_id":"77","text":"t3","username":"u3"})" "\n"
      R"({"hashtag":"deprem","datetime":"2020-10-30 15:00:00","text":"t4","username":"u4"})" "\n"
      R"(not json)" "\n"
      R"({"hashtag":"deprem","datetime":"x","tweet_id":"9","text":"t5","username":"u5","extra":1})" "\n";
  const auto result = ingest::parse_records(src, InputFormat::jsonl);
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].tweet_id == "1322588585016889344");
  CHECK(result.records[1].tweet_id == "77");
  REQUIRE(result.errors.size() == 4);
  CHECK(result.errors[0].reason == ErrorReason::bad_id);         // float id
  CHECK(result.errors[0].line_number == 2);
  CHECK(result.errors[1].reason == ErrorReason::missing_field);  // no tweet_id
  CHECK(result.errors[2].reason == ErrorReason::bad_row);        // not json
  CHECK(result.errors[3].reason == ErrorReason::bad_row);        // extra key
}

TEST_CASE("every data row lands in exactly one bucket") {
  const auto src = read_file(fixture_path("fixture_tweets.csv"));
  const auto result = ingest::parse_records(src, InputFormat::csv);
  // The fixture has 200 data rows: 197 parse, 3 are defective.
  CHECK(result.records.size() == 197);
  CHECK(result.errors.size() == 3);
  CHECK(result.records.size() + result.errors.size() == 200);
}

TEST_CASE("tag normalization strips '#' and lowercases plainly") {
  CHECK(ingest::normalize_tag("#Deprem") == "deprem");
  CHECK(ingest::normalize_tag("deprem") == "deprem");
  CHECK(ingest::normalize_tag("IZMIRDEPREM") == "izmirdeprem");
  CHECK(ingest::normalize_tag("İzmirDepremi") == "izmirdepremi");
  CHECK(ingest::normalize_tag("#") == "");
}

TEST_CASE("manifest parsing collapses literal repeats") {
  const auto m = ingest::parse_tag_manifest(
      "tags = deprem, izmir, deprem, İzmirDeprem\n"
      "date_from = 2020-10-30\n"
      "date_to = 2020-11-23\n");
  CHECK(m.tags == std::vector<std::string>{"deprem", "izmir", "izmirdeprem"});
  CHECK(m.date_from == Date{2020, 10, 30});
  CHECK(m.date_to == Date{2020, 11, 23});
  CHECK(m.contains("izmirdeprem"));
  CHECK_FALSE(m.contains("yangin"));
}

TEST_CASE("manifest rejects two spellings of the same tag") {
  CHECK_THROWS_AS(ingest::parse_tag_manifest("tags = #Deprem, deprem\n"
                                             "date_from = 2020-10-30\n"
                                             "date_to = 2020-11-23\n"),
                  ValidationError);
}

TEST_CASE("manifest edge cases") {
  const auto single = ingest::parse_tag_manifest(
      "tags = deprem\ndate_from = 2020-10-30\ndate_to = 2020-10-30\n");
  CHECK(single.tags == std::vector<std::string>{"deprem"});

  CHECK_THROWS_AS(ingest::parse_tag_manifest(
                      "tags =\ndate_from = 2020-10-30\ndate_to = 2020-11-23\n"),
                  ValidationError);
  CHECK_THROWS_AS(ingest::parse_tag_manifest(
                      "tags = a\ndate_from = 2020-11-23\ndate_to = 2020-10-30\n"),
                  ValidationError);
  CHECK_THROWS_AS(ingest::parse_tag_manifest(
                      "tags = a\ndate_from = 30/10/2020\ndate_to = 2020-11-23\n"),
                  ParseError);
}

TEST_CASE("fixture manifest: twenty listed tags, eighteen distinct") {
  const auto m = ingest::load_tag_manifest(fixture_path("fixture_manifest.cfg"));
  CHECK(m.tags.size() == 18);
  CHECK(m.contains("izmirdeprem"));
  CHECK(m.contains("deprem"));
}

TEST_CASE("filtering applies tag and date window") {
  const auto manifest = ingest::parse_tag_manifest(
      "tags = deprem\ndate_from = 2020-10-30\ndate_to = 2020-11-23\n");
  const std::vector<RawTweet> records = {
      {"deprem", "2020-10-30 15:00:00", "1", "in range", "a"},
      {"#Deprem", "2020-11-23 23:59:59", "2", "last day, tag spelled raw", "b"},
      {"deprem", "2020-11-24 00:00:00", "3", "one day late", "c"},
      {"deprem", "2020-10-29 23:59:59", "4", "one day early", "d"},
      {"yangin", "2020-11-01 10:00:00", "5", "wrong tag", "e"},
      {"deprem", "30/10/2020 15:00", "6", "bad datetime", "f"},
      {"IZMIRDEPREM", "2020-11-01 10:00:00", "7", "tag not in manifest", "g"},
  };
  const auto result = ingest::filter_by_manifest(records, manifest);
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].tweet_id == "1");
  CHECK(result.records[1].tweet_id == "2");
  CHECK(result.datetime_skip_count == 1);
}

TEST_CASE("filtering a planted 100-record batch keeps 93") {
  const auto manifest = ingest::parse_tag_manifest(
      "tags = deprem\ndate_from = 2020-10-30\ndate_to = 2020-11-23\n");
  std::vector<RawTweet> records;
  for (int i = 0; i < 100; ++i) {
    // Every 14th record (7 of 100) is dated after the window.
    const bool out_of_range = i % 14 == 13;
    char when[32];
    std::snprintf(when, sizeof(when), "2020-11-%02d 12:00:00",
                  out_of_range ? 24 : 1 + i % 20);
    records.push_back({"deprem", when, std::to_string(1000 + i), "text",
                       "user" + std::to_string(i)});
  }
  const auto result = ingest::filter_by_manifest(records, manifest);
  CHECK(result.records.size() == 93);
  CHECK(result.datetime_skip_count == 0);

  // Filtering is idempotent: a second pass changes nothing.
  const auto again = ingest::filter_by_manifest(result.records, manifest);
  CHECK(again.records.size() == result.records.size());
  CHECK(again.datetime_skip_count == 0);
  for (std::size_t i = 0; i < again.records.size(); ++i) {
    CHECK(again.records[i].tweet_id == result.records[i].tweet_id);
  }
}

TEST_CASE("jsonl serialization round trips") {
  const std::vector<RawTweet> records = {
      {"deprem", "2020-10-30 15:00:00", "1322588585016889344",
       "Geçmiş olsun İzmir 🙏 \"alıntı\" ve\nikinci satır", "kivanc_35"},
      {"izmirdeprem", "2020-11-01T10:00:00Z", "42", "", "resmi_hesap"},
  };
  const auto parsed =
      ingest::parse_records(ingest::to_jsonl(records), InputFormat::jsonl);
  REQUIRE(parsed.records.size() == records.size());
  CHECK(parsed.errors.empty());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(parsed.records[i].hashtag == records[i].hashtag);
    CHECK(parsed.records[i].datetime_raw == records[i].datetime_raw);
    CHECK(parsed.records[i].tweet_id == records[i].tweet_id);
    CHECK(parsed.records[i].text == records[i].text);
    CHECK(parsed.records[i].username == records[i].username);
  }
}
