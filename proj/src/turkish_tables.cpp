#include "crisispulse/prep.hpp"

// Embedded Turkish resources. The stopword list is the usual ~200-entry
// function-word inventory (pronouns, conjunctions, numerals, light verbs).
// Wish formulas like "olsun" are deliberately not stopwords; they carry the
// signal this corpus is about.
//
// The suffix table is a conservative inflection set: plural, case,
// post-vocalic genitive/possessive and instrumental endings, plus fused
// plural+case forms. Derivational endings and bare single-vowel suffixes
// are left out; they cut too deep on a fixed-table stemmer.

namespace crisispulse::prep {

namespace {

constexpr const char* kStopwords[] = {
    "acaba",       "altmış",      "altı",        "ama",         "ancak",
    "arada",       "artık",       "aslında",     "ayrıca",      "az",
    "bana",        "bazen",       "bazı",        "bazıları",    "belki",
    "ben",         "benden",      "beni",        "benim",       "beri",
    "beş",         "bile",        "bin",         "bir",         "biraz",
    "birçok",      "biri",        "birisi",      "birkaç",      "birşey",
    "biz",         "bizden",      "bize",        "bizi",        "bizim",
    "böyle",       "böylece",     "bu",          "buna",        "bunda",
    "bundan",      "bunlar",      "bunları",     "bunların",    "bunu",
    "bunun",       "burada",      "bütün",       "çok",         "çünkü",
    "da",          "daha",        "dahi",        "de",          "defa",
    "değil",       "diğer",       "diğeri",      "diye",        "doksan",
    "dokuz",       "dolayı",      "dolayısıyla", "dört",        "edecek",
    "eden",        "ederek",      "edilecek",    "ediliyor",    "edilmesi",
    "ediyor",      "eğer",        "elli",        "en",          "etmesi",
    "etti",        "ettiği",      "ettiğini",    "gibi",        "göre",
    "halen",       "hangi",       "hatta",       "hem",         "henüz",
    "hep",         "hepsi",       "her",         "herhangi",    "herkes",
    "herkesin",    "hiç",         "hiçbir",      "için",        "iki",
    "ile",         "ilgili",      "ise",         "işte",        "itibaren",
    "itibariyle",  "kadar",       "karşın",      "kendi",       "kendilerine",
    "kendini",     "kendisi",     "kendisine",   "kendisini",   "kez",
    "ki",          "kim",         "kimden",      "kime",        "kimi",
    "kimse",       "kırk",        "madem",       "milyar",      "milyon",
    "mı",          "mi",          "mu",          "mü",          "nasıl",
    "ne",          "neden",       "nedenle",     "nerde",       "nerede",
    "nereye",      "niçin",       "niye",        "o",           "olan",
    "olarak",      "oldu",        "olduğu",      "olduğunu",    "olduklarını",
    "olmadı",      "olmadığı",    "olmak",       "olması",      "olmayan",
    "olmaz",       "olup",        "olur",        "olursa",      "oluyor",
    "on",          "ona",         "ondan",       "onlar",       "onlardan",
    "onları",      "onların",     "onu",         "onun",        "otuz",
    "oysa",        "öyle",        "pek",         "rağmen",      "sadece",
    "sanki",       "sekiz",       "seksen",      "sen",         "senden",
    "seni",        "senin",       "siz",         "sizden",      "size",
    "sizi",        "sizin",       "şey",         "şeyden",      "şeyi",
    "şeyler",      "şöyle",       "şu",          "şuna",        "şunda",
    "şundan",      "şunları",     "şunu",        "tarafından",  "trilyon",
    "tüm",         "üç",          "üzere",       "var",         "vardı",
    "ve",          "veya",        "ya",          "yani",        "yapacak",
    "yapılan",     "yapılması",   "yapıyor",     "yapmak",      "yaptı",
    "yaptığı",     "yaptığını",   "yaptıkları",  "yedi",        "yerine",
    "yetmiş",      "yine",        "yirmi",       "yoksa",       "yüz",
    "zaten",
};

constexpr const char* kSuffixes[] = {
    "lerinden", "larından", "lerinde", "larında", "lerine", "larına",
    "lerden",   "lardan",   "lerde",   "larda",   "lerin",  "ların",
    "lerle",    "larla",    "leri",    "ları",    "ler",    "lar",
    "nden",     "ndan",     "nde",     "nda",     "nın",    "nin",
    "nun",      "nün",      "den",     "dan",     "ten",    "tan",
    "de",       "da",       "te",      "ta",      "yla",    "yle",
    "sı",       "si",       "su",      "sü",
};

}  // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet set(std::begin(kStopwords), std::end(kStopwords));
  return set;
}

const std::vector<std::string>& default_suffixes() {
  static const std::vector<std::string> table(std::begin(kSuffixes),
                                              std::end(kSuffixes));
  return table;
}

}  // namespace crisispulse::prep
