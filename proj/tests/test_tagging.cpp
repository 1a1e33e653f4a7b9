#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "keyex/tagging.hpp"
#include "support/sample_fixtures.hpp"

using namespace keyex;

TEST_CASE("parse_tagged reads surface/TAG tokens") {
  TaggedSentence ts = parse_tagged("European/JJ nations/NNS", "100", 4);
  REQUIRE(ts.tokens.size() == 2);
  CHECK(ts.tokens[0] == TaggedToken{"European", "JJ"});
  CHECK(ts.tokens[1] == TaggedToken{"nations", "NNS"});
  CHECK(ts.doc_id == "100");
  CHECK(ts.sentence_index == 4);

  CHECK(parse_tagged("", "d", 1).tokens.empty());
}

TEST_CASE("last slash separates surface from tag") {
  TaggedSentence ts = parse_tagged("TCP/IP/NN", "d", 1);
  REQUIRE(ts.tokens.size() == 1);
  CHECK(ts.tokens[0].surface == "TCP/IP");
  CHECK(ts.tokens[0].tag == "NN");
}

TEST_CASE("parse errors carry the token position") {
  try {
    parse_tagged("good/NN naked-token", "d", 1);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("token 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_tagged("/NN", "d", 1), ParseError);
  CHECK_THROWS_AS(parse_tagged("word/", "d", 1), ParseError);
}

TEST_CASE("unknown tags: reject or pass through") {
  CHECK_THROWS_AS(parse_tagged("word/XYZ", "d", 1, UnknownTagPolicy::reject),
                  ParseError);
  TaggedSentence ts =
      parse_tagged("word/XYZ", "d", 1, UnknownTagPolicy::passthrough);
  REQUIRE(ts.tokens.size() == 1);
  CHECK(ts.tokens[0].tag == "XYZ");
  CHECK_FALSE(is_known_tag("XYZ"));
  CHECK(is_known_tag("NN"));
  CHECK(is_known_tag(","));
}

TEST_CASE("tag_sentence uses the lexicon, then defaults") {
  const TagLexicon& lex = TagLexicon::builtin();

  TaggedSentence ts = tag_sentence({1, "the cat"}, lex, "d");
  REQUIRE(ts.tokens.size() == 2);
  CHECK(ts.tokens[0] == TaggedToken{"the", "DT"});
  CHECK(ts.tokens[1] == TaggedToken{"cat", "NN"});

  TaggedSentence paris = tag_sentence({1, "Paris"}, lex);
  REQUIRE(paris.tokens.size() == 1);
  CHECK(paris.tokens[0].tag == "NNP");

  CHECK(tag_sentence({1, ""}, lex).tokens.empty());
}

TEST_CASE("suffix rules fire for unknown lowercase words") {
  const TagLexicon& lex = TagLexicon::builtin();
  CHECK(lex.lookup("thermal") == "JJ");
  CHECK(lex.lookup("immunization") == "NN");
  CHECK(lex.lookup("barriers") == "NNS");
  CHECK(lex.lookup("quickly") == "RB");
  CHECK(lex.lookup("modernized") == "VBD");
  CHECK(lex.lookup("reactor") == "NN");  // lowercase default
}

TEST_CASE("tokenizer detaches terminal punctuation") {
  std::vector<std::string> tokens =
      tokenize("He said (quietly): \"go now.\"");
  std::vector<std::string> expected = {"He", "said",  "(",  "quietly", ")",
                                       ":",  "\"",    "go", "now",     ".",
                                       "\""};
  CHECK(tokens == expected);

  TaggedSentence ts =
      tag_sentence({1, "It runs, 3.5% faster."}, TagLexicon::builtin());
  REQUIRE(ts.tokens.size() == 7);
  CHECK(ts.tokens[1].surface == "runs");
  CHECK(ts.tokens[2] == TaggedToken{",", ","});
  CHECK(ts.tokens[3].surface == "3.5");
  CHECK(ts.tokens[3].tag == "CD");
  CHECK(ts.tokens[6] == TaggedToken{".", "."});
}

TEST_CASE("format_tagged emits surface/TAG") {
  TaggedSentence ts;
  ts.tokens.push_back({"violence", "NN"});
  CHECK(format_tagged(ts) == "violence/NN");
  CHECK(format_tagged(TaggedSentence{}) == "");
}

TEST_CASE("sample tagger line round-trips byte-identically") {
  TaggedSentence ts = parse_tagged(tests::kTaggedSample, "100", 4);
  REQUIRE(ts.tokens.size() == 47);
  CHECK(format_tagged(ts) == tests::kTaggedSample);
}

TEST_CASE("parse after format is the identity") {
  std::mt19937 rng(99);
  const char* surfaces[] = {"alpha", "Beta", "x-ray", "TCP/IP",
                            "3.5",   "very", "long-word", "z"};
  std::vector<std::string> tags(tag_inventory().begin(),
                                tag_inventory().end());
  for (int trial = 0; trial < 300; ++trial) {
    TaggedSentence ts;
    ts.doc_id = "d";
    ts.sentence_index = 1;
    int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) {
      ts.tokens.push_back(
          {surfaces[rng() % 8], tags[rng() % tags.size()]});
    }
    TaggedSentence back = parse_tagged(format_tagged(ts), "d", 1);
    CHECK(back.tokens == ts.tokens);
  }
}

TEST_CASE("lexicon files parse words, suffixes and defaults") {
  TagLexicon lex = TagLexicon::parse(
      "# comment\n"
      "the\tDT\n"
      "Cat\tNN\n"
      "[suffixes]\n"
      "ness\tNN\n"
      "[defaults]\n"
      "lower\tVB\n"
      "capitalized\tFW\n",
      "inline");
  CHECK(lex.lookup("THE") == "DT");
  CHECK(lex.lookup("cat") == "NN");
  CHECK(lex.lookup("?\xF0\x9F\x99\x82") == "VB");  // non-ASCII start
  CHECK(lex.lookup("darkness") == "NN");
  CHECK(lex.lookup("blorp") == "VB");
  CHECK(lex.lookup("Blorp") == "FW");

  CHECK_THROWS_AS(TagLexicon::parse("oops\n", "inline"), ParseError);
  CHECK_THROWS_AS(TagLexicon::parse("word\tBADTAG\n", "inline"), ParseError);
  CHECK_THROWS_AS(TagLexicon::from_file("/nonexistent/lexicon"), IoError);
}

TEST_CASE("tagging is deterministic and total") {
  const TagLexicon& lex = TagLexicon::builtin();
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    int words = static_cast<int>(rng() % 15);
    for (int i = 0; i < words; ++i) {
      int len = 1 + static_cast<int>(rng() % 9);
      for (int c = 0; c < len; ++c) {
        text += static_cast<char>('a' + rng() % 26);
      }
      text += (rng() % 4 == 0) ? ". " : " ";
    }
    TaggedSentence a = tag_sentence({1, text}, lex);
    TaggedSentence b = tag_sentence({1, text}, lex);
    CHECK(a == b);
    for (const TaggedToken& t : a.tokens) CHECK_FALSE(t.tag.empty());
  }
}
