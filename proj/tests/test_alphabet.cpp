#include <doctest.h>

#include <hrc/alphabet.hpp>
#include <hrc/rng.hpp>

#include "sherlock_corpus.hpp"

using namespace hrc;

TEST_CASE("alphabet is built sorted and distinct") {
  const Alphabet ab = Alphabet::from_text(U"aba");
  CHECK(ab.size() == 2);
  CHECK(ab.symbol(0) == U'a');
  CHECK(ab.symbol(1) == U'b');

  const Alphabet single = Alphabet::from_text(U"z");
  CHECK(single.size() == 1);
  CHECK(single.symbol(0) == U'z');

  CHECK_THROWS_WITH_AS(Alphabet::from_text(U""), "empty corpus",
                       std::invalid_argument);
}

TEST_CASE("sherlock corpus has 38 distinct characters") {
  const std::u32string corpus = decode_utf8(hrc_tests::kSherlockCorpus);
  CHECK(corpus.size() == 1137);
  const Alphabet ab = Alphabet::from_text(corpus);
  CHECK(ab.size() == 38);
}

TEST_CASE("index and symbol are inverse") {
  const Alphabet ab = Alphabet::from_text(U"hello world");
  for (std::size_t i = 0; i < ab.size(); ++i)
    CHECK(ab.index(ab.symbol(i)) == i);
  CHECK_THROWS_AS(ab.index(U'z'), std::invalid_argument);
  CHECK_THROWS_AS(ab.symbol(ab.size()), std::invalid_argument);
}

TEST_CASE("encode maps symbols to indices") {
  const Alphabet ab = Alphabet::from_symbols({U'a', U'b'});
  CHECK(encode(U"ab", ab) == SymbolSequence{0, 1});
  CHECK(encode(U"ba", ab) == SymbolSequence{1, 0});
  CHECK_THROWS_WITH_AS(encode(U"ac", ab), "unknown symbol U+99 at position 1",
                       std::invalid_argument);
}

TEST_CASE("decode(encode(text)) round-trips") {
  SplitMix64 rng(7);
  const std::u32string pool = U"abcde,. xyz";
  const Alphabet ab = Alphabet::from_text(pool);
  for (int rep = 0; rep < 20; ++rep) {
    std::u32string text;
    const std::size_t len = 1 + uniform_below(rng, 64);
    for (std::size_t i = 0; i < len; ++i)
      text.push_back(pool[uniform_below(rng, static_cast<std::uint32_t>(pool.size()))]);
    CHECK(decode(encode(text, ab), ab) == text);
  }
}

TEST_CASE("one_hot basis") {
  const Eigen::VectorXd v = one_hot(2, 4);
  CHECK(v.size() == 4);
  CHECK(v[2] == 1.0);
  CHECK(v.sum() == 1.0);
  CHECK(v.norm() == 1.0);

  CHECK(one_hot(0, 1).size() == 1);
  CHECK(one_hot(0, 1)[0] == 1.0);
  CHECK_THROWS_AS(one_hot(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(one_hot(-1, 3), std::invalid_argument);
}

TEST_CASE("one_hot vectors are mutually orthogonal") {
  const int m = 6;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      CHECK(one_hot(i, m).dot(one_hot(j, m)) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("utf8 round-trip and validation") {
  const std::u32string text = U"ascii + café + € + \U0001f600";
  CHECK(decode_utf8(encode_utf8(text)) == text);

  CHECK_THROWS_AS(decode_utf8("\xc3"), std::invalid_argument);       // truncated
  CHECK_THROWS_AS(decode_utf8("\x80"), std::invalid_argument);       // stray tail
  CHECK_THROWS_AS(decode_utf8("\xc0\xaf"), std::invalid_argument);   // overlong
  CHECK_THROWS_AS(decode_utf8("\xed\xa0\x80"), std::invalid_argument);  // surrogate
}
