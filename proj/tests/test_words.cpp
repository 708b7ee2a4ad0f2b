#include <doctest.h>

#include <random>

#include "gfp/words.hpp"

using namespace gfp;

namespace {

Word rand_word(std::mt19937& rng, int len) {
    Word w;
    for (int i = 0; i < len; ++i) w = w.push_back(int(rng() & 1));
    return w;
}

long binom(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Witt formula: number of Lyndon words of length n over two letters.
long necklaces(int n) {
    long s = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        int m = n / d, mu = 1;
        for (int p = 2, x = d; x > 1; ++p) {
            if (x % p) continue;
            x /= p;
            if (x % p == 0) { mu = 0; break; }
            mu = -mu;
        }
        s += mu * (1L << m);
    }
    return s / n;
}

}  // namespace

TEST_CASE("word packing") {
    Word w = Word::from_string("01101");
    CHECK(w.size() == 5);
    CHECK(w.str() == "01101");
    CHECK(w.front() == 0);
    CHECK(w.back() == 1);
    CHECK(w.count(1) == 3);
    CHECK(w.reversed().str() == "10110");
    CHECK(w.swapped().str() == "10010");
    CHECK(w.prefix(2).str() == "01");
    CHECK(w.suffix_from(2).str() == "101");
    CHECK((w.prefix(2) + w.suffix_from(2)) == w);
    CHECK(Word().empty());
    CHECK(Word::zeros(3).str() == "000");
}

TEST_CASE("word order is graded lexicographic") {
    CHECK(Word::from_string("1") < Word::from_string("00"));
    CHECK(Word::from_string("01") < Word::from_string("10"));
}

TEST_CASE("word012 sugar") {
    CHECK(parse_word012("2(01){2}2") == "201012");
    CHECK(parse_word012("0{3}1") == "0001");
    CHECK(parse_word012("") == "");
    CHECK_THROWS_AS(parse_word012("0a1"), MathError);
}

TEST_CASE("letter 2 expands to 1 - 0") {
    WordPoly p = expand_letter2("2");
    CHECK(p.coeff(Word::from_string("0")) == -1);
    CHECK(p.coeff(Word::from_string("1")) == 1);
    CHECK(expand_letter2("22").size() == 4);
}

TEST_CASE("property: shuffle has binomially many terms with multiplicity") {
    std::mt19937 rng(1);
    for (int it = 0; it < 50; ++it) {
        int a = int(rng() % 6), b = int(rng() % 6);
        WordPoly s = shuffle(rand_word(rng, a), rand_word(rng, b));
        Q total = 0;
        for (const auto& [w, c] : s) {
            CHECK(w.size() == a + b);
            total += c;
        }
        CHECK(total == binom(a + b, a));
    }
}

TEST_CASE("property: shuffle is commutative and associative") {
    std::mt19937 rng(2);
    for (int it = 0; it < 30; ++it) {
        Word u = rand_word(rng, int(rng() % 4)), v = rand_word(rng, int(rng() % 4)), w = rand_word(rng, int(rng() % 3));
        CHECK(shuffle(u, v) == shuffle(v, u));
        CHECK(shuffle(shuffle(u, v), WordPoly(w, 1)) == shuffle(WordPoly(u, 1), shuffle(v, w)));
    }
}

TEST_CASE("property: antipode is signed reversal and satisfies the Hopf identity") {
    std::mt19937 rng(3);
    for (int it = 0; it < 30; ++it) {
        Word w = rand_word(rng, 1 + int(rng() % 6));
        CHECK(antipode(w) == WordPoly(w.reversed(), w.size() % 2 ? -1 : 1));
        WordPoly sum;
        for (auto [u, v] : deconcatenations(w)) sum += shuffle(antipode(u), WordPoly(v, 1));
        CHECK(sum.empty());
    }
}

TEST_CASE("property: Lyndon words are counted by the Witt formula") {
    for (int n = 1; n <= 12; ++n) CHECK(long(lyndon_words(n).size()) == necklaces(n));
    CHECK(is_lyndon(Word::from_string("0011")));
    CHECK(!is_lyndon(Word::from_string("0101")));
    CHECK(!is_lyndon(Word::from_string("10")));
}

TEST_CASE("Lyndon bracket has its word as leading term") {
    for (Word w : lyndon_words(5)) {
        WordPoly b = lyndon_bracket(w);
        CHECK(b.coeff(w) == 1);
        for (const auto& [x, c] : b) CHECK(!(x < w));
    }
}
