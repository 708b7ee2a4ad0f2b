#pragma once
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfp/lin.hpp"

namespace gfp {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A word over {0,1}, packed with a sentinel bit: code = 1 << len | letters.
// Letter i sits at bit len-1-i, so the first letter is the most significant one.
struct Word {
    uint64_t code = 1;

    static constexpr int kMaxLen = 62;

    Word() = default;
    explicit constexpr Word(uint64_t c) : code(c) {}
    static Word from_string(const std::string& s);
    static Word zeros(int n) { return Word(uint64_t(1) << n); }
    static Word letter_word(int a) { return Word(2 | uint64_t(a)); }

    int size() const { return 63 - std::countl_zero(code); }
    bool empty() const { return code == 1; }
    int operator[](int i) const { return int((code >> (size() - 1 - i)) & 1); }
    int front() const { return (*this)[0]; }
    int back() const { return int(code & 1); }
    uint64_t bits() const { return code ^ (uint64_t(1) << size()); }
    int count(int a) const {
        int ones = std::popcount(bits());
        return a ? ones : size() - ones;
    }

    Word push_back(int a) const { return Word((code << 1) | uint64_t(a)); }
    Word push_front(int a) const {
        int n = size();
        return Word(code ^ (uint64_t(1) << n) | (uint64_t(2 + a) << n));
    }
    Word prefix(int n) const { return Word(code >> (size() - n)); }
    Word suffix_from(int i) const {
        int n = size() - i;
        return Word((code & ((uint64_t(1) << n) - 1)) | (uint64_t(1) << n));
    }
    Word drop_back() const { return Word(code >> 1); }
    Word drop_front() const { return suffix_from(1); }
    Word reversed() const;
    Word swapped() const { return Word(code ^ ((uint64_t(1) << size()) - 1)); }

    friend Word operator+(Word a, Word b) {
        int n = b.size();
        if (a.size() + n > kMaxLen) throw MathError("word too long");
        return Word((a.code << n) | b.bits());
    }
    bool operator==(const Word& o) const { return code == o.code; }
    bool operator!=(const Word& o) const { return code != o.code; }
    // Graded lexicographic: shorter first, then 0 < 1.
    bool operator<(const Word& o) const { return code < o.code; }

    std::string str() const;
};

struct WordHash {
    size_t operator()(const Word& w) const { return hash_mix(w.code); }
};

using WordPoly = Lin<Word, WordHash>;

// Words over {0,1,2} are plain strings.
using Word012 = std::string;

WordPoly shuffle(Word u, Word v);
WordPoly shuffle(const WordPoly& a, const WordPoly& b);
std::vector<std::pair<Word, Word>> deconcatenations(Word w);
WordPoly antipode(Word w);
WordPoly antipode(const WordPoly& p);
bool is_lyndon(Word w);
// Nested commutator of the standard factorization, expanded.
WordPoly lyndon_bracket(Word w);
std::vector<Word> lyndon_words(int len);
WordPoly expand_letter2(const Word012& w);
WordPoly concat(const WordPoly& a, const WordPoly& b);

// Parses "0110", "" or "ε", and repetition sugar such as "2(01){3}2".
Word012 parse_word012(const std::string& text);
Word parse_word01(const std::string& text);
std::string to_string(const WordPoly& p);

}  // namespace gfp
