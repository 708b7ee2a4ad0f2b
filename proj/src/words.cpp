#include "gfp/words.hpp"

#include <cctype>

namespace gfp {

Word Word::from_string(const std::string& s) {
    Word w;
    for (char c : s) {
        if (c == '0' || c == '1') w = w.push_back(c - '0');
        else throw MathError("bad letter in 01-word: " + s);
    }
    if (w.size() > kMaxLen) throw MathError("word too long");
    return w;
}

Word Word::reversed() const {
    Word r;
    for (int i = size() - 1; i >= 0; --i) r = r.push_back((*this)[i]);
    return r;
}

std::string Word::str() const {
    std::string s;
    for (int i = 0; i < size(); ++i) s += char('0' + (*this)[i]);
    return s;
}

WordPoly shuffle(Word u, Word v) {
    int m = u.size(), n = v.size();
    // row[j] holds the shuffles of the first i letters of u with the first j letters of v
    std::vector<WordPoly> row(n + 1);
    row[0].add(Word(), 1);
    for (int j = 1; j <= n; ++j) row[j].add(v.prefix(j), 1);
    for (int i = 1; i <= m; ++i) {
        int a = u[i - 1];
        std::vector<WordPoly> next(n + 1);
        next[0].add(u.prefix(i), 1);
        for (int j = 1; j <= n; ++j) {
            int b = v[j - 1];
            for (const auto& [w, c] : row[j]) next[j].add(w.push_back(a), c);
            for (const auto& [w, c] : next[j - 1]) next[j].add(w.push_back(b), c);
        }
        row = std::move(next);
    }
    return row[n];
}

WordPoly shuffle(const WordPoly& a, const WordPoly& b) {
    WordPoly r;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b) r.add(shuffle(u, v), cu * cv);
    return r;
}

WordPoly concat(const WordPoly& a, const WordPoly& b) {
    WordPoly r;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b) r.add(u + v, cu * cv);
    return r;
}

std::vector<std::pair<Word, Word>> deconcatenations(Word w) {
    std::vector<std::pair<Word, Word>> out;
    for (int i = 0; i <= w.size(); ++i) out.emplace_back(w.prefix(i), w.suffix_from(i));
    return out;
}

WordPoly antipode(Word w) { return WordPoly(w.reversed(), w.size() % 2 ? -1 : 1); }

WordPoly antipode(const WordPoly& p) {
    WordPoly r;
    for (const auto& [w, c] : p) r.add(antipode(w), c);
    return r;
}

namespace {

bool lex_less(Word a, Word b) {
    int n = std::min(a.size(), b.size());
    for (int i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return a.size() < b.size();
}

}  // namespace

bool is_lyndon(Word w) {
    if (w.empty()) return false;
    for (int i = 1; i < w.size(); ++i)
        if (!lex_less(w, w.suffix_from(i))) return false;
    return true;
}

WordPoly lyndon_bracket(Word w) {
    if (!is_lyndon(w)) throw MathError("not Lyndon");
    if (w.size() == 1) return WordPoly(w, 1);
    for (int i = 1; i < w.size(); ++i) {
        Word v = w.suffix_from(i);
        if (is_lyndon(v)) {
            WordPoly pu = lyndon_bracket(w.prefix(i)), pv = lyndon_bracket(v);
            return concat(pu, pv) - concat(pv, pu);
        }
    }
    throw MathError("not Lyndon");
}

std::vector<Word> lyndon_words(int len) {
    std::vector<Word> out;
    if (len < 1) return out;
    for (uint64_t b = 0; b < (uint64_t(1) << len); ++b) {
        Word w((uint64_t(1) << len) | b);
        if (is_lyndon(w)) out.push_back(w);
    }
    return out;
}

WordPoly expand_letter2(const Word012& w) {
    WordPoly r(Word(), 1);
    for (char c : w) {
        WordPoly next;
        for (const auto& [u, k] : r) {
            if (c == '0' || c == '1') next.add(u.push_back(c - '0'), k);
            else if (c == '2') {
                next.add(u.push_back(1), k);
                next.add(u.push_back(0), -k);
            } else throw MathError(std::string("bad letter '") + c + "'");
        }
        r = std::move(next);
    }
    return r;
}

namespace {

struct SugarParser {
    const std::string& s;
    size_t pos = 0;

    std::string parse_seq() {
        std::string out;
        while (pos < s.size() && s[pos] != ')') {
            std::string atom;
            char c = s[pos];
            if (c == '(') {
                ++pos;
                atom = parse_seq();
                if (pos >= s.size() || s[pos] != ')') throw MathError("unbalanced '(' in word");
                ++pos;
            } else if (c == '0' || c == '1' || c == '2') {
                atom = std::string(1, c);
                ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
                continue;
            } else {
                throw MathError("bad character '" + std::string(1, c) + "' in word at " + std::to_string(pos));
            }
            if (pos < s.size() && (s[pos] == '{' || s[pos] == '^')) {
                bool brace = s[pos] == '{';
                ++pos;
                size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (start == pos) throw MathError("missing repetition count in word");
                int n = std::stoi(s.substr(start, pos - start));
                if (brace) {
                    if (pos >= s.size() || s[pos] != '}') throw MathError("missing '}' in word");
                    ++pos;
                }
                std::string rep;
                for (int i = 0; i < n; ++i) rep += atom;
                atom = rep;
            }
            out += atom;
        }
        return out;
    }
};

}  // namespace

Word012 parse_word012(const std::string& text) {
    if (text == "ε" || text == "e" || text.empty()) return "";
    SugarParser p{text};
    std::string w = p.parse_seq();
    if (p.pos != text.size()) throw MathError("unbalanced ')' in word");
    return w;
}

Word parse_word01(const std::string& text) {
    Word012 w = parse_word012(text);
    if (w.find('2') != std::string::npos) throw MathError("letter 2 not allowed here: " + text);
    return Word::from_string(w);
}

std::string to_string(const WordPoly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : p.sorted()) {
        bool neg = c < 0;
        Q a = neg ? Q(-c) : c;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        if (a != 1) out += a.get_str() + "*";
        out += w.empty() ? "ε" : w.str();
    }
    return out;
}

}  // namespace gfp
