#include "gfp/parse.hpp"

#include <array>
#include <cctype>

namespace gfp {

namespace {

// Intermediate value: a rational prefactor monomial, a constant, or a general element of A.
struct Val {
    enum Kind { Mono, Mzv, A } kind = Mono;
    Q c = 1;
    std::array<int, 4> e{0, 0, 0, 0};  // z, zb, z-1, zb-1
    MzvExpr m;
    AExpr a;
};

AExpr to_A(const Val& v) {
    switch (v.kind) {
        case Val::Mono: return AExpr::monomial(v.e[0], v.e[1], v.e[2], v.e[3]) * v.c;
        case Val::Mzv: return AExpr(sv_constant(reducer().reduce(v.m)));
        case Val::A: return v.a;
    }
    return {};
}

Val to_mzv(const Val& v) {
    Val r;
    r.kind = Val::Mzv;
    r.m = v.kind == Val::Mzv ? v.m : MzvExpr(Word(), v.c);
    return r;
}

bool constant_mono(const Val& v) { return v.kind == Val::Mono && v.e == std::array<int, 4>{0, 0, 0, 0}; }

Val make_A(AExpr a) {
    Val r;
    r.kind = Val::A;
    r.a = std::move(a);
    return r;
}

Val mul(const Val& x, const Val& y) {
    if (x.kind == Val::Mono && y.kind == Val::Mono) {
        Val r = x;
        r.c *= y.c;
        for (int i = 0; i < 4; ++i) r.e[i] += y.e[i];
        return r;
    }
    bool cx = x.kind == Val::Mzv || constant_mono(x), cy = y.kind == Val::Mzv || constant_mono(y);
    if (cx && cy) {
        Val r;
        r.kind = Val::Mzv;
        if (constant_mono(x)) r.m = y.m * x.c;
        else if (constant_mono(y)) r.m = x.m * y.c;
        else r.m = mzv_product(x.m, y.m);
        return r;
    }
    return make_A(to_A(x) * to_A(y));
}

Val add(const Val& x, const Val& y, int sign) {
    if (x.kind == Val::Mono && y.kind == Val::Mono && x.e == y.e) {
        Val r = x;
        r.c += sign * y.c;
        return r;
    }
    bool cx = x.kind == Val::Mzv || constant_mono(x), cy = y.kind == Val::Mzv || constant_mono(y);
    if (cx && cy) {
        Val r = to_mzv(x);
        r.m.add(to_mzv(y).m, Q(sign));
        return r;
    }
    AExpr a = to_A(x);
    a.add(to_A(y), Q(sign));
    return make_A(a);
}

class Parser {
public:
    Parser(const std::string& text) {
        for (size_t i = 0; i < text.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(text[i]))) s_ += text[i], col_.push_back(int(i) + 1);
        col_.push_back(int(text.size()) + 1);
    }

    Parsed run() {
        if (s_.empty()) fail("empty expression");
        Parsed out;
        const std::string marker = "/(z-zb)";
        size_t end = s_.size();
        bool b = s_.size() > marker.size() && s_.compare(s_.size() - marker.size(), marker.size(), marker) == 0;
        if (b) end -= marker.size();
        end_ = end;
        Val v = expr();
        if (pos_ != end_) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        if (b) {
            out.kind = Parsed::B;
            out.a = to_A(v);
        } else if (v.kind == Val::Mzv || constant_mono(v)) {
            out.kind = Parsed::Mzv;
            out.mzv = to_mzv(v).m;
        } else {
            out.kind = Parsed::A;
            out.a = to_A(v);
        }
        return out;
    }

private:
    std::string s_;
    std::vector<int> col_;
    size_t pos_ = 0, end_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, col_[std::min(pos_, col_.size() - 1)]); }
    bool at_end() const { return pos_ >= end_; }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    bool starts(const std::string& t) const { return pos_ + t.size() <= end_ && s_.compare(pos_, t.size(), t) == 0; }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    Val expr() {
        int sign = 1;
        if (peek() == '+' || peek() == '-') sign = s_[pos_++] == '-' ? -1 : 1;
        Val v = term();
        if (sign < 0) v = mul(Val{Val::Mono, Q(-1)}, v);
        while (peek() == '+' || peek() == '-') {
            int sg = s_[pos_++] == '-' ? -1 : 1;
            v = add(v, term(), sg);
        }
        return v;
    }

    Val term() {
        Val v = factor();
        while (peek() == '*' || peek() == '/') {
            char op = s_[pos_++];
            size_t at = pos_;
            Val f = factor();
            if (op == '*') v = mul(v, f);
            else {
                if (f.kind != Val::Mono || f.c == 0) {
                    pos_ = at;
                    fail("can only divide by a nonzero rational prefactor monomial");
                }
                Val inv = f;
                inv.c = 1 / f.c;
                for (int& x : inv.e) x = -x;
                v = mul(v, inv);
            }
        }
        return v;
    }

    Val factor() {
        Val v = atom();
        if (peek() == '^') {
            ++pos_;
            int sign = 1;
            if (peek() == '-' || peek() == '+') sign = s_[pos_++] == '-' ? -1 : 1;
            int n = integer() * sign;
            v = power(v, n);
        }
        return v;
    }

    Val power(const Val& v, int n) {
        if (v.kind == Val::Mono) {
            Val r = v;
            mpz_class num, den;
            mpz_pow_ui(num.get_mpz_t(), v.c.get_num_mpz_t(), std::abs(n));
            mpz_pow_ui(den.get_mpz_t(), v.c.get_den_mpz_t(), std::abs(n));
            if (n < 0 && v.c == 0) fail("zero to a negative power");
            r.c = n >= 0 ? Q(num, den) : Q(den, num);
            r.c.canonicalize();
            for (int& x : r.e) x *= n;
            return r;
        }
        if (n < 0) fail("negative power of a non-monomial");
        Val r{Val::Mono, Q(1)};
        for (int i = 0; i < n; ++i) r = mul(r, v);
        return r;
    }

    int integer() {
        size_t b = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (b == pos_) fail("expected an integer");
        if (pos_ - b > 9) fail("integer too large");
        return std::stoi(s_.substr(b, pos_ - b));
    }

    std::string bracket_word() {
        expect('[');
        size_t b = pos_;
        int depth = 0;
        while (!at_end() && (peek() != ']' || depth)) {
            if (peek() == '(') ++depth;
            if (peek() == ')') --depth;
            ++pos_;
        }
        std::string w = s_.substr(b, pos_ - b);
        expect(']');
        try {
            return parse_word012(w);
        } catch (const MathError& e) {
            pos_ = b;
            fail(e.what());
        }
    }

    Word word01(const std::string& w, size_t at) {
        if (w.find('2') != std::string::npos) {
            pos_ = at;
            fail("letter 2 not allowed in L words");
        }
        return Word::from_string(w);
    }

    Val atom() {
        size_t at = pos_;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            size_t b = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            return Val{Val::Mono, Q(mpz_class(s_.substr(b, pos_ - b)))};
        }
        if (starts("zeta[")) {
            pos_ += 4;
            std::string w = bracket_word();
            Val v;
            v.kind = Val::Mzv;
            for (const auto& [x, c] : expand_letter2(w)) v.m.add(x, c);
            return v;
        }
        if (starts("z(")) {
            pos_ += 2;
            Composition c{integer()};
            while (peek() == ',') {
                ++pos_;
                c.push_back(integer());
            }
            expect(')');
            for (int n : c)
                if (n < 1) {
                    pos_ = at;
                    fail("composition entries must be positive");
                }
            Val v;
            v.kind = Val::Mzv;
            v.m = zeta_of_composition(c);
            return v;
        }
        if (starts("P0[")) {
            pos_ += 2;
            return make_A(AExpr(p_zero(bracket_word())));
        }
        if (starts("P[")) {
            pos_ += 1;
            return make_A(AExpr(P(bracket_word())));
        }
        if (starts("Lb[")) {
            pos_ += 2;
            size_t b = pos_ + 1;
            return make_A(AExpr(sv_term(word01(bracket_word(), b), Word(), mzv_constant(1))));
        }
        if (starts("L[")) {
            pos_ += 1;
            size_t b = pos_ + 1;
            return make_A(AExpr(sv_term(Word(), word01(bracket_word(), b), mzv_constant(1))));
        }
        for (auto [tok, idx] : {std::pair<const char*, int>{"(zb-1)", 3}, {"(z-1)", 2}, {"zb", 1}, {"z", 0}}) {
            std::string t = tok;
            if (starts(t)) {
                pos_ += t.size();
                Val v;
                v.e[idx] = 1;
                return v;
            }
        }
        if (peek() == '(') {
            ++pos_;
            size_t save = end_;
            // find the matching parenthesis so that the inner expression stops there
            int depth = 1;
            size_t j = pos_;
            for (; j < save && depth; ++j) {
                if (s_[j] == '(') ++depth;
                if (s_[j] == ')') --depth;
            }
            if (depth) fail("unbalanced '('");
            end_ = j - 1;
            Val v = expr();
            if (pos_ != end_) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
            end_ = save;
            expect(')');
            return v;
        }
        if (at_end()) fail("unexpected end of expression");
        fail("unexpected '" + std::string(1, peek()) + "'");
    }
};

}  // namespace

AExpr Parsed::as_A() const {
    if (kind == Mzv) return AExpr(sv_constant(reducer().reduce(mzv)));
    if (kind == B) throw MathError("expected an element of A, got a B-element");
    return a;
}

BElement Parsed::as_B() const {
    if (kind != B) throw MathError("expected a B-element ending in /(z-zb)");
    return {a};
}

MzvPoly Parsed::as_constant() const {
    if (kind == Mzv) return reducer().reduce(mzv);
    if (kind == A) {
        MzvPoly r;
        for (const auto& [p, s] : a.terms()) {
            if (!p.h.is_one() || !p.a.is_one()) throw MathError("expected a constant");
            for (const auto& [k, c] : s) {
                if (!k.u.empty() || !k.v.empty()) throw MathError("expected a constant");
                r.add(MzvPoly(k.m, c));
            }
        }
        return r;
    }
    throw MathError("expected a constant");
}

Parsed parse_expression(const std::string& text) { return Parser(text).run(); }

MzvPoly parse_mzv(const std::string& text) { return parse_expression(text).as_constant(); }

std::string print_mzv_expr(const MzvExpr& e) {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : e.sorted()) {
        bool neg = c < 0;
        Q a = neg ? Q(-c) : c;
        if (!out.empty()) out += neg ? "-" : "+";
        else if (neg) out += "-";
        if (w.empty()) out += a.get_str();
        else out += (a == 1 ? "" : a.get_str() + "*") + "zeta[" + w.str() + "]";
    }
    return out;
}

std::string print(const Parsed& p) {
    switch (p.kind) {
        case Parsed::Mzv: return print_mzv_expr(p.mzv);
        case Parsed::A: return to_string(p.a);
        case Parsed::B: return to_string(BElement{p.a});
    }
    return "";
}

}  // namespace gfp
