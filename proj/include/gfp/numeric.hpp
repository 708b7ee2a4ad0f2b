#pragma once
#include <boost/multiprecision/mpfr.hpp>
#include <map>
#include <string>
#include <vector>

#include "gfp/graphfn.hpp"

namespace gfp::num {

using Real = boost::multiprecision::mpfr_float;

struct Complex {
    Real re, im;
    Complex() : re(0), im(0) {}
    Complex(Real r, Real i = 0) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r), im(0) {}
    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o);
    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(const Complex& a, const Complex& b);
    Complex operator-() const { return {-re, -im}; }
};
Complex conj(const Complex& z);
Real abs(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex pow(const Complex& z, int n);

// Working precision in decimal digits; applies to all values created afterwards.
struct Context {
    int digits = 40;
    explicit Context(int d = 40);
    Real tolerance() const;  // 10^-digits
};

// Parses "a+bi", "-0.3i", "2".
Complex parse_complex(const std::string& s);
std::string to_decimal(const Real& x, int digits);
std::string to_string(const Complex& z, int digits);

// L_w(z), principal branch (straight path from 0), z not on (-inf,0] or [1,inf).
Complex eval_L(Word w, const Complex& z, const Context& ctx);
// Values for many words at once; the set is closed under prefixes internally.
std::map<Word, Complex> eval_L_many(const std::vector<Word>& words, const Complex& z, const Context& ctx);

// zeta_w for admissible w by path splitting at 1/2.
Real zeta_word_numeric(Word w, const Context& ctx);
Real zeta_numeric(const Composition& c, const Context& ctx);
Real mzv_numeric(const MzvExpr& e, const Context& ctx);
Real mzv_numeric(const MzvPoly& p, const Context& ctx);

Complex eval_sv(const SvExpr& e, const Complex& z, const Context& ctx);
Complex eval_A(const AExpr& e, const Complex& z, const Context& ctx);
// g/(z-zb); on the real axis by a symmetric limit.
Complex eval_B(const BElement& f, const Complex& z, const Context& ctx);

// |e(z0 after one loop) - e(z0)| around 0 or 1 by stepwise series continuation.
Real monodromy_check(const SvExpr& e, int around, const Context& ctx, int steps = 64, double radius = 0.25);

// One-vertex graphical function in d = 2 lambda + 2 by quadrature; lambda > 1, |z| < 1.
Real f2_lambda_quadrature(const Real& lambda, const Complex& z, const Context& ctx);

// Li_k(z) by its series, |z| < 1.
Complex polylog(int k, const Complex& z, const Context& ctx);

}  // namespace gfp::num
