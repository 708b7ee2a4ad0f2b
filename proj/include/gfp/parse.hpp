#pragma once
#include <string>

#include "gfp/ratfield.hpp"

namespace gfp {

struct ParseError : MathError {
    int column;
    ParseError(const std::string& msg, int col)
        : MathError("syntax error at column " + std::to_string(col) + ": " + msg), column(col) {}
};

// Result of parsing: a constant (MzvExpr), an element of A, or a B-element.
struct Parsed {
    enum Kind { Mzv, A, B };
    Kind kind = Mzv;
    MzvExpr mzv;
    AExpr a;  // numerator for B

    AExpr as_A() const;  // constants promoted after reduction
    BElement as_B() const;
    MzvPoly as_constant() const;  // reduced; throws unless the value is constant
};

Parsed parse_expression(const std::string& text);

// zeta[w] form.
std::string print_mzv_expr(const MzvExpr& e);
std::string print(const Parsed& p);

}  // namespace gfp
