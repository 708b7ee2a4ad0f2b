#pragma once
#include <optional>
#include <string>

#include "gfp/mzv.hpp"

namespace gfp {

// Key of a flattened coefficient: word times MZV monomial.
struct WM {
    Word w;
    Mono m;
    bool operator==(const WM& o) const { return w == o.w && m == o.m; }
};

struct WMHash {
    size_t operator()(const WM& k) const { return hash_mix(k.w.code * 0x9e3779b97f4a7c15ULL ^ k.m.e); }
};

// Noncommutative series in x0, x1 with reduced MZV coefficients, truncated at word length cap.
class NcSeries {
public:
    using Terms = Lin<WM, WMHash>;

    explicit NcSeries(int cap = 0) : cap_(cap) {}
    static NcSeries one(int cap);
    static NcSeries letter(int a, int cap);
    static NcSeries from_words(const WordPoly& p, int cap);

    int cap() const { return cap_; }
    const Terms& terms() const { return t_; }
    Terms& terms() { return t_; }
    void add(Word w, const MzvPoly& c);
    void add(Word w, Mono m, const Q& c);
    MzvPoly coeff(Word w) const;
    // Part of homogeneous word length n.
    NcSeries part(int n) const;
    bool operator==(const NcSeries& o) const { return t_ == o.t_; }

    NcSeries& operator+=(const NcSeries& o);
    NcSeries& operator-=(const NcSeries& o);
    NcSeries operator-() const;
    friend NcSeries operator+(NcSeries a, const NcSeries& b) { return a += b; }
    friend NcSeries operator-(NcSeries a, const NcSeries& b) { return a -= b; }
    NcSeries scaled(const Q& c) const;
    // Reversed words, optionally with letter signs (-1)^length.
    NcSeries tilde(bool negate_letters = false) const;

    std::string dump() const;

private:
    int cap_;
    Terms t_;
};

NcSeries product(const NcSeries& a, const NcSeries& b, int budget = -1);
NcSeries inverse(const NcSeries& s);
// Homomorphic letter substitution; images must have no constant term.
NcSeries substitute(const NcSeries& s, const NcSeries& img0, const NcSeries& img1);

struct GroupLikeReport {
    bool ok = true;
    std::optional<std::pair<Word, Word>> witness;
};
GroupLikeReport group_like_check(const NcSeries& s);
// Friedrichs criterion.
GroupLikeReport lie_check(const NcSeries& s);

// Drinfeld associator: sum of regularized zeta_w w.
NcSeries associator(int cap);
// The deformed letter x1' of the single-valued generating series.
const NcSeries& x1_prime(int cap);

struct IdentityReport {
    std::string name;
    bool ok;
};
std::vector<IdentityReport> x1_prime_identities(int cap);

}  // namespace gfp
