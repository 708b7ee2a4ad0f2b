#pragma once
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gfp/words.hpp"

namespace gfp {

// Q-combination of symbols zeta_w indexed by 01-words.
using MzvExpr = WordPoly;

// (n1,...,nr), summed over k1 < ... < kr; convergent iff nr >= 2.
using Composition = std::vector<int>;

Word composition_to_word(const Composition& c);
// Word 1 0^{n1-1} ... 1 0^{nr-1}; zeta_w = (-1)^r zeta(n1..nr).
Composition word_to_composition(Word w);
bool is_admissible(Word w);
int composition_weight(const Composition& c);
std::string composition_str(const Composition& c);

// Shuffle regularization with zeta_0 = zeta_1 = 0.
MzvExpr shuffle_regularize(Word w);
MzvExpr shuffle_regularize(const MzvExpr& e);
MzvExpr mzv_product(const MzvExpr& a, const MzvExpr& b);
// Quasi-shuffle of compositions, returned in word form.
MzvExpr stuffle_product(const Composition& a, const Composition& b);
std::vector<std::pair<Composition, Q>> stuffle_compositions(const Composition& a, const Composition& b);
// zeta_w = sign * zeta_{dual}
std::pair<Word, int> duality(Word w);
MzvExpr zeta_of_composition(const Composition& c);

// Monomial in the irreducible generators, four bits of exponent per generator.
struct Mono {
    uint64_t e = 0;
    static constexpr int kMaxGens = 16;
    int exp(int g) const { return int((e >> (4 * g)) & 15); }
    Mono times(Mono o) const;
    bool operator==(const Mono& o) const { return e == o.e; }
    bool operator<(const Mono& o) const;
    int degree() const;
    int weight() const;
    bool is_one() const { return e == 0; }
    static Mono gen(int g) { return Mono{uint64_t(1) << (4 * g)}; }
};

struct MonoHash {
    size_t operator()(const Mono& m) const { return hash_mix(m.e); }
};

// Reduced MZV: polynomial in the irreducible generators with rational coefficients.
using MzvPoly = Lin<Mono, MonoHash>;

MzvPoly operator*(const MzvPoly& a, const MzvPoly& b);
MzvPoly mzv_constant(const Q& c);
std::string to_string(const MzvPoly& p);
int max_weight(const MzvPoly& p);
// Drops every monomial with two or more factors.
MzvPoly mod_products(const MzvPoly& p);
// Drops monomials with a factor whose weight lies in [2, n].
MzvPoly mod_ideal(const MzvPoly& p, int n);
bool is_products_only(const MzvPoly& p);

struct Generator {
    int weight;
    Composition comp;  // represents zeta(comp)
    std::string name() const;
};

struct WeightReport {
    int weight;
    int words;
    int rank;
    int dimension;
    int expected;
    std::vector<std::string> new_generators;
};

// Per-weight double-shuffle reduction tables with an on-disk cache.
class Reducer {
public:
    Reducer(int cap, std::filesystem::path cache_dir);

    int cap() const { return cap_; }
    void set_cap(int cap);
    const std::vector<Generator>& generators();
    // zeta_w for any word (regularized), reduced.
    const MzvPoly& zeta(Word w);
    MzvPoly reduce(const MzvExpr& e);
    MzvPoly reduce_composition(const Composition& c);
    WeightReport report(int weight);
    void ensure(int weight);
    int generator_index(const Composition& c);

private:
    struct Table {
        int rank = 0;
        std::vector<MzvPoly> values;  // indexed by the middle bits of the admissible word
        std::vector<std::string> new_gens;
    };
    void build(int weight);
    bool load(int weight);
    void save(int weight);

    int cap_;
    std::filesystem::path cache_dir_;
    std::vector<Generator> gens_;
    std::map<int, Table> tables_;
    std::unordered_map<Word, MzvPoly, WordHash> zeta_memo_;
    std::recursive_mutex mu_;
};

// Shared reducer configured from GFPERIOD_CACHE and the default cap.
Reducer& reducer();
void configure_reducer(int cap, const std::optional<std::string>& cache_dir);

// Coefficients of 1/(1-t^2-t^3).
int expected_dimension(int weight);

// Relation rows of one weight in word form, each a relation equal to zero.
struct RelationRow {
    MzvExpr row;
    std::string tag;  // shuffle | stuffle | regularized | duality
};
std::vector<RelationRow> relation_rows(int weight);

MzvPoly parse_mzv(const std::string& text);

}  // namespace gfp
