#include "modular.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>

namespace gfp::modular {

namespace {

constexpr bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

constexpr std::array<uint32_t, 12> make_primes() {
    std::array<uint32_t, 12> out{};
    uint32_t p = 2147483647u;
    for (size_t i = 0; i < out.size(); --p)
        if (is_prime(p)) out[i++] = p;
    return out;
}

constexpr auto kPrimes = make_primes();

uint32_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return uint32_t(r);
}

struct ModResult {
    std::vector<int> pivots;                 // pivot columns, ascending
    std::vector<std::vector<uint32_t>> rref;  // rows aligned with pivots
    std::vector<int> used_rows;
};

template <uint32_t P>
ModResult eliminate(const std::vector<std::vector<std::pair<int, uint32_t>>>& rows, const std::vector<int>& order,
                    int n, int stop_rank) {
    std::vector<std::vector<uint32_t>> store;
    std::vector<int> at(n, -1);
    ModResult res;
    std::vector<uint32_t> r(n);
    for (int idx : order) {
        if (stop_rank >= 0 && int(store.size()) >= stop_rank) break;
        std::fill(r.begin(), r.end(), 0);
        for (const auto& [c, v] : rows[idx]) r[c] = v;
        int lead = -1;
        for (int c = 0; c < n; ++c) {
            if (!r[c]) continue;
            if (at[c] < 0) {
                lead = c;
                break;
            }
            uint64_t f = P - r[c];
            const uint32_t* pr = store[at[c]].data();
            uint32_t* rr = r.data();
            for (int j = c; j < n; ++j) rr[j] = uint32_t((rr[j] + f * pr[j]) % P);
        }
        if (lead < 0) continue;
        uint64_t inv = pow_mod(r[lead], P - 2, P);
        for (int j = lead; j < n; ++j) r[j] = uint32_t(r[j] * inv % P);
        at[lead] = int(store.size());
        store.push_back(r);
        res.used_rows.push_back(idx);
    }
    // back substitution, highest pivot first
    std::vector<int> piv;
    for (int c = 0; c < n; ++c)
        if (at[c] >= 0) piv.push_back(c);
    for (int i = int(piv.size()) - 1; i >= 0; --i) {
        auto& row = store[at[piv[i]]];
        for (size_t k = i + 1; k < piv.size(); ++k) {
            int c = piv[k];
            if (!row[c]) continue;
            uint64_t f = P - row[c];
            const auto& pr = store[at[c]];
            for (int j = c; j < n; ++j) row[j] = uint32_t((row[j] + f * pr[j]) % P);
        }
    }
    res.pivots = piv;
    for (int c : piv) res.rref.push_back(std::move(store[at[c]]));
    return res;
}

template <size_t... I>
ModResult dispatch(size_t k, const std::vector<std::vector<std::pair<int, uint32_t>>>& rows,
                   const std::vector<int>& order, int n, int stop, std::index_sequence<I...>) {
    ModResult out;
    ((k == I ? (out = eliminate<kPrimes[I]>(rows, order, n, stop), 0) : 0), ...);
    return out;
}

bool rational_reconstruct(const mpz_class& a, const mpz_class& m, mpq_class& out) {
    // extended Euclid stopped at the half-size bound
    mpz_class bound;
    mpz_sqrt(bound.get_mpz_t(), mpz_class(m / 2).get_mpz_t());
    mpz_class r0 = m, r1 = a, t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1, r1 = r2, t0 = t1, t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound) return false;
    out = mpq_class(r1, t1);
    out.canonicalize();
    return true;
}

}  // namespace

RrefResult rational_rref(const std::vector<std::vector<std::pair<int, mpz_class>>>& rows, int ncols,
                         int stop_rank) {
    std::vector<int> order(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) order[i] = int(i);
    std::vector<int> ref_pivots, used;
    std::vector<int> free_cols;
    std::vector<mpz_class> residue, modulus_acc;
    mpz_class M = 1;
    std::vector<mpq_class> guess;
    bool have_guess = false;

    for (size_t k = 0; k < kPrimes.size(); ++k) {
        uint32_t p = kPrimes[k];
        std::vector<std::vector<std::pair<int, uint32_t>>> mrows(rows.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (const auto& [c, v] : rows[i]) {
                mpz_class r = v % p;
                if (r < 0) r += p;
                if (r != 0) mrows[i].emplace_back(c, uint32_t(r.get_ui()));
            }
        ModResult mr = dispatch(k, mrows, k == 0 ? order : used, ncols, k == 0 ? stop_rank : -1,
                                std::make_index_sequence<kPrimes.size()>{});
        if (k == 0) {
            ref_pivots = mr.pivots;
            used = mr.used_rows;
            std::vector<bool> piv(ncols, false);
            for (int c : ref_pivots) piv[c] = true;
            for (int c = 0; c < ncols; ++c)
                if (!piv[c]) free_cols.push_back(c);
            residue.assign(ref_pivots.size() * free_cols.size(), 0);
        } else if (mr.pivots != ref_pivots) {
            continue;  // unlucky prime
        }
        size_t nf = free_cols.size();
        if (have_guess) {
            bool agree = true;
            for (size_t i = 0; i < ref_pivots.size() && agree; ++i)
                for (size_t j = 0; j < nf; ++j) {
                    const mpq_class& g = guess[i * nf + j];
                    mpz_class num = g.get_num() % p, den = g.get_den() % p;
                    if (num < 0) num += p;
                    uint64_t lhs = num.get_ui(), rhs = uint64_t(mr.rref[i][free_cols[j]]) * den.get_ui() % p;
                    if (lhs != rhs) {
                        agree = false;
                        break;
                    }
                }
            if (agree) break;
        }
        // CRT update
        for (size_t i = 0; i < ref_pivots.size(); ++i)
            for (size_t j = 0; j < nf; ++j) {
                mpz_class& x = residue[i * nf + j];
                mpz_class a = mr.rref[i][free_cols[j]];
                // x' = x + M * ((a - x) * M^{-1} mod p)
                mpz_class diff = (a - x) % p;
                if (diff < 0) diff += p;
                mpz_class minv;
                mpz_class pp = p;
                mpz_invert(minv.get_mpz_t(), mpz_class(M % p).get_mpz_t(), pp.get_mpz_t());
                mpz_class t = diff * minv % p;
                x += M * t;
            }
        M *= p;
        guess.assign(residue.size(), 0);
        have_guess = true;
        for (size_t i = 0; i < residue.size(); ++i)
            if (!rational_reconstruct(residue[i], M, guess[i])) {
                have_guess = false;
                break;
            }
        if (k + 1 == kPrimes.size()) throw std::runtime_error("rational reconstruction did not stabilize");
    }
    RrefResult out;
    out.rank = int(ref_pivots.size());
    out.is_pivot.assign(ncols, false);
    for (int c : ref_pivots) out.is_pivot[c] = true;
    size_t nf = free_cols.size();
    for (size_t i = 0; i < ref_pivots.size(); ++i) {
        auto& row = out.pivot_rows[ref_pivots[i]];
        for (size_t j = 0; j < nf; ++j)
            if (guess[i * nf + j] != 0) row.emplace_back(free_cols[j], guess[i * nf + j]);
    }
    return out;
}

}  // namespace gfp::modular
