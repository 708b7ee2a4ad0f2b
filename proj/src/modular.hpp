#pragma once
#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

namespace gfp::modular {

struct RrefResult {
    int rank = 0;
    std::vector<bool> is_pivot;
    // pivot column -> (free column, entry) of its reduced row
    std::map<int, std::vector<std::pair<int, mpq_class>>> pivot_rows;
};

// Reduced row echelon form of an integer matrix over Q, computed modulo word-size
// primes and lifted by rational reconstruction. Row processing stops once the rank
// reaches stop_rank (pass a negative value to use every row).
RrefResult rational_rref(const std::vector<std::vector<std::pair<int, mpz_class>>>& rows, int ncols,
                         int stop_rank);

}  // namespace gfp::modular
