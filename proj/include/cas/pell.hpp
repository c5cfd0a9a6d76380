#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cas {

struct SqrtContinuedFraction {
    uint64_t d = 0;
    uint64_t a0 = 0;                // floor(sqrt(d))
    std::vector<uint64_t> period;   // minimal period; last element is 2*a0
};

struct PellFundamental {
    uint64_t d = 0;
    mpz_class t;  // t^2 - d*u^2 = 1, minimal positive
    mpz_class u;
};

struct NormRepresentation {
    uint64_t d = 0;
    mpz_class n;
    std::optional<std::pair<mpz_class, mpz_class>> witness;  // x^2 - d y^2 = n
};

// Continued fraction of sqrt(d) for nonsquare d >= 2.
// Throws std::invalid_argument for d <= 1 or perfect squares.
SqrtContinuedFraction cf_expand(uint64_t d);

// Minimal (t, u) with t^2 - d u^2 = 1, via the period-end convergent
// (squared when the period length is odd).
PellFundamental pell_fundamental(uint64_t d);

// Minimal solution of t^2 - d u^2 = -1, when it exists (odd period).
std::optional<std::pair<mpz_class, mpz_class>> negative_pell(uint64_t d);

// Representability of n >= 1 by x^2 - d y^2 over Z, d nonsquare.
// Complete continued-fraction search over all solution classes.
NormRepresentation norm_represents(uint64_t d, uint64_t n);

// x^2 - k^2 y^2 = n for square d = k^2, via divisor pairs of n.
NormRepresentation degenerate_norm(uint64_t d, uint64_t n);

// Solvability of x^2 - d y^2 = n over Z for any d >= 0, n >= 1.
bool norm_solvable(uint64_t d, uint64_t n);

// b y^2 - a x^2 = 1 has an integer solution (a, b squarefree, coprime).
bool eq1_solvable(uint64_t a, uint64_t b);
// c z^2 - b y^2 = 1 has an integer solution (b, c squarefree, coprime).
bool eq2_solvable(uint64_t b, uint64_t c);
// c z^2 - a x^2 = 2 has an integer solution (a, c squarefree, gcd 1 or 2).
bool eq3_solvable(uint64_t a, uint64_t c);

// Persistent cache of fundamental Pell solutions.
// File format: one record per line, "d t u" in decimal, sorted by d.
// Concurrent reads are safe; writes are serialized internally.
class PellCache {
  public:
    PellCache() = default;
    explicit PellCache(std::string path);  // loads if the file exists

    std::optional<PellFundamental> find(uint64_t d) const;
    void insert(const PellFundamental& f);
    // Rewrites the backing file atomically (write temp + rename).
    void save() const;
    size_t size() const { return entries_.size(); }

  private:
    std::string path_;
    std::map<uint64_t, PellFundamental> entries_;
    mutable std::mutex mu_;
};

// Cached variant of pell_fundamental; cache may be null.
PellFundamental pell_fundamental(uint64_t d, PellCache* cache);

}  // namespace cas
