#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cas {

struct Factorization {
    mpz_class value;
    // (prime, exponent), primes strictly increasing
    std::vector<std::pair<mpz_class, unsigned>> factors;
};

// Prime factorization of n >= 1. Trial division up to 10^6, then
// Miller-Rabin + Pollard rho for any remaining cofactor.
// Throws std::invalid_argument for n <= 0.
Factorization factorize(const mpz_class& n);

// Squarefree part of n: the smallest a > 0 with a | n and n/a a square.
mpz_class sfp(const mpz_class& n);

// floor(sqrt(n)) and whether n is a perfect square. Throws for n < 0.
std::pair<mpz_class, bool> integer_sqrt(const mpz_class& n);

bool is_perfect_square(const mpz_class& n);

// sfp(k) for all 1 <= k <= limit, built by dividing out squares
// (no per-entry factorization). Entry 0 is unused.
// Memory: 4 bytes per entry, so limit is bounded by available RAM
// (about 4*limit bytes; limit must also fit in uint32).
class SfpTable {
  public:
    explicit SfpTable(uint32_t limit);

    uint32_t limit() const { return limit_; }
    uint32_t operator[](uint32_t k) const { return entries_[k]; }

  private:
    uint32_t limit_;
    std::vector<uint32_t> entries_;
};

}  // namespace cas
