#pragma once

#include <cstdint>
#include <utility>

#include <gmpxx.h>

namespace cas {

// One member of the infinite family with
//   max{sfp(n), sfp(n+1), sfp(n+2)} < n^{1/3}.
struct FamilyTerm {
    uint64_t m = 0;
    mpz_class x;  // x_{8m+7}
    mpz_class y;  // y_{8m+7}
    mpz_class a;  // x / 2
    mpz_class n;  // 4a^3 - 3a - 1
};

// (x_k, y_k) from x_k = 1298 x_{k-1} - x_{k-2} (same for y) with
// x_0 = 4, x_1 = 4936, y_0 = 1, y_1 = 1369. Satisfies x^2 - 13 y^2 = 3.
std::pair<mpz_class, mpz_class> recurrence_term(uint64_t k);

// Checks that x_k mod 32 has period 8 over k = 0..23 with
// x_7 = x_15 = x_23 = 0 (mod 32).
bool verify_mod32_period();

// Term m of the family, with every structural identity verified by exact
// expansion. An identity failure is an internal arithmetic bug.
FamilyTerm family_term(uint64_t m);

// (a+1)^3 < n, plus the structural bounds behind
// sfp(n) <= a-1, sfp(n+1) <= 13a/16, sfp(n+2) <= a+1.
bool bound_check(const FamilyTerm& t);

}  // namespace cas
