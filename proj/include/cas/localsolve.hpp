#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cas {

// Coefficients of the projective curve
//   C : b y^2 - a x^2 = w^2,  c z^2 - b y^2 = w^2
struct QuadricIntersection {
    uint64_t a = 0, b = 0, c = 0;
};

struct PadicWitness {
    uint64_t p = 0;
    unsigned depth = 0;                 // point is taken mod p^depth
    std::array<uint64_t, 4> point{};    // (x, y, z, w), primitive
    bool liftable = false;              // Hensel criterion holds at point
};

// Raised when the lifting search hits its depth cap with live branches,
// or meets a branch shape it cannot enumerate. Never observed for
// squarefree coefficients <= 150; kept as a hard failure rather than a guess.
struct IndeterminateLocalSolvability : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Decides C(Q_p) != {} by enumerating primitive points mod p and lifting
// residue classes until the two-form Hensel criterion (some 2x2 Jacobian
// minor of valuation t at a point mod p^k with k > 2t) accepts a point or
// every branch dies.
bool is_locally_solvable(const QuadricIntersection& q, uint64_t p,
                         PadicWitness* witness = nullptr);

// Conjunction of is_locally_solvable over the distinct primes dividing 2abc.
bool locally_solvable_everywhere(const QuadricIntersection& q);

// Distinct primes dividing 2abc, ascending.
std::vector<uint64_t> relevant_primes(const QuadricIntersection& q);

}  // namespace cas
