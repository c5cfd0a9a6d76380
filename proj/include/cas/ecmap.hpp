#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace cas {

// Integral point on E : Y^2 = X^3 - N^2 X, N = abc.
struct CurvePoint {
    mpz_class N;
    mpz_class X;
    mpz_class Y;
    bool at_infinity = false;
};

bool on_curve(const CurvePoint& P);

// The map from a solution n = a x^2, n+1 = b y^2, n+2 = c z^2 to the
// integral point ((n+1) abc, (abc)^2 xyz) on E.
// Throws std::invalid_argument if the three defining equations fail.
CurvePoint map_solution(uint64_t a, uint64_t b, uint64_t c, const mpz_class& n,
                        const mpz_class& x, const mpz_class& y,
                        const mpz_class& z);

// True iff P is one of the four points of finite order:
// infinity, (0,0), (N,0), (-N,0).
bool is_torsion(const CurvePoint& P);

// Maps the solution and checks Y != 0, so the image has infinite order and
// the curve has positive rank. Returns true; throws on invalid input.
bool nontorsion_implies_candidate(uint64_t a, uint64_t b, uint64_t c,
                                  const mpz_class& n, const mpz_class& x,
                                  const mpz_class& y, const mpz_class& z);

}  // namespace cas
