#include "cas/ecmap.hpp"

#include <stdexcept>

namespace cas {

bool on_curve(const CurvePoint& P) {
    if (P.at_infinity) return true;
    return P.Y * P.Y == P.X * P.X * P.X - P.N * P.N * P.X;
}

CurvePoint map_solution(uint64_t a, uint64_t b, uint64_t c, const mpz_class& n,
                        const mpz_class& x, const mpz_class& y,
                        const mpz_class& z) {
    if (n < 1) throw std::invalid_argument("map_solution: n must be positive");
    if (n != a * x * x || n + 1 != b * y * y || n + 2 != c * z * z)
        throw std::invalid_argument(
            "map_solution: (a,b,c,x,y,z) do not solve the system at n");
    CurvePoint P;
    P.N = mpz_class(static_cast<unsigned long>(a)) * b * c;
    P.X = (n + 1) * P.N;
    P.Y = P.N * P.N * x * y * z;
    if (!on_curve(P)) throw std::logic_error("map_solution: image off curve");
    return P;
}

bool is_torsion(const CurvePoint& P) {
    if (P.at_infinity) return true;
    if (P.Y != 0) return false;
    return P.X == 0 || P.X == P.N || P.X == -P.N;
}

bool nontorsion_implies_candidate(uint64_t a, uint64_t b, uint64_t c,
                                  const mpz_class& n, const mpz_class& x,
                                  const mpz_class& y, const mpz_class& z) {
    CurvePoint P = map_solution(a, b, c, n, x, y, z);
    if (P.Y == 0) throw std::logic_error("nontorsion_implies_candidate: Y = 0");
    return !is_torsion(P);
}

}  // namespace cas
