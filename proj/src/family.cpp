#include "cas/family.hpp"

#include <stdexcept>

namespace cas {

std::pair<mpz_class, mpz_class> recurrence_term(uint64_t k) {
    mpz_class x0 = 4, x1 = 4936, y0 = 1, y1 = 1369;
    if (k == 0) return {x0, y0};
    for (uint64_t i = 1; i < k; ++i) {
        mpz_class xn = 1298 * x1 - x0;
        mpz_class yn = 1298 * y1 - y0;
        x0 = x1; x1 = xn;
        y0 = y1; y1 = yn;
    }
    return {x1, y1};
}

bool verify_mod32_period() {
    for (uint64_t k = 0; k < 16; ++k) {
        auto [xk, yk] = recurrence_term(k);
        auto [xk8, yk8] = recurrence_term(k + 8);
        if (xk % 32 != xk8 % 32) return false;
    }
    for (uint64_t k : {7ul, 15ul, 23ul})
        if (recurrence_term(k).first % 32 != 0) return false;
    return true;
}

FamilyTerm family_term(uint64_t m) {
    FamilyTerm t;
    t.m = m;
    auto [x, y] = recurrence_term(8 * m + 7);
    t.x = x;
    t.y = y;
    if (x * x - 13 * y * y != 3)
        throw std::logic_error("family_term: x^2 - 13 y^2 != 3");
    if (x % 32 != 0)
        throw std::logic_error("family_term: 32 does not divide x");
    t.a = x / 2;
    t.n = 4 * t.a * t.a * t.a - 3 * t.a - 1;
    const mpz_class& a = t.a;
    if (t.n != (a - 1) * (2 * a + 1) * (2 * a + 1))
        throw std::logic_error("family_term: n != (a-1)(2a+1)^2");
    if (t.n + 1 != 13 * a * y * y)
        throw std::logic_error("family_term: n+1 != 13 a y^2");
    if (t.n + 2 != (a + 1) * (2 * a - 1) * (2 * a - 1))
        throw std::logic_error("family_term: n+2 != (a+1)(2a-1)^2");
    return t;
}

bool bound_check(const FamilyTerm& t) {
    const mpz_class& a = t.a;
    if (a < 2) return false;  // guards the degenerate comparison
    // structural sfp bounds need 16 | a (so that 13a/16 is integral)
    if (a % 16 != 0) return false;
    // sfp(n) <= a-1, sfp(n+1) <= 13a/16, sfp(n+2) <= a+1 via the displayed
    // factorizations; the binding bound is a+1
    mpz_class ap1 = a + 1;
    return ap1 * ap1 * ap1 < t.n;
}

}  // namespace cas
