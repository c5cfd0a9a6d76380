#include "cas/arith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cas {

namespace {

// Pollard rho (Brent's variant) on a composite, non-prime-power-checked n.
mpz_class pollard_rho(const mpz_class& n, unsigned long seed) {
    mpz_class x = 2, y = 2, d = 1, c = seed;
    mpz_class t;
    while (d == 1) {
        x = (x * x + c) % n;
        y = (y * y + c) % n;
        y = (y * y + c) % n;
        t = x - y;
        mpz_gcd(d.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    }
    return d;  // may equal n on a bad seed
}

void factor_rec(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        out[n] += 1;
        return;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        factor_rec(r, out);
        factor_rec(r, out);
        return;
    }
    for (unsigned long seed = 1;; ++seed) {
        mpz_class d = pollard_rho(n, seed);
        if (d != n && d != 1) {
            factor_rec(d, out);
            factor_rec(n / d, out);
            return;
        }
    }
}

}  // namespace

Factorization factorize(const mpz_class& n) {
    if (n <= 0) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f;
    f.value = n;
    std::map<mpz_class, unsigned> out;
    mpz_class m = n;
    for (unsigned long p = 2; p <= 1000000ul && m > 1; p += (p == 2 ? 1 : 2)) {
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        out[mpz_class(p)] = e;
        // remaining factors exceed p, so a small remainder is prime
        if (m > 1 && m < mpz_class(p) * p) {
            out[m] += 1;
            m = 1;
        }
    }
    if (m > 1) factor_rec(m, out);
    f.factors.assign(out.begin(), out.end());
    return f;
}

mpz_class sfp(const mpz_class& n) {
    Factorization f = factorize(n);
    mpz_class r = 1;
    for (const auto& [p, e] : f.factors)
        if (e & 1u) r *= p;
    return r;
}

std::pair<mpz_class, bool> integer_sqrt(const mpz_class& n) {
    if (n < 0) throw std::invalid_argument("integer_sqrt: n must be >= 0");
    mpz_class root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    return {root, rem == 0};
}

bool is_perfect_square(const mpz_class& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

SfpTable::SfpTable(uint32_t limit) : limit_(limit) {
    if (limit < 1) throw std::invalid_argument("SfpTable: limit must be >= 1");
    entries_.resize(size_t(limit) + 1);
    for (uint32_t k = 0; k <= limit; ++k) entries_[k] = k;
    for (uint64_t s = 2; s * s <= limit; ++s) {
        uint32_t q = uint32_t(s * s);
        for (uint64_t k = q; k <= limit; k += q) {
            while (entries_[k] % q == 0) entries_[k] /= q;
        }
    }
}

}  // namespace cas
