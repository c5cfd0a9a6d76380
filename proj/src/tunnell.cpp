#include "cas/tunnell.hpp"

#include <cstdio>
#include <stdexcept>

#include "cas/arith.hpp"

namespace cas {

uint32_t form_coeff_a(TernaryForm f) {
    return (f == TernaryForm::f2_1_8 || f == TernaryForm::f2_1_32) ? 2 : 4;
}

uint32_t form_coeff_c(TernaryForm f) {
    return (f == TernaryForm::f2_1_8 || f == TernaryForm::f4_1_8) ? 8 : 32;
}

ThetaTable build_theta(TernaryForm form, uint32_t limit) {
    if (limit < 1) throw std::invalid_argument("build_theta: limit must be >= 1");
    const uint64_t A = form_coeff_a(form), C = form_coeff_c(form);
    ThetaTable t;
    t.form = form;
    t.limit = limit;

    // w[m] = #{(x,z) : A x^2 + C z^2 = m}
    std::vector<uint32_t> w;
    try {
        w.assign(size_t(limit) + 1, 0);
        t.counts.assign(size_t(limit) + 1, 0);
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("build_theta: cannot allocate counts");
    }
    for (uint64_t x = 0; A * x * x <= limit; ++x) {
        uint32_t mx = x ? 2 : 1;
        for (uint64_t z = 0; A * x * x + C * z * z <= limit; ++z)
            w[A * x * x + C * z * z] += mx * (z ? 2 : 1);
    }
    // counts[n] = sum_y w[n - y^2]
    uint32_t* counts = t.counts.data();
    const uint32_t* wp = w.data();
    for (uint64_t n = 0; n <= limit; ++n) counts[n] = wp[n];
    for (uint64_t y = 1; y * y <= limit; ++y) {
        uint64_t y2 = y * y;
        uint64_t len = uint64_t(limit) + 1 - y2;
        uint32_t* dst = counts + y2;
        for (uint64_t m = 0; m < len; ++m) dst[m] += 2 * wp[m];
    }
    return t;
}

void save_theta(const ThetaTable& t, const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("save_theta: cannot open " + path);
    uint32_t hdr[2] = {uint32_t(t.form), t.limit};
    std::fwrite(hdr, sizeof(uint32_t), 2, f);
    std::fwrite(t.counts.data(), sizeof(uint32_t), t.counts.size(), f);
    std::fclose(f);
}

ThetaTable load_theta(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("load_theta: cannot open " + path);
    uint32_t hdr[2];
    if (std::fread(hdr, sizeof(uint32_t), 2, f) != 2) {
        std::fclose(f);
        throw std::runtime_error("load_theta: truncated header in " + path);
    }
    ThetaTable t;
    t.form = TernaryForm(hdr[0]);
    t.limit = hdr[1];
    t.counts.resize(size_t(t.limit) + 1);
    size_t got = std::fread(t.counts.data(), sizeof(uint32_t), t.counts.size(), f);
    std::fclose(f);
    if (got != t.counts.size())
        throw std::runtime_error("load_theta: truncated data in " + path);
    return t;
}

ThetaTables build_all_theta(uint32_t limit) {
    ThetaTables t;
    t.t2_1_8 = build_theta(TernaryForm::f2_1_8, limit);
    t.t2_1_32 = build_theta(TernaryForm::f2_1_32, limit);
    // the 4x^2 tables are only consulted at N/2
    uint32_t half = limit / 2 > 0 ? limit / 2 : 1;
    t.t4_1_8 = build_theta(TernaryForm::f4_1_8, half);
    t.t4_1_32 = build_theta(TernaryForm::f4_1_32, half);
    return t;
}

bool tunnell_not_congruent(uint64_t N, const ThetaTables& tables) {
    if (N < 1) throw std::invalid_argument("tunnell_not_congruent: N must be >= 1");
    if (sfp(mpz_class(static_cast<unsigned long>(N))) != mpz_class(static_cast<unsigned long>(N)))
        throw std::invalid_argument("tunnell_not_congruent: N must be squarefree");
    if (N % 2 == 1) {
        if (N > tables.t2_1_8.limit || N > tables.t2_1_32.limit)
            throw std::invalid_argument("tunnell_not_congruent: tables too small");
        return 2 * uint64_t(tables.t2_1_32.counts[N]) !=
               uint64_t(tables.t2_1_8.counts[N]);
    }
    uint64_t M = N / 2;
    if (M > tables.t4_1_8.limit || M > tables.t4_1_32.limit)
        throw std::invalid_argument("tunnell_not_congruent: tables too small");
    return 2 * uint64_t(tables.t4_1_32.counts[M]) !=
           uint64_t(tables.t4_1_8.counts[M]);
}

bool congruent_candidate(uint64_t a, uint64_t b, uint64_t c,
                         const ThetaTables& tables) {
    uint64_t abc = a * b * c;
    mpz_class d = sfp(mpz_class(static_cast<unsigned long>(abc)));
    return !tunnell_not_congruent(mpz_get_ui(d.get_mpz_t()), tables);
}

}  // namespace cas
