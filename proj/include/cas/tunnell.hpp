#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cas {

// The four ternary forms of Tunnell's criterion, A x^2 + y^2 + C z^2.
enum class TernaryForm : uint32_t {
    f2_1_8 = 0,   // 2x^2 +  y^2 +  8z^2
    f2_1_32 = 1,  // 2x^2 +  y^2 + 32z^2
    f4_1_8 = 2,   // 4x^2 +  y^2 +  8z^2
    f4_1_32 = 3,  // 4x^2 +  y^2 + 32z^2
};

uint32_t form_coeff_a(TernaryForm f);
uint32_t form_coeff_c(TernaryForm f);

// Exact representation counts of one ternary form for 0..limit.
struct ThetaTable {
    TernaryForm form{};
    uint32_t limit = 0;
    std::vector<uint32_t> counts;  // counts[n] = #{(x,y,z) in Z^3 : form = n}
};

// Counts via two unary-theta convolutions; O(limit^{3/2}) time,
// 4*(limit+1) bytes.
ThetaTable build_theta(TernaryForm form, uint32_t limit);

// Binary dump: uint32 form id, uint32 limit, then (limit+1) uint32 counts,
// all little-endian.
void save_theta(const ThetaTable& t, const std::string& path);
ThetaTable load_theta(const std::string& path);

// All four tables, shared read-only by the pipeline.
struct ThetaTables {
    ThetaTable t2_1_8, t2_1_32, t4_1_8, t4_1_32;
};
ThetaTables build_all_theta(uint32_t limit);

// True iff Tunnell's inequality certifies that squarefree N is NOT a
// congruent number. False means the test is inconclusive: N stays a
// candidate. Requires tables covering N (odd N) or N/2 (even N).
// Throws std::invalid_argument for non-squarefree N.
bool tunnell_not_congruent(uint64_t N, const ThetaTables& tables);

// Filter verdict for a triple (a, b, c): applies Tunnell's test to
// sfp(a*b*c). True keeps the triple as a candidate; false eliminates it.
bool congruent_candidate(uint64_t a, uint64_t b, uint64_t c,
                         const ThetaTables& tables);

}  // namespace cas
