#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cas/pell.hpp"
#include "cas/tunnell.hpp"

namespace cas {

struct Triple {
    uint64_t a = 0, b = 0, c = 0;
    auto operator<=>(const Triple&) const = default;
};

enum class Stage { gcd, norm, local, tunnell };

// Parses "gcd,norm,local,tunnell" prefixes; throws on anything that is not
// a prefix of the full ordered list.
std::vector<Stage> parse_stages(const std::string& spec);

struct StageReport {
    uint64_t bound = 0;
    // ("enumerate", s^3) followed by one entry per executed stage
    std::vector<std::pair<std::string, uint64_t>> stage_counts;
    std::vector<Triple> survivors;
    // per-stage samples of eliminated triples (stage name, triple)
    std::vector<std::pair<std::string, Triple>> eliminated_examples;
    std::string timestamp;
};

struct Solution {
    uint64_t n = 0;
    uint64_t a = 0, b = 0, c = 0;  // sfp(n), sfp(n+1), sfp(n+2)
    uint64_t x = 0, y = 0, z = 0;  // n = a x^2, n+1 = b y^2, n+2 = c z^2
    bool trivial = false;          // some sfp equals the integer itself
};

struct PipelineOptions {
    unsigned jobs = 1;
    std::string pell_cache_path;  // empty: no persistent cache
    size_t eliminated_samples_per_stage = 3;
};

// Squarefree integers in [1, bound].
std::vector<uint64_t> squarefree_upto(uint64_t bound);

// All s^3 triples of squarefree integers <= bound, in lexicographic order.
std::vector<Triple> enumerate_triples(uint64_t bound);

// gcd(a,b) = 1, gcd(b,c) = 1, gcd(a,c) in {1, 2}
bool gcd_stage(const Triple& t);

// Runs the requested stage prefix over all triples and reports survivor
// counts per stage. Stage order is fixed: gcd, norm, local, tunnell.
StageReport run_pipeline(uint64_t bound, const std::vector<Stage>& stages,
                         const PipelineOptions& opts = {});

// Scans n = 1..limit with an sfp sieve and returns every non-trivial n with
// sfp(n), sfp(n+1), sfp(n+2) <= bound.
std::vector<Solution> search_solutions(uint64_t limit, uint64_t bound);

// Every solution's sfp triple must appear among the report survivors and
// map to a non-torsion curve point.
bool cross_check(const StageReport& report,
                 const std::vector<Solution>& solutions);

std::string report_to_json(const StageReport& report);
std::string solutions_to_csv(const std::vector<Solution>& solutions);

}  // namespace cas
