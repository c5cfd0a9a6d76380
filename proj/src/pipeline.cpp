#include "cas/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cas/arith.hpp"
#include "cas/ecmap.hpp"
#include "cas/localsolve.hpp"

namespace cas {

namespace {

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

bool is_square_u64(uint64_t n) {
    mpz_class m(static_cast<unsigned long>(n));
    return mpz_perfect_square_p(m.get_mpz_t());
}

// Runs fn(i) for i in [0, count) on `jobs` threads; fn must only touch
// its own slot of any shared output.
void parallel_for(size_t count, unsigned jobs, const std::function<void(size_t)>& fn) {
    if (jobs <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (unsigned j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

// Memoized solvability of the three reduced norm equations over the pairs
// that actually occur at a given bound.
class NormStage {
  public:
    NormStage(const std::vector<Triple>& triples, unsigned jobs,
              PellCache* cache) {
        std::set<std::pair<uint64_t, uint64_t>> eq12, eq3;
        for (const Triple& t : triples) {
            eq12.insert({t.a, t.b});
            eq12.insert({t.b, t.c});
            eq3.insert({t.a, t.c});
        }
        std::vector<std::pair<uint64_t, uint64_t>> p12(eq12.begin(), eq12.end());
        std::vector<std::pair<uint64_t, uint64_t>> p3(eq3.begin(), eq3.end());
        std::vector<char> r12(p12.size()), r3(p3.size());
        parallel_for(p12.size(), jobs, [&](size_t i) {
            auto [p, q] = p12[i];
            if (cache && !is_square_u64(p * q)) pell_fundamental(p * q, cache);
            r12[i] = eq1_solvable(p, q);
        });
        parallel_for(p3.size(), jobs, [&](size_t i) {
            auto [a, c] = p3[i];
            // A square discriminant ac admits no real quadratic norm test;
            // such triples pass through and later stages decide.
            r3[i] = is_square_u64(a * c) ? true : eq3_solvable(a, c);
        });
        for (size_t i = 0; i < p12.size(); ++i) eq12_[p12[i]] = r12[i];
        for (size_t i = 0; i < p3.size(); ++i) eq3_[p3[i]] = r3[i];
    }

    bool pass(const Triple& t) const {
        return eq12_.at({t.a, t.b}) && eq12_.at({t.b, t.c}) &&
               eq3_.at({t.a, t.c});
    }

  private:
    std::map<std::pair<uint64_t, uint64_t>, bool> eq12_, eq3_;
};

}  // namespace

std::vector<Stage> parse_stages(const std::string& spec) {
    static const std::vector<std::pair<std::string, Stage>> order = {
        {"gcd", Stage::gcd},
        {"norm", Stage::norm},
        {"local", Stage::local},
        {"tunnell", Stage::tunnell},
    };
    std::vector<std::string> names;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) names.push_back(item);
    if (names.size() > order.size())
        throw std::invalid_argument("parse_stages: too many stages");
    std::vector<Stage> out;
    for (size_t i = 0; i < names.size(); ++i) {
        if (names[i] != order[i].first)
            throw std::invalid_argument(
                "parse_stages: stages must be a prefix of gcd,norm,local,tunnell");
        out.push_back(order[i].second);
    }
    return out;
}

std::vector<uint64_t> squarefree_upto(uint64_t bound) {
    std::vector<char> sf(bound + 1, 1);
    for (uint64_t s = 2; s * s <= bound; ++s)
        for (uint64_t k = s * s; k <= bound; k += s * s) sf[k] = 0;
    std::vector<uint64_t> out;
    for (uint64_t k = 1; k <= bound; ++k)
        if (sf[k]) out.push_back(k);
    return out;
}

std::vector<Triple> enumerate_triples(uint64_t bound) {
    if (bound < 1) throw std::invalid_argument("enumerate_triples: bound >= 1");
    std::vector<uint64_t> sf = squarefree_upto(bound);
    std::vector<Triple> out;
    out.reserve(sf.size() * sf.size() * sf.size());
    for (uint64_t a : sf)
        for (uint64_t b : sf)
            for (uint64_t c : sf) out.push_back({a, b, c});
    return out;
}

bool gcd_stage(const Triple& t) {
    if (gcd_u64(t.a, t.b) != 1 || gcd_u64(t.b, t.c) != 1) return false;
    uint64_t g = gcd_u64(t.a, t.c);
    return g == 1 || g == 2;
}

StageReport run_pipeline(uint64_t bound, const std::vector<Stage>& stages,
                         const PipelineOptions& opts) {
    StageReport rep;
    rep.bound = bound;
    rep.timestamp = utc_timestamp();

    std::optional<PellCache> cache;
    if (!opts.pell_cache_path.empty()) cache.emplace(opts.pell_cache_path);

    std::vector<Triple> live = enumerate_triples(bound);
    rep.stage_counts.emplace_back("enumerate", live.size());

    auto run_filter = [&](const std::string& name,
                          const std::function<bool(const Triple&)>& keep) {
        std::vector<Triple> next;
        size_t sampled = 0;
        for (const Triple& t : live) {
            if (keep(t)) {
                next.push_back(t);
            } else if (sampled < opts.eliminated_samples_per_stage) {
                rep.eliminated_examples.emplace_back(name, t);
                ++sampled;
            }
        }
        live = std::move(next);
        rep.stage_counts.emplace_back(name, live.size());
    };

    for (Stage s : stages) {
        switch (s) {
            case Stage::gcd:
                run_filter("gcd", gcd_stage);
                break;
            case Stage::norm: {
                NormStage ns(live, opts.jobs, cache ? &*cache : nullptr);
                run_filter("norm", [&](const Triple& t) { return ns.pass(t); });
                break;
            }
            case Stage::local: {
                std::vector<char> ok(live.size());
                std::vector<std::string> fail(live.size());
                parallel_for(live.size(), opts.jobs, [&](size_t i) {
                    const Triple& t = live[i];
                    try {
                        ok[i] = locally_solvable_everywhere({t.a, t.b, t.c});
                    } catch (const IndeterminateLocalSolvability& e) {
                        fail[i] = e.what();
                    }
                });
                for (size_t i = 0; i < live.size(); ++i)
                    if (!fail[i].empty()) {
                        std::ostringstream os;
                        os << "local stage indeterminate at triple ("
                           << live[i].a << "," << live[i].b << "," << live[i].c
                           << "): " << fail[i];
                        throw std::runtime_error(os.str());
                    }
                size_t idx = 0;
                run_filter("local",
                           [&](const Triple&) { return ok[idx++] != 0; });
                break;
            }
            case Stage::tunnell: {
                ThetaTables tables =
                    build_all_theta(uint32_t(bound * bound * bound));
                run_filter("tunnell", [&](const Triple& t) {
                    return congruent_candidate(t.a, t.b, t.c, tables);
                });
                break;
            }
        }
    }
    if (cache) cache->save();
    rep.survivors = std::move(live);
    return rep;
}

std::vector<Solution> search_solutions(uint64_t limit, uint64_t bound) {
    if (limit + 2 > 0xFFFFFFFFull)
        throw std::invalid_argument("search_solutions: limit exceeds sieve capacity");
    SfpTable table(uint32_t(limit + 2));
    std::vector<Solution> out;
    for (uint64_t n = 1; n <= limit; ++n) {
        uint64_t a = table[n], b = table[n + 1], c = table[n + 2];
        if (a > bound || b > bound || c > bound) continue;
        if (a == n || b == n + 1 || c == n + 2) continue;  // trivial
        Solution s;
        s.n = n;
        s.a = a; s.b = b; s.c = c;
        auto root = [](uint64_t v) {
            mpz_class m(static_cast<unsigned long>(v));
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
            return mpz_get_ui(r.get_mpz_t());
        };
        s.x = root(n / a);
        s.y = root((n + 1) / b);
        s.z = root((n + 2) / c);
        s.trivial = false;
        out.push_back(s);
    }
    return out;
}

bool cross_check(const StageReport& report,
                 const std::vector<Solution>& solutions) {
    std::set<Triple> surv(report.survivors.begin(), report.survivors.end());
    for (const Solution& s : solutions) {
        if (!surv.count({s.a, s.b, s.c})) return false;
        if (!nontorsion_implies_candidate(
                s.a, s.b, s.c, mpz_class(static_cast<unsigned long>(s.n)),
                mpz_class(static_cast<unsigned long>(s.x)),
                mpz_class(static_cast<unsigned long>(s.y)),
                mpz_class(static_cast<unsigned long>(s.z))))
            return false;
    }
    return true;
}

std::string report_to_json(const StageReport& report) {
    nlohmann::json j;
    j["bound"] = report.bound;
    auto& sc = j["stage_counts"] = nlohmann::json::array();
    for (const auto& [name, count] : report.stage_counts)
        sc.push_back({name, count});
    auto& sv = j["survivors"] = nlohmann::json::array();
    for (const Triple& t : report.survivors) sv.push_back({t.a, t.b, t.c});
    auto& el = j["eliminated_examples"] = nlohmann::json::array();
    for (const auto& [name, t] : report.eliminated_examples)
        el.push_back({name, {t.a, t.b, t.c}});
    j["timestamp"] = report.timestamp;
    return j.dump(2) + "\n";
}

std::string solutions_to_csv(const std::vector<Solution>& solutions) {
    std::ostringstream os;
    os << "n,sfp(n),sfp(n+1),sfp(n+2),x,y,z\n";
    for (const Solution& s : solutions)
        os << s.n << ',' << s.a << ',' << s.b << ',' << s.c << ',' << s.x
           << ',' << s.y << ',' << s.z << '\n';
    return os.str();
}

}  // namespace cas
