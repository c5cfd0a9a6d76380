#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cas/arith.hpp"
#include "cas/ecmap.hpp"
#include "cas/family.hpp"
#include "cas/pipeline.hpp"
#include "cas/tunnell.hpp"

namespace {

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

int cmd_pipeline(uint64_t bound, const std::string& stages,
                 const std::string& out, unsigned jobs,
                 const std::string& pell_cache) {
    cas::PipelineOptions opts;
    opts.jobs = jobs;
    opts.pell_cache_path = pell_cache;
    cas::StageReport rep = cas::run_pipeline(bound, cas::parse_stages(stages), opts);
    write_or_print(out, cas::report_to_json(rep));
    for (const auto& [name, count] : rep.stage_counts)
        std::cerr << name << ": " << count << "\n";
    return 0;
}

int cmd_search(uint64_t limit, uint64_t bound, const std::string& out) {
    auto sols = cas::search_solutions(limit, bound);
    write_or_print(out, cas::solutions_to_csv(sols));
    std::cerr << sols.size() << " solutions\n";
    return 0;
}

int cmd_family(uint64_t terms, bool full) {
    for (uint64_t m = 0; m < terms; ++m) {
        cas::FamilyTerm t = cas::family_term(m);  // throws if identities fail
        nlohmann::json j;
        j["m"] = m;
        j["digits_a"] = t.a.get_str().size();
        j["digits_n"] = t.n.get_str().size();
        j["identities_verified"] = true;
        j["bound_check"] = cas::bound_check(t);
        if (full) {
            j["x"] = t.x.get_str();
            j["y"] = t.y.get_str();
            j["a"] = t.a.get_str();
            j["n"] = t.n.get_str();
        }
        std::cout << j.dump() << "\n";
    }
    return 0;
}

int cmd_tunnell(uint64_t n) {
    mpz_class d = cas::sfp(mpz_class(static_cast<unsigned long>(n)));
    uint64_t dn = mpz_get_ui(d.get_mpz_t());
    cas::ThetaTables tables = cas::build_all_theta(uint32_t(dn));
    bool ruled_out = cas::tunnell_not_congruent(dn, tables);
    nlohmann::json j;
    j["n"] = n;
    j["squarefree_part"] = dn;
    j["tunnell_not_congruent"] = ruled_out;
    j["candidate"] = !ruled_out;
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_ecmap(uint64_t n) {
    mpz_class nn(static_cast<unsigned long>(n));
    mpz_class a = cas::sfp(nn), b = cas::sfp(nn + 1), c = cas::sfp(nn + 2);
    auto x = cas::integer_sqrt(nn / a).first;
    auto y = cas::integer_sqrt((nn + 1) / b).first;
    auto z = cas::integer_sqrt((nn + 2) / c).first;
    cas::CurvePoint P = cas::map_solution(
        mpz_get_ui(a.get_mpz_t()), mpz_get_ui(b.get_mpz_t()),
        mpz_get_ui(c.get_mpz_t()), nn, x, y, z);
    nlohmann::json j;
    j["n"] = n;
    j["abc"] = {a.get_str(), b.get_str(), c.get_str()};
    j["N"] = P.N.get_str();
    j["X"] = P.X.get_str();
    j["Y"] = P.Y.get_str();
    j["torsion"] = cas::is_torsion(P);
    std::cout << j.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"consecutive almost-square runs: filter pipeline and oracles"};
    app.require_subcommand(1);

    uint64_t bound = 150, limit = 10000000, terms = 4, n = 0;
    std::string stages = "gcd,norm,local,tunnell", out, pell_cache;
    unsigned jobs = 1;
    bool full = false;

    auto* pipe = app.add_subcommand("pipeline", "run the filter pipeline");
    pipe->add_option("--bound", bound, "squarefree-part bound")->capture_default_str();
    pipe->add_option("--stages", stages, "comma-separated stage prefix")->capture_default_str();
    pipe->add_option("--out", out, "report JSON path (default stdout)");
    pipe->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    pipe->add_option("--pell-cache", pell_cache, "persistent Pell solution cache file");

    auto* search = app.add_subcommand("search", "direct search for solutions");
    search->add_option("--limit", limit, "scan n up to this limit")->capture_default_str();
    search->add_option("--bound", bound, "squarefree-part bound")->capture_default_str();
    search->add_option("--out", out, "CSV path (default stdout)");

    auto* fam = app.add_subcommand("family", "verify terms of the infinite family");
    fam->add_option("--terms", terms, "number of terms")->capture_default_str();
    fam->add_flag("--full", full, "include full integer values");

    auto* tun = app.add_subcommand("tunnell", "Tunnell test for sfp(n)");
    tun->add_option("--n", n, "integer to test")->required();

    auto* ec = app.add_subcommand("ecmap", "map the solution at n to its curve point");
    ec->add_option("--n", n, "n with n, n+1, n+2 all almost-square")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (pipe->parsed()) return cmd_pipeline(bound, stages, out, jobs, pell_cache);
        if (search->parsed()) return cmd_search(limit, bound, out);
        if (fam->parsed()) return cmd_family(terms, full);
        if (tun->parsed()) return cmd_tunnell(n);
        if (ec->parsed()) return cmd_ecmap(n);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
