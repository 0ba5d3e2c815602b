#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobext/errors.hpp"
#include "frobext/random_cases.hpp"
#include "frobext/serialize.hpp"
#include "frobext/witt.hpp"

namespace frobext::cli {

namespace {

using json = nlohmann::json;

json big(const BigInt& x)
{
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

json rat(const BigRational& x) { return x.get_str(); }

json group(const FinGenAbGroup& g)
{
    json t = json::array();
    for (const auto& d : g.torsion) t.push_back(big(d));
    return {{"free_rank", g.free_rank}, {"torsion", t}};
}

json zval(const ZValue& z) { return z.defined ? json(z.value.get_str()) : json(nullptr); }

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <class F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return Input;
    } catch (const HypothesisError& e) {
        err << "hypothesis violated: " << e.what() << '\n';
        return Hypothesis;
    } catch (const PrecisionError& e) {
        err << "precision exhausted: " << e.what() << " (needs K >= " << e.required_precision() << ")\n";
        return Precision;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return Failure;
    }
}

// ---------------------------------------------------------------------------
// ext

json ext_json(const GlobalExtReport& r)
{
    json primes = json::array();
    for (const auto& p : r.primes) {
        primes.push_back({{"prime", big(p.prime)},
                          {"ext0", group(p.ext0)},
                          {"ext1", group(p.ext1)},
                          {"ext2", group(p.ext2)},
                          {"z_f", zval(p.z_f)},
                          {"local_rhs", rat(p.local_rhs)},
                          {"local_equal", p.local_equal},
                          {"certified", p.certified}});
    }
    return {{"hom_rank", r.hom.rho},
            {"hom_torsion", big(r.hom.tors_order)},
            {"ext1_order", big(r.ext1_order)},
            {"ext2_cotorsion_order", big(r.ext2_cotors_order)},
            {"discriminant", rat(r.disc)},
            {"chi", rat(r.chi)},
            {"q_chi", big(r.q_chi)},
            {"rho_zeta", r.rho_zeta},
            {"zeta_leading", rat(r.zeta_leading)},
            {"support_ok", r.support_ok},
            {"primes", primes}};
}

void ext_table(const GlobalExtReport& r, std::ostream& out)
{
    out << "Hom      rank " << r.hom.rho << ", torsion " << r.hom.tors_order << '\n'
        << "Ext^1    order " << r.ext1_order << '\n'
        << "Ext^2    cotorsion order " << r.ext2_cotors_order << '\n'
        << "disc     " << r.disc << '\n'
        << "chi      " << r.chi << "  (q^chi = " << r.q_chi << ")\n"
        << "zeta     rho " << r.rho_zeta << ", leading " << r.zeta_leading << '\n';
    if (r.primes.empty()) return;
    out << std::left << std::setw(8) << "prime" << std::setw(16) << "Ext^0" << std::setw(16) << "Ext^1"
        << std::setw(16) << "Ext^2" << std::setw(12) << "z(f)" << "local\n";
    for (const auto& p : r.primes) {
        out << std::setw(8) << p.prime.get_str() << std::setw(16) << p.ext0.to_string() << std::setw(16)
            << p.ext1.to_string() << std::setw(16) << p.ext2.to_string() << std::setw(12) << p.z_f.to_string()
            << (p.local_equal ? "ok" : "MISMATCH") << (p.certified ? "" : " (uncertified)") << '\n';
    }
}

int cmd_ext(const std::string& xf, const std::string& yf, const RunConfig& cfg, std::ostream& out)
{
    Motive x = motive_from_json(read_file(xf));
    Motive y = motive_from_json(read_file(yf));
    GlobalExtReport r = global_ext_orders(x, y);
    if (cfg.json) out << ext_json(r).dump() << '\n';
    else ext_table(r, out);
    return Pass;
}

// ---------------------------------------------------------------------------
// verify-local

struct CaseResult {
    int code = Pass;
    bool pass = false;
    LocalReport rep;
    std::string case_json;
    std::string error;
    BigInt prime, q;
    LocalCase::Side side = LocalCase::Side::L;
};

CaseResult run_case(const LocalCase& c)
{
    CaseResult r;
    r.side = c.side;
    try {
        r.case_json = to_json(c);
        if (c.side == LocalCase::Side::L) {
            r.prime = c.ml->l;
            r.q = c.ml->q;
            r.rep = verify_lca_l(*c.ml, *c.nl);
        } else {
            r.prime = c.mp->ring->p();
            r.q = c.mp->ring->q();
            r.rep = verify_lca_p(*c.mp, *c.np);
        }
        r.pass = r.rep.equal && r.rep.routes_agree;
        r.code = r.pass ? Pass : Failure;
    } catch (const InputError& e) {
        r.code = Input;
        r.error = e.what();
    } catch (const HypothesisError& e) {
        r.code = Hypothesis;
        r.error = e.what();
    } catch (const PrecisionError& e) {
        r.code = Precision;
        r.error = e.what();
    } catch (const std::exception& e) {
        r.code = Failure;
        r.error = e.what();
    }
    return r;
}

struct Selector {
    bool p_side = false;
    BigInt l = 0;
};

Selector parse_prime(const std::string& s)
{
    Selector sel;
    if (s == "p") {
        sel.p_side = true;
        return sel;
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw InputError("--prime takes a prime l or the letter p");
    sel.l = BigInt(s);
    if (mpz_probab_prime_p(sel.l.get_mpz_t(), 30) == 0) throw InputError("--prime " + s + " is not prime");
    return sel;
}

int cmd_verify_local(const std::optional<std::string>& prime, const std::optional<std::string>& case_file,
                     const std::string& save_dir, const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::optional<Selector> sel;
    if (prime) sel = parse_prime(*prime);

    std::vector<CaseResult> results;
    if (case_file) {
        LocalCase c = local_case_from_json(read_file(*case_file));
        if (sel) {
            const bool is_p = c.side == LocalCase::Side::P;
            if (sel->p_side != is_p || (!is_p && sel->l != c.ml->l))
                throw InputError("--prime does not match the case file");
        }
        results.push_back(run_case(c));
    } else {
        if (!sel) throw InputError("--random needs --prime");
        const long n = cfg.cases;
        results.resize(static_cast<std::size_t>(n));
        std::atomic<long> next{0};
        auto worker = [&] {
            for (long i; (i = next.fetch_add(1)) < n;) {
                const auto idx = static_cast<std::uint64_t>(i);
                CaseResult r;
                try {
                    LocalCase c = sel->p_side ? random_local_p(cfg.seed, idx) : random_local_l(cfg.seed, idx, sel->l);
                    r = run_case(c);
                } catch (const std::exception& e) {
                    r.code = Failure;
                    r.error = std::string("case generation: ") + e.what();
                }
                results[static_cast<std::size_t>(i)] = std::move(r);
            }
        };
        unsigned t = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
        t = static_cast<unsigned>(std::min<long>(t, std::max(1L, n)));
        std::vector<std::thread> pool;
        for (unsigned k = 1; k < t; ++k) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
    }

    long passed = 0;
    int code = Pass;
    for (const auto& r : results) {
        if (r.pass) ++passed;
        if (r.code != Pass && r.code != Failure && (code == Pass || code == Failure)) code = r.code;
        else if (r.code == Failure && code == Pass) code = Failure;
    }

    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (r.pass || save_dir.empty() || r.case_json.empty()) continue;
        std::string path = save_dir + "/case-" + std::to_string(cfg.seed) + "-" + std::to_string(i) + ".json";
        std::ofstream f(path);
        if (!f) err << "cannot write " << path << '\n';
        f << r.case_json << '\n';
    }

    if (cfg.json) {
        json cases = json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            json e{{"index", i}, {"pass", r.pass}, {"exit", r.code}};
            if (!r.case_json.empty()) {
                e["side"] = r.side == LocalCase::Side::L ? "l" : "p";
                e["prime"] = big(r.prime);
                e["q"] = big(r.q);
            }
            if (!r.error.empty()) {
                e["error"] = r.error;
            } else {
                e["lhs"] = rat(r.rep.lhs);
                e["rhs"] = rat(r.rep.rhs);
                e["rho"] = r.rep.rho;
                e["z_f"] = zval(r.rep.z_f);
                e["ext2_order"] = big(r.rep.ext2_order);
                e["equal"] = r.rep.equal;
                e["routes_agree"] = r.rep.routes_agree;
                e["detail"] = r.rep.detail;
            }
            if (!r.pass && !r.case_json.empty()) e["case"] = json::parse(r.case_json);
            cases.push_back(e);
        }
        json report{{"cases", cases},
                    {"passed", passed},
                    {"failed", static_cast<long>(results.size()) - passed},
                    {"exit", code}};
        if (!case_file) report["seed"] = cfg.seed;
        out << report.dump() << '\n';
    } else {
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            if (r.pass && results.size() > 1) continue;
            out << "case " << i;
            if (!r.case_json.empty())
                out << "  " << (r.side == LocalCase::Side::L ? "l=" : "p=") << r.prime << " q=" << r.q;
            if (!r.error.empty()) {
                out << "  ERROR " << r.error << '\n';
                continue;
            }
            out << "  lhs " << r.rep.lhs << "  rhs " << r.rep.rhs << "  rho " << r.rep.rho << "  "
                << (r.pass ? "pass" : "FAIL") << "\n    " << r.rep.detail << '\n';
            if (!r.pass) out << "    replay: " << r.case_json << '\n';
        }
        out << passed << "/" << results.size() << " passed\n";
    }
    return code;
}

// ---------------------------------------------------------------------------
// zeta

int cmd_zeta(const std::string& file, std::optional<long> r_opt, const RunConfig& cfg, std::ostream& out)
{
    VarietyCase vc = variety_from_json(read_file(file));
    if (r_opt) vc.r = *r_opt;
    const VarietyDescriptor& v = vc.variety;
    const ZetaFunction z = zeta_function(v, cfg.bound);
    const BigInt points = point_count(v, 1, cfg.bound);
    const GcnReport g = verify_gcn(v, vc.r, cfg.bound);

    if (cfg.json) {
        json factors = json::array();
        for (const auto& [poly, e] : z.factors) {
            json c = json::array();
            for (const auto& x : poly.coeffs()) c.push_back(big(x));
            factors.push_back({{"poly", c}, {"exponent", e}});
        }
        json ranks = json::array(), tors = json::array(), orders = json::array();
        for (long x : g.mot.ranks) ranks.push_back(x);
        for (const auto& x : g.mot.torsion) tors.push_back(big(x));
        for (const auto& x : g.mot.complex_orders) orders.push_back(big(x));
        json report{{"variety", json::parse(to_json(vc))},
                    {"points", big(points)},
                    {"zeta_factors", factors},
                    {"rho", g.zeta.rho},
                    {"leading", rat(g.zeta.leading)},
                    {"chi_times", rat(g.mot.chi_times)},
                    {"chi_O", g.mot.chi_O},
                    {"secondary_euler", g.mot.rho},
                    {"euler", g.mot.euler},
                    {"ranks", ranks},
                    {"torsion", tors},
                    {"complex_orders", orders},
                    {"rhs", rat(g.rhs)},
                    {"parts", {{"a", g.part_a}, {"b", g.part_b}, {"c", g.part_c}, {"d", g.part_d}}},
                    {"equal", g.equal}};
        out << report.dump() << '\n';
    } else {
        out << "points over F_" << v.q << ": " << points << '\n' << "zeta factors:";
        for (const auto& [poly, e] : z.factors)
            if (poly.degree() > 0) out << "  (" << to_string(poly) << ")^" << e;
        out << "\nr = " << vc.r << ": rho " << g.zeta.rho << ", leading " << g.zeta.leading << '\n'
            << "motivic: ranks";
        for (long x : g.mot.ranks) out << ' ' << x;
        out << ", chi_x " << g.mot.chi_times << ", chi_O " << g.mot.chi_O << ", q^chi_O chi_x " << g.rhs << '\n'
            << "parts a-d: " << g.part_a << g.part_b << g.part_c << g.part_d << "  "
            << (g.equal ? "pass" : "FAIL") << '\n';
    }
    return g.equal ? Pass : Failure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Ext groups of Frobenius modules and zeta special values"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "frobext 0.1.0");
    app.add_option("--precision", cfg.precision, "starting p-adic precision K (env FROBEXT_PRECISION)")
        ->check(CLI::Range(4L, 1L << 20));
    app.add_flag("--json", cfg.json, "JSON output");

    std::string xf, yf;
    CLI::App* ext = app.add_subcommand("ext", "local and global Ext data of two motives");
    ext->fallthrough();
    ext->add_option("X", xf, "motive file")->required();
    ext->add_option("Y", yf, "motive file")->required();

    std::optional<std::string> prime, case_file;
    std::string save_dir;
    CLI::App* vl = app.add_subcommand("verify-local", "check the local theorem on random or stored pairs");
    vl->fallthrough();
    vl->add_option("--prime", prime, "l, or p for the crystalline side");
    auto* random = vl->add_option("--random", cfg.cases, "number of random cases")->check(CLI::PositiveNumber);
    auto* cased = vl->add_option("--case", case_file, "case file");
    random->excludes(cased);
    vl->add_option("--seed", cfg.seed, "random seed");
    vl->add_option("--threads", cfg.threads, "worker threads");
    vl->add_option("--save-failures", save_dir, "directory for failing cases");

    std::string variety_file;
    std::optional<long> r_opt;
    CLI::App* zeta = app.add_subcommand("zeta", "zeta special value and motivic cohomology check");
    zeta->fallthrough();
    zeta->add_option("--variety", variety_file, "variety file")->required();
    zeta->add_option("--r", r_opt, "twist (overrides the file)");
    zeta->add_option("--bound", cfg.bound, "point counting bound")->check(CLI::PositiveNumber);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Pass;
    } catch (const CLI::CallForVersion&) {
        out << "frobext 0.1.0\n";
        return Pass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return Input;
    }

    return guarded(err, [&] {
        if (cfg.precision > 0) set_default_precision(cfg.precision);
        if (*ext) return cmd_ext(xf, yf, cfg, out);
        if (*vl) {
            if (!case_file && cfg.cases == 0) throw InputError("verify-local needs --random N or --case FILE");
            return cmd_verify_local(prime, case_file, save_dir, cfg, out, err);
        }
        return cmd_zeta(variety_file, r_opt, cfg, out);
    });
}

} // namespace frobext::cli
