// lt: elliptic-curve Frobenius statistics toolkit.
//
// Subcommands:
//   ap        build the a_p cache CSV for a curve
//   count     counting functions and reports (PEa, PEk, DE, pi_C, smoothed)
//   verify    exact verification suites; exit 1 on any failure
//   groups    enumerated subgroup/set cardinalities for one ell (and d)
//   rayclass  ray class group orders
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error.
// Convention: a_p = p + 1 - #E(F_p).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lt/chebotarev.hpp"
#include "lt/classfn.hpp"

using nlohmann::json;
using namespace lt;

namespace {

i64 parse_x(const std::string& s)
{
    // accepts 1000000 or 1e6 style
    double v = std::strtod(s.c_str(), nullptr);
    if (v < 2 || v > 2e9)
        throw domain_error("x out of range [2, 2e9]: " + s);
    return i64(v + 0.5);
}

std::pair<i64, i64> parse_curve(const std::string& s)
{
    i64 A, B;
    char comma;
    std::istringstream in(s);
    if (!(in >> A >> comma >> B) || comma != ',')
        throw domain_error("curve must be A,B: " + s);
    return {A, B};
}

std::string default_cache_path(i64 A, i64 B, i64 x)
{
    const char* dir = std::getenv("LT_CACHE_DIR");
    std::string base = dir ? std::string(dir) : std::string(".");
    char buf[128];
    std::snprintf(buf, sizeof buf, "/ap_%lld_%lld_%lld.csv", (long long)A,
                  (long long)B, (long long)x);
    return base + buf;
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file " + out_path);
    f << text;
    if (!f)
        throw std::runtime_error("write failed for " + out_path);
}

// ---- count helpers ------------------------------------------------------

ClassPred build_pred(const std::string& kind, i64 ell, i64 a, i64 d0)
{
    if (kind == "full")
        return [](i64, i64) { return true; };
    if (kind == "det")
        return [d0, ell](i64, i64 dt) { return dt == ((d0 % ell) + ell) % ell; };
    if (kind == "trace")
        return [a, ell](i64 t, i64) { return t == ((a % ell) + ell) % ell; };
    if (kind == "cset") {
        std::vector<bool> sq(size_t(ell), false);
        for (i64 r = 0; r < ell; ++r)
            sq[size_t(r * r % ell)] = true;
        i64 am = ((a % ell) + ell) % ell;
        return [am, ell, sq](i64 t, i64 dt) {
            if (t != am)
                return false;
            return bool(sq[size_t(((t * t - 4 * dt) % ell + ell) % ell)]);
        };
    }
    throw domain_error("unknown predicate kind: " + kind);
}

// ---- verify suites ------------------------------------------------------

struct SuiteResult {
    std::string id;
    std::string what;
    bool pass;
};

SuiteResult suite_borel_cardinalities(const std::vector<int>& ells, bool fault)
{
    bool ok = true;
    for (int ell : ells) {
        GL2Table g = enumerate_gl2(ell);
        i64 l = ell;
        auto B = borel_set(g);
        auto U = unipotent_set(g);
        auto H = equal_eigenvalue_set(g);
        ok = ok && i64(g.size()) == gl2_order(l);
        ok = ok && i64(B.size()) == (l - 1) * (l - 1) * l;
        ok = ok && i64(U.size()) == l + (fault ? 1 : 0);
        ok = ok && i64(B.size() / U.size()) == (l - 1) * (l - 1);
        ok = ok && i64(B.size() / H.size()) == l - 1;
        auto cb = [&](i64 a) {
            std::vector<int32_t> CB;
            for (int32_t x : set_C_a(g, a))
                if (g.mat(x).c == 0)
                    CB.push_back(x);
            return CB;
        };
        ok = ok && quotient_image_count(g, cb(0), U, B) == l - 1;
        ok = ok && quotient_image_count(g, cb(1), U, B) == l - 2;
        ok = ok && quotient_image_count(g, cb(0), H, B) == 1;
    }
    return {"4.4", "GL2 Borel-chain cardinalities by enumeration", ok};
}

SuiteResult suite_mixed_cardinalities(const std::vector<std::pair<i64, i64>>& dl)
{
    bool ok = true;
    for (auto [d, ell] : dl) {
        try {
            MixedGroup mg = mixed_group(d, ell);
            i64 l = ell;
            int w = mg.q.w;
            ok = ok && i64(mg.size()) == (l - 1) * (l - 1) / w * l * (l - 1) * (l + 1);
            MixedSets s = set_Ccal(mg); // throws if normality/stability fail
            ok = ok && i64(s.CB.size()) <= 2 * (l - 1) * (l - 1) * l;
            ok = ok && s.Cprime == i64(s.CB.size()) / i64(s.Ucal.size());
        } catch (const std::exception&) {
            ok = false;
        }
    }
    return {"5.5", "mixed-group set cardinalities and quotient stability", ok};
}

SuiteResult suite_functoriality(int nrand)
{
    bool ok = true;
    std::mt19937_64 rng(2026);
    try {
        struct Probe {
            FiniteGroupTable G;
            std::vector<int> H;
        };
        std::vector<Probe> probes;
        probes.push_back({s3_table(), {0, 4, 5}});
        {
            GL2Table g = enumerate_gl2(3);
            std::vector<int32_t> all(size_t(g.size()));
            for (int i = 0; i < g.size(); ++i)
                all[size_t(i)] = i;
            DenseSubgroup ds = dense_subgroup(g, all);
            FiniteGroupTable G = make_group_table(int(ds.members.size()), ds.mul);
            std::vector<int> H;
            for (int i = 0; i < g.size(); ++i)
                if (g.mat(i).c == 0)
                    H.push_back(i);
            probes.push_back({std::move(G), std::move(H)});
        }
        for (auto& pr : probes) {
            ClassFunction one(size_t(pr.G.n), CRat(Rational(1)));
            auto classes = conjugacy_classes(pr.G);
            for (int iter = 0; iter < nrand && ok; ++iter) {
                ClassFunction phi(size_t(pr.G.n));
                for (const auto& cls : classes) {
                    Rational v(i64(rng() % 9) - 4, 1 + i64(rng() % 3));
                    for (int x : cls)
                        phi[size_t(x)] = CRat(v);
                }
                ok = ok
                     && inner_product(pr.G, induce(pr.G, pr.H, phi), one)
                            == inner_product_on(pr.G, pr.H, phi, one);
            }
        }
    } catch (const std::exception&) {
        ok = false;
    }
    return {"2.7", "induction and Frobenius reciprocity, exact rationals", ok};
}

SuiteResult suite_rayclass()
{
    bool ok = true;
    for (i64 d = -3; d >= -24; --d) {
        if (!is_fundamental_discriminant(d))
            continue;
        for (i64 m = 5; m <= 10; ++m)
            ok = ok && ray_class_order(d, m) == ray_class_order_enumerated(d, m);
    }
    return {"3.2", "ray class orders: exact-sequence formula vs ideal enumeration",
            ok};
}

SuiteResult suite_mixed_frobenius(const EllipticCurve& E, i64 d, i64 ell, i64 x)
{
    bool ok = true;
    try {
        ApTable t = build_ap_table(E, x);
        MixedCheckReport mc = mixed_frobenius_check(t, d, ell, x);
        ok = mc.violations == 0 && mc.checked > 0;
    } catch (const std::exception&) {
        ok = false;
    }
    return {"3.5", "trace membership and norm compatibility via Cornacchia", ok};
}

// ---- subcommands --------------------------------------------------------

int cmd_ap(i64 A, i64 B, i64 x, std::string out, int shards)
{
    EllipticCurve E = make_curve(A, B);
    ApTable t;
    if (x < 3) { // no odd primes of good reduction below 3
        t.curve = E;
        t.x = x;
    } else {
        t = build_ap_table(E, x, shards);
    }
    if (out.empty())
        out = default_cache_path(A, B, x);
    write_ap_csv(t, out);
    std::fprintf(stderr, "wrote %zu records to %s\n", t.records.size(),
                 out.c_str());
    return 0;
}

ApTable load_or_compute(i64 A, i64 B, i64 x, const std::string& cache,
                        bool compute)
{
    EllipticCurve E = make_curve(A, B);
    if (compute)
        return build_ap_table(E, x);
    std::string path = cache.empty() ? default_cache_path(A, B, x) : cache;
    std::ifstream probe(path);
    if (!probe)
        throw domain_error("cache file not found: " + path
                           + " (pass --compute to build the table in memory)");
    ApTable t;
    t.curve = E;
    t.x = x;
    t.records = read_ap_csv(path);
    if (!t.records.empty() && t.records.back().p > x)
        throw domain_error("cache extends past x; rebuild with matching --x");
    return t;
}

json report_json(const CountReport& r)
{
    return json::parse(r.to_json());
}

int cmd_count(const std::string& kind, i64 A, i64 B, i64 x, i64 a, i64 d,
              i64 ell, bool inclusive, const std::string& pred_kind, i64 d0,
              const std::string& window, double c1, double c2,
              const std::string& xs, const std::string& format,
              const std::string& out, const std::string& cache, bool compute,
              bool ell_window)
{
    ApTable t = load_or_compute(A, B, x, cache, compute);
    std::ostringstream os;
    json j;

    if (kind == "pea") {
        CountReport r = count_PEa(t, a, x, ell, inclusive);
        j = report_json(r);
        j["kind"] = "PEa";
        j["a"] = a;
        if (ell)
            j["ell"] = ell;
        if (ell_window) {
            BoundProfile bp = bound_profile(double(x), 1,
                                            a == 0 ? BoundMode::a_zero
                                                   : BoundMode::a_generic);
            double y = std::max(3.0, bp.y);
            EllWindowDiagnostic diag = ell_window_diagnostic(t, a, x, y);
            j["window_y"] = y;
            j["ell_best"] = diag.ell_best;
            j["count_best"] = diag.count_best;
            j["domination_ratio"] = diag.ratio;
            j["existence_threshold_x"] = diag.threshold_x;
            j["bound_profile"] = bp.bound;
        }
    } else if (kind == "pek") {
        if (!is_fundamental_discriminant(d))
            throw domain_error("--d must be a negative fundamental discriminant");
        PEkReport r = count_PEk(t, d, x);
        j = report_json(r.report);
        j["kind"] = "PEk";
        j["d"] = d;
        j["ordinary_checked"] = r.ordinary_checked;
        j["principality_failures"] = r.principality_failures;
        BoundProfile bp = bound_profile(double(x), class_number(d).h,
                                        BoundMode::k_field);
        j["bound_profile"] = bp.bound;
    } else if (kind == "de") {
        DEReport r = count_DE(t, x);
        j = report_json(r.report);
        j["kind"] = "DE";
        j["partition_residual"] = r.residual;
        j["fields"] = json::array();
        for (auto [dd, c] : r.field_counts)
            j["fields"].push_back({{"d", dd}, {"count", c}});
    } else if (kind == "pic") {
        if (ell < 2)
            throw domain_error("--ell required for pi_C");
        CountReport r = pi_C(t, ell, x, build_pred(pred_kind, ell, a, d0));
        PiTildeReport rt = pi_tilde_C(t, ell, x, build_pred(pred_kind, ell, a, d0));
        j = report_json(r);
        j["kind"] = "piC";
        j["ell"] = ell;
        j["pred"] = pred_kind;
        j["pi_tilde"] = rt.report.observed;
        j["tilde_excess"] = rt.excess;
    } else if (kind == "smoothed") {
        if (ell < 2)
            throw domain_error("--ell required for smoothed counts");
        WindowKind wk = window == "dominating" ? WindowKind::dominating
                                               : WindowKind::bump;
        SmoothWindow f = make_window(wk, c1, c2);
        CountReport r = smoothed_count(t, ell, build_pred(pred_kind, ell, a, d0),
                                       f, double(x));
        j = report_json(r);
        j["kind"] = "smoothed";
        j["ell"] = ell;
        j["window"] = window;
        j["integral"] = f.integral;
    } else if (kind == "sweep") {
        // CSV rows x,observed,expected for PEa (or PEk with --d)
        os << "x,observed,expected\n";
        std::istringstream in(xs);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            i64 xi = parse_x(tok);
            CountReport r = is_fundamental_discriminant(d)
                                ? count_PEk(t, d, xi).report
                                : count_PEa(t, a, xi, ell, inclusive);
            os << r.csv_row() << "\n";
        }
        emit(os.str(), out);
        return 0;
    } else {
        throw domain_error("unknown count kind: " + kind);
    }

    if (format == "csv") {
        CountReport r{j.at("x").get<double>(), j.at("observed").get<double>(),
                      j.at("expected").get<double>(), j.at("fraction").get<double>(),
                      j.at("margin").get<double>()};
        os << "x,observed,expected\n" << r.csv_row() << "\n";
    } else {
        os << j.dump(2) << "\n";
    }
    emit(os.str(), out);
    return 0;
}

int cmd_verify(const std::string& lemma, i64 A, i64 B, i64 d, i64 ell, i64 x,
               bool fault)
{
    std::vector<SuiteResult> results;
    auto want = [&](const char* id) { return lemma.empty() || lemma == id; };

    if (want("2.7"))
        results.push_back(suite_functoriality(25));
    if (want("3.2"))
        results.push_back(suite_rayclass());
    if (want("3.5"))
        results.push_back(suite_mixed_frobenius(make_curve(A, B), d ? d : -4,
                                                ell ? ell : 13,
                                                x ? std::min<i64>(x, 100000)
                                                  : 10000));
    if (want("4.4")) {
        std::vector<int> ells = ell ? std::vector<int>{int(ell)}
                                    : std::vector<int>{5, 7, 11, 13};
        results.push_back(suite_borel_cardinalities(ells, fault));
    }
    if (want("5.5")) {
        std::vector<std::pair<i64, i64>> dl;
        if (d && ell)
            dl.push_back({d, ell});
        else
            dl = {{-4, 5}, {-4, 13}, {-7, 11}};
        results.push_back(suite_mixed_cardinalities(dl));
    }
    if (results.empty())
        throw domain_error("unknown --lemma id: " + lemma);

    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] %-60s %s\n", r.id.c_str(), r.what.c_str(),
                    r.pass ? "PASS" : "FAIL");
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

int cmd_groups(i64 ell, i64 a, i64 d, const std::string& format,
               const std::string& out)
{
    GL2Table g = enumerate_gl2(int(ell));
    auto B = borel_set(g);
    auto U = unipotent_set(g);
    auto H = equal_eigenvalue_set(g);
    auto cb = [&](i64 aa) {
        std::vector<int32_t> CB;
        for (int32_t xx : set_C_a(g, aa))
            if (g.mat(xx).c == 0)
                CB.push_back(xx);
        return CB;
    };
    json j{{"ell", ell},
           {"G", g.size()},
           {"B", B.size()},
           {"U", U.size()},
           {"H", H.size()},
           {"B_mod_U", B.size() / U.size()},
           {"B_mod_H", B.size() / H.size()},
           {"C_a", a},
           {"C", set_C_a(g, a).size()},
           {"C_cap_B", cb(a).size()},
           {"Cprime", quotient_image_count(g, cb(a), U, B)}};
    if (a % ell == 0)
        j["Cdoubleprime"] = quotient_image_count(g, cb(a), H, B);
    if (d != 0) {
        MixedGroup mg = mixed_group(d, ell);
        MixedSets s = set_Ccal(mg);
        j["d"] = d;
        j["Gcal"] = mg.size();
        j["Bcal"] = s.Bcal.size();
        j["Ucal"] = s.Ucal.size();
        j["Ccal"] = s.C.size();
        j["Ccal_cap_Bcal"] = s.CB.size();
        j["Ccalprime"] = s.Cprime;
    }
    std::ostringstream os;
    if (format == "csv") {
        std::string keys, vals;
        for (auto it = j.begin(); it != j.end(); ++it) {
            keys += (keys.empty() ? "" : ",") + it.key();
            vals += (vals.empty() ? "" : ",") + it.value().dump();
        }
        os << keys << "\n" << vals << "\n";
    } else {
        os << j.dump(2) << "\n";
    }
    emit(os.str(), out);
    return 0;
}

int cmd_rayclass(i64 d, i64 m_lo, i64 m_hi, bool enumerated,
                 const std::string& format, const std::string& out)
{
    if (m_hi < m_lo)
        m_hi = m_lo;
    std::ostringstream os;
    if (format == "csv")
        os << (enumerated ? "d,m,order,enumerated\n" : "d,m,order\n");
    json rows = json::array();
    for (i64 m = m_lo; m <= m_hi; ++m) {
        i64 order = ray_class_order(d, m);
        json row{{"d", d}, {"m", m}, {"order", order}};
        if (enumerated)
            row["enumerated"] = ray_class_order_enumerated(d, m);
        if (format == "csv") {
            os << d << "," << m << "," << order;
            if (enumerated)
                os << "," << row["enumerated"].get<i64>();
            os << "\n";
        }
        rows.push_back(row);
    }
    if (format != "csv")
        os << rows.dump(2) << "\n";
    emit(os.str(), out);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"elliptic-curve Frobenius statistics toolkit"};
    app.require_subcommand(1);

    std::string curve = "1,1", out, cache, format = "json", xs;
    std::string kind = "pea", pred_kind = "full", window = "bump", lemma;
    std::string xarg = "1e4";
    i64 a = 0, d = 0, ell = 0, d0 = 1, m = 5, m_hi = 0;
    double c1 = 0.5, c2 = 1.0;
    int shards = 0;
    bool compute = false, inclusive = false, fault = false, enumerated = false;
    bool ell_window = false;

    auto* ap_cmd = app.add_subcommand("ap", "build the a_p cache CSV");
    ap_cmd->add_option("--curve", curve, "curve A,B")->required();
    ap_cmd->add_option("--x", xarg, "prime bound (accepts 1e6)")->required();
    ap_cmd->add_option("--out", out, "output path (default under LT_CACHE_DIR)");
    ap_cmd->add_option("--shards", shards, "worker count (0 = auto)");

    auto* count_cmd = app.add_subcommand("count", "counting functions");
    count_cmd->add_option("--kind", kind, "pea|pek|de|pic|smoothed|sweep")
        ->required();
    count_cmd->add_option("--curve", curve, "curve A,B");
    count_cmd->add_option("--x", xarg, "count bound");
    count_cmd->add_option("--a", a, "trace value for PEa / pred");
    count_cmd->add_option("--d", d, "fundamental discriminant for PEk");
    count_cmd->add_option("--ell", ell, "prime ell");
    count_cmd->add_flag("--inclusive-ramified", inclusive,
                        "count legendre = 0 as split in PEa(x, ell)");
    count_cmd->add_option("--pred", pred_kind, "full|trace|det|cset");
    count_cmd->add_option("--d0", d0, "determinant residue for --pred det");
    count_cmd->add_option("--window", window, "bump|dominating");
    count_cmd->add_option("--c1", c1, "window support left end");
    count_cmd->add_option("--c2", c2, "window support right end");
    count_cmd->add_option("--xs", xs, "comma list of x values for sweep");
    count_cmd->add_option("--format", format, "json|csv");
    count_cmd->add_option("--out", out, "output path (default stdout)");
    count_cmd->add_option("--cache", cache, "a_p cache CSV path");
    count_cmd->add_flag("--compute", compute, "build the table in memory");
    count_cmd->add_flag("--ell-window", ell_window,
                        "report the dyadic ell-window domination diagnostic");

    auto* verify_cmd = app.add_subcommand("verify", "exact verification suites");
    verify_cmd->add_option("--lemma", lemma, "run one suite: 2.7|3.2|3.5|4.4|5.5");
    verify_cmd->add_option("--curve", curve, "curve A,B for the 3.5 suite");
    verify_cmd->add_option("--ell", ell, "restrict suites to one ell");
    verify_cmd->add_option("--d", d, "discriminant for 3.5/5.5 suites");
    verify_cmd->add_option("--x", xarg, "prime bound for the 3.5 suite");
    verify_cmd->add_flag("--inject-fault", fault,
                         "deliberately fail one check (harness test)");

    auto* groups_cmd = app.add_subcommand("groups", "enumerated cardinalities");
    groups_cmd->add_option("--ell", ell, "prime ell")->required();
    groups_cmd->add_option("--a", a, "trace residue for the C sets");
    groups_cmd->add_option("--d", d, "add mixed-group sets for this d");
    groups_cmd->add_option("--format", format, "json|csv");
    groups_cmd->add_option("--out", out, "output path");

    auto* ray_cmd = app.add_subcommand("rayclass", "ray class orders");
    ray_cmd->add_option("--d", d, "fundamental discriminant")->required();
    ray_cmd->add_option("--m", m, "modulus (>= 5)")->required();
    ray_cmd->add_option("--m-hi", m_hi, "sweep m..m-hi");
    ray_cmd->add_flag("--enumerated", enumerated,
                      "also run the ideal-enumeration route");
    ray_cmd->add_option("--format", format, "json|csv");
    ray_cmd->add_option("--out", out, "output path");

    try {
        app.parse(argc, argv);
        auto [A, B] = parse_curve(curve);
        if (ap_cmd->parsed())
            return cmd_ap(A, B, parse_x(xarg), out, shards);
        if (count_cmd->parsed())
            return cmd_count(kind, A, B, parse_x(xarg), a, d, ell, inclusive,
                             pred_kind, d0, window, c1, c2, xs, format, out,
                             cache, compute, ell_window);
        if (verify_cmd->parsed())
            return cmd_verify(lemma, A, B, d, ell,
                              verify_cmd->count("--x") ? parse_x(xarg) : 0,
                              fault);
        if (groups_cmd->parsed())
            return cmd_groups(ell, a, d, format, out);
        if (ray_cmd->parsed())
            return cmd_rayclass(d, m, m_hi, enumerated, format, out);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return 2;
    } catch (const domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
