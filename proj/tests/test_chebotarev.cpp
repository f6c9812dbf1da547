#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "lt/chebotarev.hpp"

using namespace lt;

namespace {

const ClassPred always = [](i64, i64) { return true; };

const ApTable& table_1e5()
{
    static ApTable t = build_ap_table(make_curve(1, 1), 100000);
    return t;
}

} // namespace

TEST_CASE("frob_class: reduction and skip signal")
{
    ApRecord rec{5, -3, true, -11, -11};
    auto c = frob_class(rec, 7);
    REQUIRE(c.has_value());
    CHECK(c->t == 4);
    CHECK(c->dt == 5);
    CHECK(!frob_class(rec, 5).has_value());
    // dt never 0 for p != ell
    for (const ApRecord& r : table_1e5().records) {
        if (r.p > 2000)
            break;
        auto cl = frob_class(r, 13);
        if (cl)
            CHECK(cl->dt != 0);
    }
}

TEST_CASE("pi_C: full class counts every good p except ell")
{
    const ApTable& t = table_1e5();
    i64 x = 50000;
    CountReport r = pi_C(t, 5, x, always);
    i64 good = 0;
    bool ell_in = false;
    for (const ApRecord& rec : t.records) {
        if (rec.p > x)
            break;
        ++good;
        if (rec.p == 5)
            ell_in = true;
    }
    CHECK(i64(r.observed) == good - (ell_in ? 1 : 0));
    CHECK(r.fraction == 1.0);
}

TEST_CASE("pi_C: determinant fibers have fraction 1/(l-1)")
{
    const ApTable& t = table_1e5();
    for (i64 d0 : {1, 2, 3, 4}) {
        CountReport r = pi_C(t, 5, 100000, [d0](i64, i64 dt) { return dt == d0; });
        CHECK(r.fraction == doctest::Approx(0.25));
        // Dirichlet: primes equidistribute among the residues mod 5
        CHECK(r.observed / r.expected == doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("pi_C: trace-and-square-set fraction comes from enumeration")
{
    const ApTable& t = table_1e5();
    GL2Table g = enumerate_gl2(5);
    for (i64 a : {0, 1}) {
        auto C = set_C_a(g, a);
        CountReport r = pi_C(t, 5, 100000, [a](i64 tt, i64 dt) {
            if (tt != ((a % 5) + 5) % 5)
                return false;
            i64 disc = ((tt * tt - 4 * dt) % 5 + 5) % 5;
            return disc == 0 || disc == 1 || disc == 4;
        });
        CHECK(r.fraction == doctest::Approx(double(C.size()) / double(g.size())));
    }
}

TEST_CASE("pi_tilde: no higher powers below 9, exact 1/2 weight at p^2")
{
    ApTable t = build_ap_table(make_curve(1, 1), 2000);
    PiTildeReport small = pi_tilde_C(t, 7, 8, always);
    CHECK(small.excess == 0.0);
    CHECK(small.report.observed == double(small.pi_count));

    // x = 9 brings in exactly p = 3, m = 2 with weight 1/2
    PiTildeReport nine = pi_tilde_C(t, 7, 9, always);
    CHECK(nine.excess == 0.5);

    // monotonicity and scale of the excess
    PiTildeReport big = pi_tilde_C(t, 7, 2000, always);
    CHECK(big.excess >= 0.0);
    CHECK(big.report.observed >= double(big.pi_count));
    CHECK(big.excess <= 2.0 * std::sqrt(2000.0) / std::log(2000.0) + 10.0);
}

TEST_CASE("windows: support, positivity, plateau")
{
    SmoothWindow b = make_window(WindowKind::bump, 0.5, 1.0);
    CHECK(b.eval(0.5) == 0.0);
    CHECK(b.eval(1.0) == 0.0);
    CHECK(b.eval(0.75) > 0.0);
    CHECK(b.integral > 0.0);
    CHECK(b.integral < 0.5);
    CHECK(b.integral_err < 1e-6);

    SmoothWindow dom = make_window(WindowKind::dominating, 0.25, 1.25);
    CHECK(dom.eval(0.75) >= 1.0);
    CHECK(dom.eval(0.5) >= 1.0);
    CHECK(dom.eval(1.0) >= 1.0);
    CHECK(dom.eval(0.25) == 0.0);
    CHECK(dom.eval(1.3) == 0.0);
    CHECK(dom.integral >= 0.5);

    CHECK_THROWS_AS(make_window(WindowKind::bump, 0.0, 1.0), domain_error);
    CHECK_THROWS_AS(make_window(WindowKind::bump, 1.0, 0.5), domain_error);
    CHECK_THROWS_AS(make_window(WindowKind::dominating, 0.6, 1.25), domain_error);
}

TEST_CASE("smoothed_count: support restriction and PNT-scale ratio")
{
    const ApTable& t = table_1e5();
    SmoothWindow f = make_window(WindowKind::bump, 0.5, 1.0);
    double x = 100000.0;
    CountReport r = smoothed_count(t, 5, always, f, x);
    CHECK(r.observed / r.expected == doctest::Approx(1.0).epsilon(0.1));

    // only primes in [x/2, x] contribute
    double direct = 0;
    for (const ApRecord& rec : t.records) {
        if (rec.p == 5)
            continue;
        direct += std::log(double(rec.p)) * f.eval(double(rec.p) / x);
    }
    CHECK(r.observed == doctest::Approx(direct).epsilon(1e-12));

    // empty class gives zero
    CountReport zero = smoothed_count(t, 5, [](i64, i64) { return false; }, f, x);
    CHECK(zero.observed == 0.0);
    CHECK(zero.expected == 0.0);
}

TEST_CASE("count_PEa: Hasse cutoff, split restriction")
{
    const ApTable& t = table_1e5();
    CountReport all0 = count_PEa(t, 0, 100000);
    CHECK(all0.observed > 0);
    // |a| >= 2 sqrt(x) forces zero
    CountReport none = count_PEa(t, 700, 100000);
    CHECK(none.observed == 0);
    // restriction shrinks the count; strict <= inclusive <= unrestricted
    CountReport strict = count_PEa(t, 0, 100000, 13);
    CountReport incl = count_PEa(t, 0, 100000, 13, true);
    CHECK(strict.observed <= incl.observed);
    CHECK(incl.observed <= all0.observed);
}

TEST_CASE("count_PEk: cutoff, partition, principality")
{
    const ApTable& t = table_1e5();
    // |d| > 4x cannot occur
    PEkReport far = count_PEk(t, -400003, 100000);
    CHECK(far.report.observed == 0);

    PEkReport pk = count_PEk(t, -4, 100000);
    CHECK(pk.report.observed > 0);
    CHECK(pk.principality_failures == 0);
    CHECK(pk.report.fraction == 1.0);

    // partition: sum over observed fields equals the number of good primes
    DEReport de = count_DE(t, 100000);
    i64 total = 0;
    for (auto [d, c] : de.field_counts)
        total += c;
    i64 good = i64(t.records.size());
    CHECK(total == good);
    CHECK(de.residual == 0);
}

TEST_CASE("count_DE: single record, monotone growth")
{
    ApTable t3 = build_ap_table(make_curve(1, 1), 3);
    DEReport one = count_DE(t3, 3);
    CHECK(one.report.observed == 1.0);
    CHECK(one.residual == 0);

    const ApTable& t = table_1e5();
    double prev = 0;
    for (i64 x : {100, 1000, 10000, 100000}) {
        DEReport de = count_DE(t, x);
        CHECK(de.report.observed >= prev);
        CHECK(de.residual == 0);
        prev = de.report.observed;
    }
}

TEST_CASE("every ordinary record has a principal prime above p")
{
    // The Frobenius endomorphism is an element of norm p in the maximal
    // order, so the prime it generates is principal whatever the class
    // number of Q(sqrt d) is.
    const ApTable& t = table_1e5();
    for (const ApRecord& r : t.records) {
        if (!r.ordinary)
            continue;
        CHECK(ideal_class_of_prime(r.d, r.p) == IdealClass::principal);
        // |d| <= 4p - a^2 pointwise
        CHECK(-r.d <= 4 * r.p - r.a * r.a);
    }
}

TEST_CASE("mixed Frobenius membership: zero violations")
{
    const ApTable& t = table_1e5();
    MixedCheckReport mc = mixed_frobenius_check(t, -4, 13, 20000);
    CHECK(mc.checked > 0);
    CHECK(mc.violations == 0);
    MixedCheckReport mc3 = mixed_frobenius_check(t, -3, 7, 20000);
    CHECK(mc3.violations == 0);
    CHECK_THROWS_AS(mixed_frobenius_check(t, -23, 13, 20000), domain_error); // h = 3
}

TEST_CASE("bound profiles")
{
    BoundProfile g = bound_profile(1e5, 1, BoundMode::a_generic);
    CHECK(g.y == doctest::Approx(10.0 * std::pow(std::log(1e5), -0.4)));
    double prev_a = 0, prev_z = 0, prev_k = 0;
    for (double x : {1e3, 1e4, 1e5, 1e6, 1e7}) {
        double ba = bound_profile(x, 1, BoundMode::a_generic).bound;
        double bz = bound_profile(x, 1, BoundMode::a_zero).bound;
        double bk = bound_profile(x, 5, BoundMode::k_field).bound;
        CHECK(ba > prev_a);
        CHECK(bz > prev_z);
        CHECK(bk > prev_k);
        prev_a = ba;
        prev_z = bz;
        prev_k = bk;
    }
    CHECK_THROWS_AS(bound_profile(4, 1, BoundMode::a_zero), domain_error);
}

TEST_CASE("asymptote_fit: synthetic recovery and unavailability")
{
    std::vector<std::pair<double, double>> pts;
    for (double x : {1e4, 1e5, 1e6})
        pts.push_back({x, 2.0 * std::sqrt(x) / std::log(x)});
    auto fit = asymptote_fit(pts);
    REQUIRE(fit.has_value());
    CHECK(fit->lt_constant == doctest::Approx(2.0).epsilon(0.01));

    pts.clear();
    for (double x : {1e4, 3e4, 1e5, 3e5, 1e6})
        pts.push_back({x, std::pow(x, 0.8)});
    fit = asymptote_fit(pts);
    REQUIRE(fit.has_value());
    CHECK(fit->power_exponent == doctest::Approx(0.8).epsilon(0.01));

    CHECK(!asymptote_fit({{1e4, 3.0}, {1e5, 5.0}}).has_value());
    CHECK(!asymptote_fit({{1e4, 3.0}, {1e5, 0.0}, {1e6, 5.0}}).has_value());
}

TEST_CASE("ell window diagnostic")
{
    const ApTable& t = table_1e5();
    BoundProfile bp = bound_profile(1e5, 1, BoundMode::a_zero);
    EllWindowDiagnostic diag = ell_window_diagnostic(t, 0, 100000, std::max(3.0, bp.y));
    CHECK(diag.ell_best >= 3);
    if (diag.count_best > 0)
        CHECK(diag.ratio >= 1.0);
    CHECK(diag.threshold_x > 0.0);
}

TEST_CASE("count report json matches the documented schema")
{
    const ApTable& t = table_1e5();
    CountReport r = pi_C(t, 5, 10000, always);
    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j.at("x").get<double>() == r.x);
    CHECK(j.at("observed").get<double>() == r.observed);
    CHECK(j.at("expected").get<double>() == doctest::Approx(r.expected));
    CHECK(j.at("fraction").get<double>() == doctest::Approx(r.fraction));
    CHECK(j.at("margin").get<double>() == doctest::Approx(r.margin));
    CHECK(r.csv_row().find(',') != std::string::npos);
}
