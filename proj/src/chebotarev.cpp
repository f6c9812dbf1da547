#include "lt/chebotarev.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace lt {

std::optional<CharPolyClass> frob_class(const ApRecord& rec, i64 ell)
{
    if (rec.p == ell)
        return std::nullopt;
    CharPolyClass c;
    c.ell = ell;
    c.t = ((rec.a % ell) + ell) % ell;
    c.dt = ((rec.p % ell) + ell) % ell;
    return c;
}

std::string CountReport::to_json() const
{
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\"x\":%.10g,\"observed\":%.10g,\"expected\":%.10g,"
                  "\"fraction\":%.10g,\"margin\":%.10g}",
                  x, observed, expected, fraction, margin);
    return buf;
}

std::string CountReport::csv_row() const
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g", x, observed, expected);
    return buf;
}

namespace {

void require_covered(const ApTable& table, i64 x, const char* who)
{
    if (x < 3)
        throw domain_error(std::string(who) + ": x must be >= 3");
    if (x > table.x)
        throw domain_error(std::string(who) + ": table covers only p <= "
                           + std::to_string(table.x));
}

// |C| and |G| for the union of char-poly classes satisfying pred,
// by exact enumeration of GL2(F_ell).
std::pair<i64, i64> pred_cardinality(i64 ell, const ClassPred& pred)
{
    CharPolyCounts cc = charpoly_class_counts(ell);
    i64 total = 0;
    for (i64 t = 0; t < ell; ++t)
        for (i64 dt = 1; dt < ell; ++dt)
            if (pred(t, dt))
                total += cc.count[size_t(t * ell + dt)];
    return {total, cc.group_order};
}

} // namespace

CountReport pi_C(const ApTable& table, i64 ell, i64 x, const ClassPred& pred)
{
    require_covered(table, x, "pi_C");
    auto [csize, gsize] = pred_cardinality(ell, pred);
    double frac = double(csize) / double(gsize);
    i64 count = 0, n = 0;
    for (const ApRecord& rec : table.records) {
        if (rec.p > x)
            break;
        auto cls = frob_class(rec, ell);
        if (!cls)
            continue;
        ++n;
        if (pred(cls->t, cls->dt))
            ++count;
    }
    CountReport r;
    r.x = double(x);
    r.observed = double(count);
    r.expected = frac * li(double(x));
    r.fraction = frac;
    r.margin = 5.0 * std::sqrt(std::max(frac * (1.0 - frac) * double(n), 1.0));
    return r;
}

PiTildeReport pi_tilde_C(const ApTable& table, i64 ell, i64 x,
                         const ClassPred& pred)
{
    PiTildeReport out;
    CountReport base = pi_C(table, ell, x, pred);
    out.pi_count = i64(base.observed);

    // Prime-power terms, folded in ascending (p, m) order.  Weights are
    // accumulated as integer counts per m, so pi~ - pi is exactly a sum
    // of positive 1/m terms.
    std::vector<i64> cnt_m(64, 0);
    for (const ApRecord& rec : table.records) {
        if (rec.p * rec.p > x)
            break;
        if (rec.p == ell)
            continue;
        i128 pm = i128(rec.p) * rec.p;
        for (int m = 2; pm <= i128(x); ++m, pm *= rec.p) {
            i64 t = ((trace_of_power(rec.a, rec.p, m) % ell) + ell) % ell;
            i64 dt = i64(pm % ell);
            if (pred(t, dt))
                ++cnt_m[size_t(m)];
        }
    }
    double excess = 0;
    for (int m = 63; m >= 2; --m)
        excess += double(cnt_m[size_t(m)]) / double(m);
    out.excess = excess;
    out.report = base;
    out.report.observed = double(out.pi_count) + excess;
    return out;
}

namespace {

double window_raw(WindowKind kind, double c1, double c2, double t)
{
    if (t <= c1 || t >= c2)
        return 0.0;
    if (kind == WindowKind::bump) {
        double s = (2.0 * t - (c1 + c2)) / (c2 - c1);
        return std::exp(-1.0 / (1.0 - s * s));
    }
    // dominating: smooth step up on [c1, 1/2], 1 on [1/2, 1], down on [1, c2]
    auto step = [](double u) {
        if (u <= 0.0)
            return 0.0;
        if (u >= 1.0)
            return 1.0;
        double s0 = std::exp(-1.0 / u);
        double s1 = std::exp(-1.0 / (1.0 - u));
        return s0 / (s0 + s1);
    };
    return step((t - c1) / (0.5 - c1)) * step((c2 - t) / (c2 - 1.0));
}

struct QuadResult {
    double value = 0;
    double err = 0;
};

void adapt(const std::function<double(double)>& f, double a, double b,
           double fa, double fm, double fb, double whole, double tol,
           int depth, QuadResult& out)
{
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) <= 15.0 * tol) {
        out.value += left + right + err / 15.0;
        out.err += std::fabs(err) / 15.0;
        return;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
    adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol)
{
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double tol = std::max(1e-14, rel_tol * std::fabs(whole));
    QuadResult out;
    adapt(f, a, b, fa, fm, fb, whole, tol, 48, out);
    return out;
}

} // namespace

double SmoothWindow::eval(double t) const
{
    return window_raw(kind, c1, c2, t);
}

SmoothWindow make_window(WindowKind kind, double c1, double c2)
{
    if (!(c1 > 0.0) || !(c1 < c2))
        throw domain_error("make_window: need 0 < c1 < c2");
    if (kind == WindowKind::dominating && !(c1 < 0.5 && c2 > 1.0))
        throw domain_error("make_window: dominating window needs c1 < 1/2 < 1 < c2");
    SmoothWindow w;
    w.kind = kind;
    w.c1 = c1;
    w.c2 = c2;
    QuadResult q = integrate([&](double t) { return window_raw(kind, c1, c2, t); },
                             c1, c2, 1e-8);
    w.integral = q.value;
    w.integral_err = q.err;
    return w;
}

CountReport smoothed_count(const ApTable& table, i64 ell, const ClassPred& pred,
                           const SmoothWindow& f, double x)
{
    i64 pmax = i64(std::ceil(f.c2 * x));
    require_covered(table, std::max<i64>(pmax, 3), "smoothed_count");
    auto [csize, gsize] = pred_cardinality(ell, pred);
    double frac = double(csize) / double(gsize);

    // Kahan over ascending p: deterministic for any shard layout.
    double sum = 0, comp = 0;
    for (const ApRecord& rec : table.records) {
        if (rec.p > pmax)
            break;
        auto cls = frob_class(rec, ell);
        if (!cls || !pred(cls->t, cls->dt))
            continue;
        double term = std::log(double(rec.p)) * f.eval(double(rec.p) / x);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    CountReport r;
    r.x = x;
    r.observed = sum;
    r.expected = frac * x * f.integral;
    r.fraction = frac;
    r.margin = std::sqrt(std::max(frac, 1.0 / double(gsize))) * std::sqrt(x)
               * std::log(std::max(x, 3.0));
    return r;
}

CountReport count_PEa(const ApTable& table, i64 a, i64 x, i64 ell,
                      bool inclusive_ramified)
{
    require_covered(table, x, "count_PEa");
    i64 count = 0;
    for (const ApRecord& rec : table.records) {
        if (rec.p > x)
            break;
        if (rec.a != a)
            continue;
        if (ell != 0) {
            if (rec.p == ell)
                continue;
            int leg = legendre_symbol(rec.D, ell);
            if (!(leg == 1 || (inclusive_ramified && leg == 0)))
                continue;
        }
        ++count;
    }
    CountReport r;
    r.x = double(x);
    r.observed = double(count);
    r.expected = std::sqrt(double(x)) / std::log(double(x));
    r.fraction = 1.0;
    r.margin = 5.0 * std::sqrt(std::max(r.observed, 1.0));
    return r;
}

PEkReport count_PEk(const ApTable& table, i64 d, i64 x)
{
    require_covered(table, x, "count_PEk");
    if (!is_fundamental_discriminant(d))
        throw domain_error("count_PEk: d must be a negative fundamental discriminant");
    QuadraticField k = class_number(d);
    PEkReport out;
    i64 count = 0;
    for (const ApRecord& rec : table.records) {
        if (rec.p > x)
            break;
        if (rec.d != d)
            continue;
        ++count;
        if (rec.ordinary) {
            ++out.ordinary_checked;
            if (ideal_class_of_prime(d, rec.p) != IdealClass::principal)
                ++out.principality_failures;
        }
    }
    out.report.x = double(x);
    out.report.observed = double(count);
    out.report.expected = std::sqrt(double(x)) / std::log(double(x));
    out.report.fraction = 1.0 / double(k.h);
    out.report.margin = 5.0 * std::sqrt(std::max(out.report.observed, 1.0));
    return out;
}

DEReport count_DE(const ApTable& table, i64 x)
{
    require_covered(table, x, "count_DE");
    DEReport out;
    std::map<i64, i64> fields;
    for (const ApRecord& rec : table.records) {
        if (rec.p > x)
            break;
        ++fields[rec.d];
    }
    i64 pix = 0, bad = 0;
    for_each_prime(x, [&](i64 p) {
        ++pix;
        if (table.curve.disc % p == 0)
            ++bad;
    });
    i64 sum = 0;
    for (auto [d, c] : fields) {
        out.field_counts.push_back({d, c});
        sum += c;
    }
    out.residual = pix - bad - sum;
    out.report.x = double(x);
    out.report.observed = double(fields.size());
    double lx = std::log(double(x));
    out.report.expected = std::pow(double(x), 2.0 / 7.0) / std::pow(lx, 10.0 / 7.0);
    out.report.fraction = 1.0;
    out.report.margin = 0.0;
    return out;
}

MixedCheckReport mixed_frobenius_check(const ApTable& table, i64 d, i64 ell,
                                       i64 x)
{
    require_covered(table, x, "mixed_frobenius_check");
    QuadraticField k = class_number(d);
    if (k.h != 1)
        throw domain_error("mixed_frobenius_check: requires class number 1");
    ResidueUnitQuotient q = residue_unit_quotient(d, ell);

    MixedCheckReport out;
    for (const ApRecord& rec : table.records) {
        if (rec.p > x)
            break;
        if (!rec.ordinary || rec.d != d || rec.p == ell)
            continue;
        auto gen = cornacchia(d, rec.p);
        if (!gen)
            throw contract_error(
                "mixed_frobenius_check: Cornacchia failed on a matching "
                "ordinary prime (contradicts principality at h=1)");
        auto [u, v] = *gen;
        if ((i128(u) * u - i128(d) * v * v) != i128(4) * rec.p)
            throw contract_error("mixed_frobenius_check: generator norm is not p");
        ++out.checked;
        int coset = q.coset_of_element(u, v);
        i64 am = ((rec.a % ell) + ell) % ell;
        const auto& tr = q.traces[size_t(coset)];
        bool trace_ok = std::binary_search(tr.begin(), tr.end(), am);
        bool norm_ok = q.norms[size_t(coset)] == ((rec.p % ell) + ell) % ell;
        if (!trace_ok || !norm_ok)
            ++out.violations;
    }
    return out;
}

BoundProfile bound_profile(double x, i64 h_k, BoundMode mode)
{
    if (x < 16)
        throw domain_error("bound_profile: x must be >= 16");
    double lx = std::log(x);
    BoundProfile b;
    switch (mode) {
    case BoundMode::a_generic:
        b.y = std::pow(x, 0.2) / std::pow(lx, 0.4);
        b.bound = std::pow(x, 0.8) / std::pow(lx, 0.6);
        break;
    case BoundMode::a_zero:
        b.y = std::pow(x, 0.25) / std::sqrt(lx);
        b.bound = std::pow(x, 0.75) / std::sqrt(lx);
        break;
    case BoundMode::k_field: {
        double h = double(h_k);
        if (h <= std::sqrt(x) / std::pow(lx, 6.0))
            b.y = std::pow(h, -0.4) * std::pow(x, 0.2) / std::pow(lx, 0.4);
        else
            b.y = lx * lx;
        b.bound = std::pow(h, -0.6) * std::pow(x, 0.8) / std::pow(lx, 0.6)
                  + std::sqrt(x) * lx * lx * lx;
        break;
    }
    }
    return b;
}

std::optional<AsymptoteFit> asymptote_fit(
    const std::vector<std::pair<double, double>>& samples)
{
    if (samples.size() < 3)
        return std::nullopt;
    for (auto [x, p] : samples)
        if (!(x > 3.0) || !(p > 0.0))
            return std::nullopt;

    AsymptoteFit fit;
    // P ~ C sqrt(x)/log x: log C = mean(log P - log(sqrt x / log x)).
    double acc = 0;
    for (auto [x, p] : samples)
        acc += std::log(p) - (0.5 * std::log(x) - std::log(std::log(x)));
    fit.lt_constant = std::exp(acc / double(samples.size()));

    // Pure power: regress log P on log x.
    double su = 0, sv = 0, suu = 0, suv = 0;
    double n = double(samples.size());
    for (auto [x, p] : samples) {
        double u = std::log(x), v = std::log(p);
        su += u;
        sv += v;
        suu += u * u;
        suv += u * v;
    }
    double denom = n * suu - su * su;
    if (denom == 0)
        return std::nullopt;
    fit.power_exponent = (n * suv - su * sv) / denom;
    fit.power_constant = std::exp((sv - fit.power_exponent * su) / n);
    return fit;
}

EllWindowDiagnostic ell_window_diagnostic(const ApTable& table, i64 a, i64 x,
                                          double y)
{
    if (y < 3)
        throw domain_error("ell_window_diagnostic: window base must be >= 3");
    EllWindowDiagnostic out;
    i64 total = i64(count_PEa(table, a, x).observed);
    for (i64 ell = i64(std::ceil(y)); ell <= i64(2 * y); ++ell) {
        if (!is_prime(u64(ell)))
            continue;
        i64 c = i64(count_PEa(table, a, x, ell).observed);
        if (c >= out.count_best) {
            out.count_best = c;
            out.ell_best = ell;
        }
    }
    out.ratio = out.count_best > 0 ? double(total) / double(out.count_best) : -1.0;
    if (out.ell_best >= 2) {
        double g = double(gl2_order(out.ell_best));
        auto [csize, gsize] = pred_cardinality(out.ell_best, [&](i64 t, i64 dt) {
            i64 ell = out.ell_best;
            i64 am = ((a % ell) + ell) % ell;
            if (t != am)
                return false;
            i64 disc = ((t * t - 4 * dt) % ell + ell) % ell;
            for (i64 r = 0; r <= ell / 2; ++r)
                if (r * r % ell == disc)
                    return true;
            return false;
        });
        (void)gsize;
        double rad = 1;
        i64 n = table.curve.disc < 0 ? -table.curve.disc : table.curve.disc;
        for (i64 p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                rad *= double(p);
                while (n % p == 0)
                    n /= p;
            }
        if (n > 1)
            rad *= double(n);
        double M = 2.0 * g * rad * double(out.ell_best);
        double lg = std::log(M * double(x));
        out.threshold_x = csize > 0 ? g * g / double(csize) * lg * lg : 0.0;
    }
    return out;
}

} // namespace lt
