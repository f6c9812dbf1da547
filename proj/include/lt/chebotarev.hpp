#ifndef LT_CHEBOTAREV_HPP
#define LT_CHEBOTAREV_HPP

// The counting engine over a_p tables: Frobenius char-poly classes,
// raw and prime-power-weighted counts against exact enumerated
// densities, smoothed sums with compactly supported windows, the
// fixed-trace and fixed-field counting functions, and the bound /
// asymptote diagnostic profiles.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lt/elliptic.hpp"
#include "lt/groups.hpp"
#include "lt/quadfield.hpp"

namespace lt {

struct CharPolyClass {
    i64 ell = 0;
    i64 t = 0;  // trace mod ell
    i64 dt = 0; // determinant mod ell, nonzero
};

// (a_p mod l, p mod l); nullopt is the skip signal for p = l.
std::optional<CharPolyClass> frob_class(const ApRecord& rec, i64 ell);

// Predicate over char-poly data (t, dt) mod a fixed ell.
using ClassPred = std::function<bool(i64 t, i64 dt)>;

struct CountReport {
    double x = 0;
    double observed = 0;
    double expected = 0;
    double fraction = 0; // |C|/|G|, or the normalizer in use
    double margin = 0;
    std::string to_json() const;
    std::string csv_row() const; // "x,observed,expected"
};

// Count of good p <= x, p != ell, whose class satisfies pred; expected
// is fraction * li(x) with fraction = |C|/|G| by exact enumeration.
CountReport pi_C(const ApTable& table, i64 ell, i64 x, const ClassPred& pred);

struct PiTildeReport {
    CountReport report;   // observed = pi~ value
    i64 pi_count = 0;     // the unweighted count
    double excess = 0;    // pi~ - pi, a sum of 1/m terms, >= 0 by construction
};

// Adds the prime-power terms: p^m <= x weighted 1/m, class of Frob^m
// taken from the trace-of-power recurrence and det p^m.
PiTildeReport pi_tilde_C(const ApTable& table, i64 ell, i64 x,
                         const ClassPred& pred);

enum class WindowKind { bump, dominating };

// Smooth compactly supported window on [c1, c2].  The bump kind is the
// standard mollifier rescaled to the support; the dominating kind is a
// smoothed plateau equal to 1 on [1/2, 1] (so c1 < 1/2 < 1 < c2 is
// required).  integral holds the quadrature value of its integral.
struct SmoothWindow {
    WindowKind kind = WindowKind::bump;
    double c1 = 0.5;
    double c2 = 1.0;
    double integral = 0;
    double integral_err = 0;
    double eval(double t) const;
};

SmoothWindow make_window(WindowKind kind, double c1, double c2);

// sum over good p != ell, p <= c2*x of log p * f(p/x) for p in the
// class; expected = fraction * x * integral(f).  The fold runs over
// ascending p with compensated (Kahan) summation, so the result does
// not depend on how the table was sharded.
CountReport smoothed_count(const ApTable& table, i64 ell, const ClassPred& pred,
                           const SmoothWindow& f, double x);

// #{p <= x good : a_p = a}; with ell != 0 restricted to p where ell
// splits in Q(pi_p), i.e. legendre(a^2-4p, ell) = 1 (strict), or >= 0
// when inclusive_ramified is set.
CountReport count_PEa(const ApTable& table, i64 a, i64 x, i64 ell = 0,
                      bool inclusive_ramified = false);

struct PEkReport {
    CountReport report;
    i64 ordinary_checked = 0;     // ordinary records put through the
    i64 principality_failures = 0; // principality test (expected 0)
};

// #{p <= x good : Q(pi_p) = Q(sqrt d)}, d a fundamental discriminant.
PEkReport count_PEk(const ApTable& table, i64 d, i64 x);

struct DEReport {
    CountReport report; // observed = number of distinct Frobenius fields
    i64 residual = 0;   // pi(x) - #bad(<=x) - sum of field counts; must be 0
    std::vector<std::pair<i64, i64>> field_counts; // (d, count), d ascending
};

DEReport count_DE(const ApTable& table, i64 x);

struct MixedCheckReport {
    i64 checked = 0;
    i64 violations = 0;
};

// For every ordinary good p <= x (p != ell) with Frobenius field d
// (class number 1): obtain a Cornacchia generator pi, and check that
// a_p mod ell lies in the trace set of pi's unit coset and that
// N(pi) = p mod ell.  A Cornacchia failure throws (it would contradict
// principality); trace/norm mismatches are counted as violations.
MixedCheckReport mixed_frobenius_check(const ApTable& table, i64 d, i64 ell,
                                       i64 x);

enum class BoundMode { a_generic, a_zero, k_field };

struct BoundProfile {
    double y = 0;     // the dyadic window base for the ell search
    double bound = 0; // the corresponding upper-bound shape, unit constants
};

BoundProfile bound_profile(double x, i64 h_k, BoundMode mode);

struct AsymptoteFit {
    double lt_constant = 0;    // C in P(x) ~ C sqrt(x)/log x
    double power_exponent = 0; // best pure-power fit P(x) ~ c x^e
    double power_constant = 0;
};

// Least squares on >= 3 samples (x, P(x)); nullopt when the fit is
// unavailable (too few points or a zero count).
std::optional<AsymptoteFit> asymptote_fit(
    const std::vector<std::pair<double, double>>& samples);

struct EllWindowDiagnostic {
    i64 ell_best = 0;
    i64 count_best = 0;   // max over primes ell in [y, 2y] of P_{E,a}(x, ell)
    double ratio = 0;     // P_{E,a}(x) / max (the domination diagnostic)
    double threshold_x = 0; // existence-threshold scale |G|^2/|C| log^2(M x),
                            // unit constants
};

// Dyadic ell-window diagnostic for the fixed-trace count.
EllWindowDiagnostic ell_window_diagnostic(const ApTable& table, i64 a, i64 x,
                                          double y);

} // namespace lt

#endif
