#include "frobstat/analytic.hpp"

#include "frobstat/errors.hpp"

#include <cmath>
#include <vector>

namespace frobstat {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSqrt3 = 1.73205080756887729352744634150587237;

// G7/K15 nodes and weights (positive half; the rule is symmetric).
constexpr double kKronrodNodes[8] = {
    0.0,
    0.2077849550078984676006894037732449,
    0.4058451513773971669066064120769615,
    0.5860872354676911302941448382587296,
    0.7415311855993944398638647732807884,
    0.8648644233597690727897127886409262,
    0.9491079123427585245261896840478513,
    0.9914553711208126392068546975263285,
};
constexpr double kKronrodWeights[8] = {
    0.2094821410847278280129991748917143,
    0.2044329400752988924141619992346491,
    0.1903505780647854099132564024210137,
    0.1690047266392679028265834265985503,
    0.1406532597155259187451895905102379,
    0.1047900103222501838398763225415180,
    0.0630920926299785532907006631892042,
    0.0229353220105292249637320080589695,
};
constexpr double kGaussWeights[4] = {
    0.4179591836734693877551020408163265,
    0.3818300505051189449503697754889751,
    0.2797053914892766679014677714237796,
    0.1294849661688696932706114326790820,
};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fx[15];
    fx[7] = f(mid);
    for (int i = 1; i < 8; ++i) {
        double dx = half * kKronrodNodes[i];
        fx[7 - i] = f(mid - dx);
        fx[7 + i] = f(mid + dx);
    }
    double kronrod = kKronrodWeights[0] * fx[7];
    for (int i = 1; i < 8; ++i) kronrod += kKronrodWeights[i] * (fx[7 - i] + fx[7 + i]);
    double gauss = kGaussWeights[0] * fx[7];
    for (int i = 1; i < 4; ++i) gauss += kGaussWeights[i] * (fx[7 - 2 * i] + fx[7 + 2 * i]);
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::fabs(kronrod - gauss)};
}

} // namespace

double adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    struct Panel {
        double a, b, integral, error;
        int depth;
    };
    PanelResult root = gk15_panel(f, a, b);
    std::vector<Panel> panels{{a, b, root.integral, root.error, 0}};
    // Bisect the worst splittable panel until the summed error estimates fit
    // the budget; totals are rescanned every round so rounding drift in an
    // incremental sum cannot stall the loop.
    while (panels.size() < 100000) {
        double total_err = 0.0;
        std::size_t worst = panels.size();
        double worst_err = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total_err += panels[i].error;
            const Panel& p = panels[i];
            bool splittable =
                p.depth < max_depth && p.b - p.a > 1e-15 * (std::fabs(p.a) + 1.0);
            if (splittable && p.error > worst_err) {
                worst_err = p.error;
                worst = i;
            }
        }
        if (total_err <= abs_tol || worst == panels.size()) break;
        Panel p = panels[worst];
        double mid = 0.5 * (p.a + p.b);
        PanelResult left = gk15_panel(f, p.a, mid);
        PanelResult right = gk15_panel(f, mid, p.b);
        panels[worst] = {p.a, mid, left.integral, left.error, p.depth + 1};
        panels.push_back({mid, p.b, right.integral, right.error, p.depth + 1});
    }
    double total = 0.0;
    for (const Panel& p : panels) total += p.integral;
    return total;
}

double zeta_real(double s) {
    if (!(s > 1.0)) throw usage_error("zeta_real: requires s > 1");
    const int N = 32;
    double sum = 0.0;
    for (int k = 1; k < N; ++k) sum += std::pow(static_cast<double>(k), -s);
    const double Nd = static_cast<double>(N);
    // Euler-Maclaurin tail with Bernoulli terms through B8.
    double tail = std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -s);
    double rising = s; // s(s+1)...(s+2j-2)
    tail += rising / 12.0 * std::pow(Nd, -s - 1.0);
    rising *= (s + 1.0) * (s + 2.0);
    tail -= rising / 720.0 * std::pow(Nd, -s - 3.0);
    rising *= (s + 3.0) * (s + 4.0);
    tail += rising / 30240.0 * std::pow(Nd, -s - 5.0);
    rising *= (s + 5.0) * (s + 6.0);
    tail -= rising / 1209600.0 * std::pow(Nd, -s - 7.0);
    return sum + tail;
}

double psi3_branch_middle(double R) {
    return (12.0 / kPi) * (R / kSqrt3 - std::sqrt(4.0 - R * R));
}

double psi3_branch_upper(double R) {
    // Evaluated in long double: the acos argument sits close to 1 and the two
    // terms cancel to ~(3/2)R^-3, so double internals leave ~1e-11 noise by
    // R = 35 and quadratures stall on it.
    const long double Rl = R;
    const long double r4 = Rl * Rl - 4.0L;
    const long double r3 = Rl * Rl - 3.0L;
    long double arg = (Rl + 3.0L * sqrtl(r4)) / (4.0L * sqrtl(r3));
    // The argument approaches 1 from below as R grows; rounding can push it
    // over, which would make acos NaN.
    if (arg > 1.0L && arg < 1.0L + 1e-12L) arg = 1.0L;
    // sqrt(r4)*log(r4/r3) -> 0 as R -> 2+.
    long double log_term = r4 > 0.0L ? 1.5L * sqrtl(r4) * logl(r4 / r3) : 0.0L;
    const long double pil = 3.14159265358979323846264338327950288L;
    const long double sqrt3l = 1.73205080756887729352744634150587237L;
    return static_cast<double>((12.0L / (pil * pil)) * (Rl * sqrt3l * acosl(arg) + log_term));
}

namespace {

// Beyond this radius the closed form is evaluated through its asymptotic
// series: the two near-equal terms of the printed formula agree to
// ~0.375/R^4, so in doubles the direct evaluation loses all precision long
// before R = 10^3.  The coefficients come from a symbolic expansion of the
// closed form; the first two match the printed large-R expansion of Psi_3.
constexpr double kSeriesCut = 50.0;
constexpr double kPsiC[5] = {
    18.0 / (kPi * kPi),          // R^-3
    66.0 / (kPi * kPi),          // R^-5
    228.0 / (kPi * kPi),         // R^-7
    3939.0 / (5.0 * kPi * kPi),  // R^-9
    13731.0 / (5.0 * kPi * kPi), // R^-11
};

double psi3_series(double R) {
    const double u = 1.0 / (R * R);
    double acc = 0.0;
    for (int k = 4; k >= 0; --k) acc = acc * u + kPsiC[k];
    return acc * u / R;
}

// int_X^inf of the density series, termwise: sum kPsiC[k]/(2k+2) X^-(2k+2).
double psi3_tail_series(double X) {
    const double u = 1.0 / (X * X);
    double acc = 0.0;
    for (int k = 4; k >= 0; --k) acc = acc * u + kPsiC[k] / (2.0 * k + 2.0);
    return acc * u;
}

// int_X^inf R * density series: sum kPsiC[k]/(2k+1) X^-(2k+1).
double psi3_moment1_series(double X) {
    const double u = 1.0 / (X * X);
    double acc = 0.0;
    for (int k = 4; k >= 0; --k) acc = acc * u + kPsiC[k] / (2.0 * k + 1.0);
    return acc / X;
}

} // namespace

double psi3_density(double R) {
    if (R < 0.0) throw usage_error("psi3_density: R must be nonnegative");
    if (R <= kSqrt3) return 0.0;
    if (R <= 2.0) return psi3_branch_middle(R);
    if (R <= kSeriesCut) return psi3_branch_upper(R);
    return psi3_series(R);
}

namespace {

// Integrates psi3 over [a, b] with the non-smooth knot at 2 forced as a
// panel boundary.
double psi3_integral(double a, double b, double abs_tol) {
    auto f = [](double r) { return psi3_density(r); };
    if (a < 2.0 && b > 2.0)
        return adaptive_gk15(f, a, 2.0, abs_tol / 2) + adaptive_gk15(f, 2.0, b, abs_tol / 2);
    return adaptive_gk15(f, a, b, abs_tol);
}

} // namespace

double psi3_tail(double R) {
    if (R < 0.0) throw usage_error("psi3_tail: R must be nonnegative");
    if (R <= kSqrt3) return 1.0;
    if (R >= kSeriesCut) return psi3_tail_series(R);
    return psi3_integral(R, kSeriesCut, 1e-12) + psi3_tail_series(kSeriesCut);
}

double main_term(int d, double R) {
    if (d < 3) throw usage_error("main_term: requires d >= 3");
    if (!(R > 0.0)) throw usage_error("main_term: requires R > 0");
    return d / (2.0 * zeta_real(d - 1.0)) * std::pow(R, -(d - 1.0));
}

double moment_exact_d3(int k) {
    if (k != 0 && k != 1)
        throw usage_error("moment_exact_d3: the d = 3 distribution has finite moments "
                          "for no larger (integer) k than 1");
    auto f = [k](double r) { return std::pow(r, k) * psi3_density(r); };
    const double X = kSeriesCut;
    double body = adaptive_gk15(f, kSqrt3, 2.0, 5e-10) + adaptive_gk15(f, 2.0, X, 5e-10);
    return body + (k == 0 ? psi3_tail_series(X) : psi3_moment1_series(X));
}

double AnalyticConstants::support_min(int d) const {
    if (d < 2) throw usage_error("support_min: requires d >= 2");
    return std::exp(std::lgamma(static_cast<double>(d)) / (d - 1));
}

double AnalyticConstants::tail_c(int d) const {
    if (d < 3) throw usage_error("tail_c: requires d >= 3");
    return d / (2.0 * zeta_real(d - 1.0));
}

AnalyticConstants constants() {
    AnalyticConstants c;
    // e*ln(eta) + eta is increasing; bisect on [0.5, 0.9].
    double lo = 0.5, hi = 0.9;
    auto f = [](double eta) { return std::exp(1.0) * std::log(eta) + eta; };
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-16) break;
    }
    c.eta0 = 0.5 * (lo + hi);
    return c;
}

} // namespace frobstat
