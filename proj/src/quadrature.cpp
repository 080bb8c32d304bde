#include "rissec/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace rissec::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMin = std::numeric_limits<double>::min();

// 15-point Kronrod abscissae and weights; Gauss 7-point weights sit on the
// odd-indexed abscissae (and the centre).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

Segment gauss_kronrod15(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    const double fc = f(centre);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }

    const double result = resk * half;
    resabs *= abs_half;
    resasc *= abs_half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > kMin / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    return {a, b, result, err};
}

struct ByError {
    bool operator()(const Segment& lhs, const Segment& rhs) const {
        return lhs.error < rhs.error;
    }
};

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be >= 0");
    if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
}

double Integrand::operator()(double z) const {
    if (at_zero && z < kSingularityFloor) return *at_zero;
    return f(z);
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
    const Segment first = gauss_kronrod15(f, a, b);
    heap.push(first);
    double total = first.value;
    double total_err = first.error;
    int subdivisions = 1;

    auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (total_err > target()) {
        if (subdivisions >= spec.max_subdivisions) {
            throw QuadratureError("quadrature did not converge within max_subdivisions",
                                  total, total_err);
        }
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            std::abs(worst.b - worst.a) <= 4.0 * kEps * std::abs(mid)) {
            throw QuadratureError("quadrature hit the round-off floor", total, total_err);
        }
        heap.pop();
        const Segment left = gauss_kronrod15(f, worst.a, mid);
        const Segment right = gauss_kronrod15(f, mid, worst.b);
        heap.push(left);
        heap.push(right);
        ++subdivisions;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
    }

    // Re-sum from the segments so the returned value carries no drift from
    // the running updates.
    std::vector<Segment> segments;
    segments.reserve(heap.size());
    while (!heap.empty()) {
        segments.push_back(heap.top());
        heap.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& l, const Segment& r) { return l.a < r.a; });
    QuadratureResult out;
    for (const auto& s : segments) {
        out.value += s.value;
        out.error += s.error;
    }
    out.subdivisions = subdivisions;
    return out;
}

QuadratureResult integrate_semi_infinite_detailed(const Integrand& f, const QuadratureSpec& spec) {
    constexpr double kHead = 40.0;
    constexpr double kLimit = 1e5;

    QuadratureResult out = integrate(f, 0.0, kHead, spec);
    double lo = kHead;
    while (lo < kLimit) {
        const double hi = 2.0 * lo;
        QuadratureSpec tail_spec = spec;
        tail_spec.abs_tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
        const QuadratureResult piece = integrate(f, lo, hi, tail_spec);
        out.value += piece.value;
        out.error += piece.error;
        out.subdivisions += piece.subdivisions;
        lo = hi;
        if (std::abs(piece.value) <= 0.1 * std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value))) {
            break;
        }
    }
    return out;
}

double integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec) {
    return integrate_semi_infinite_detailed(f, spec).value;
}

}  // namespace rissec::specfun
