#include "sa2fe/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sa2fe::harness {

double chi_square_statistic(const std::vector<std::size_t>& observed,
                            const std::vector<double>& weights) {
    if (observed.size() != weights.size() || observed.empty())
        throw std::invalid_argument("chi_square: size mismatch");
    double total = 0, wsum = 0;
    for (std::size_t o : observed) total += static_cast<double>(o);
    for (double w : weights) wsum += w;
    if (total == 0 || wsum <= 0) throw std::invalid_argument("chi_square: empty");
    double stat = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double expected = total * weights[i] / wsum;
        if (expected <= 0) throw std::invalid_argument("chi_square: zero expectation");
        double d = static_cast<double>(observed[i]) - expected;
        stat += d * d / expected;
    }
    return stat;
}

namespace {

// Regularized incomplete gamma functions, series + continued fraction
// (Lentz), good to ~1e-12 over the range used here.
double gamma_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Q(a, x) = upper regularized incomplete gamma
double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: domain");
    if (x == 0) return 1;
    if (x < a + 1) return 1 - gamma_series(a, x);
    return gamma_cf(a, x);
}

}  // namespace

double chi_square_p_value(double statistic, std::size_t df) {
    if (df == 0) throw std::invalid_argument("chi_square_p_value: zero df");
    return gamma_q(static_cast<double>(df) / 2.0, statistic / 2.0);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: size");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("linear_fit: degenerate x");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += e * e;
    }
    fit.r_squared = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

double median(std::vector<double> v) { return percentile(std::move(v), 0.5); }

double percentile(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("percentile: empty");
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return v[lo] * (1 - frac) + v[hi] * frac;
}

}  // namespace sa2fe::harness
