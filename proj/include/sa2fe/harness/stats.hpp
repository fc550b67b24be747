#ifndef SA2FE_HARNESS_STATS_HPP
#define SA2FE_HARNESS_STATS_HPP

#include <cstddef>
#include <vector>

namespace sa2fe::harness {

/// Pearson chi-square statistic for observed counts against expected
/// proportions (weights normalized internally).
double chi_square_statistic(const std::vector<std::size_t>& observed,
                            const std::vector<double>& weights);

/// Upper-tail p-value of the chi-square distribution with df degrees of
/// freedom (regularized incomplete gamma Q(df/2, x/2)).
double chi_square_p_value(double statistic, std::size_t df);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> v);
/// Percentile-based interval bounds over samples (e.g. 0.025 / 0.975).
double percentile(std::vector<double> v, double q);

}  // namespace sa2fe::harness

#endif  // SA2FE_HARNESS_STATS_HPP
