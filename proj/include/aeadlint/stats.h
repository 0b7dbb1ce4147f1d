#ifndef AEADLINT_STATS_H_
#define AEADLINT_STATS_H_

#include <cstdint>
#include <string>
#include <vector>

namespace aeadlint {

struct Proportion {
  std::int64_t successes = 0;
  std::int64_t trials = 0;

  double Rate() const {
    return static_cast<double>(successes) / static_cast<double>(trials);
  }

  friend bool operator==(const Proportion&, const Proportion&) = default;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline constexpr double kZ95 = 1.959964;

// Two-sided standard normal quantile, e.g. 1.959964 for 0.95.
double NormalQuantileTwoSided(double confidence);

// Wilson score interval. Throws InvalidConfidenceError unless
// 0 < confidence < 1, and std::invalid_argument on a malformed proportion.
Interval WilsonInterval(const Proportion& p, double confidence = 0.95);

struct ContingencyTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<std::int64_t>> counts;  // rows x cols

  std::size_t rows() const { return counts.size(); }
  std::size_t cols() const { return counts.empty() ? 0 : counts[0].size(); }
  std::int64_t Total() const;

  // One row per group: (successes, failures), columns "success"/"failure".
  static ContingencyTable FromProportions(
      const std::vector<std::string>& labels,
      const std::vector<Proportion>& groups);
};

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  double cramers_v = 0.0;
  bool yates_applied = false;
  // Set when some expected count is below 5.
  bool low_expected_warning = false;

  friend bool operator==(const ChiSquareResult&, const ChiSquareResult&) = default;
};

// Pearson chi-square test of independence. Throws DegenerateTableError for
// fewer than 2 rows/columns, ragged or negative counts, or a zero marginal,
// and YatesOnNon2x2Error when `yates` is requested on a table other than
// 2x2.
ChiSquareResult ChiSquare(const ContingencyTable& table, bool yates);

// Yates on for 2x2 tables, off otherwise.
ChiSquareResult ChiSquareDefault(const ContingencyTable& table);

// Upper tail of the chi-square distribution, Q(df/2, x/2).
double ChiSquarePValue(double statistic, int df);

// Regularized upper incomplete gamma function Q(a, x), a > 0, x >= 0.
double RegularizedGammaQ(double a, double x);

}  // namespace aeadlint

#endif  // AEADLINT_STATS_H_
