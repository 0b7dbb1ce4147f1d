#include "aeadlint/stats.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aeadlint/errors.h"

namespace aeadlint {
namespace {

constexpr double kTolerance = 1e-12;
constexpr int kMaxIterations = 10000;

// Series expansion of P(a, x), good for x < a + 1.
double GammaPSeries(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kTolerance) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), good for x >= a + 1.
double GammaQContinuedFraction(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kTolerance) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double RegularizedGammaQ(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw std::invalid_argument("RegularizedGammaQ: need a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return std::clamp(1.0 - GammaPSeries(a, x), 0.0, 1.0);
  return std::clamp(GammaQContinuedFraction(a, x), 0.0, 1.0);
}

double ChiSquarePValue(double statistic, int df) {
  if (df < 1) throw std::invalid_argument("ChiSquarePValue: df must be >= 1");
  if (!(statistic >= 0.0)) {
    throw std::invalid_argument("ChiSquarePValue: statistic must be >= 0");
  }
  return RegularizedGammaQ(df / 2.0, statistic / 2.0);
}

double NormalQuantileTwoSided(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidConfidenceError("confidence must lie in (0, 1), got " +
                                 std::to_string(confidence));
  }
  if (confidence == 0.95) return kZ95;
  // Solve erfc(z / sqrt(2)) = 1 - confidence by bisection.
  const double tail = 1.0 - confidence;
  double lo = 0.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::erfc(mid / std::sqrt(2.0)) > tail) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

Interval WilsonInterval(const Proportion& p, double confidence) {
  const double z = NormalQuantileTwoSided(confidence);
  if (p.trials < 1 || p.successes < 0 || p.successes > p.trials) {
    throw std::invalid_argument("WilsonInterval: need 0 <= successes <= trials"
                                " and trials >= 1");
  }
  const double n = static_cast<double>(p.trials);
  const double phat = p.Rate();
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  Interval out{center - half, center + half};
  // Pin the bounds exactly at the edges and keep p-hat inside despite
  // rounding.
  if (p.successes == 0) out.lower = 0.0;
  if (p.successes == p.trials) out.upper = 1.0;
  out.lower = std::clamp(out.lower, 0.0, phat);
  out.upper = std::clamp(out.upper, phat, 1.0);
  return out;
}

std::int64_t ContingencyTable::Total() const {
  std::int64_t total = 0;
  for (const auto& row : counts) {
    for (std::int64_t c : row) total += c;
  }
  return total;
}

ContingencyTable ContingencyTable::FromProportions(
    const std::vector<std::string>& labels,
    const std::vector<Proportion>& groups) {
  ContingencyTable t;
  t.row_labels = labels;
  t.col_labels = {"success", "failure"};
  for (const Proportion& p : groups) {
    t.counts.push_back({p.successes, p.trials - p.successes});
  }
  return t;
}

ChiSquareResult ChiSquare(const ContingencyTable& table, bool yates) {
  const std::size_t r = table.rows();
  const std::size_t c = table.cols();
  if (r < 2 || c < 2) {
    throw DegenerateTableError("contingency table needs at least 2x2 cells");
  }
  for (const auto& row : table.counts) {
    if (row.size() != c) throw DegenerateTableError("ragged contingency table");
    for (std::int64_t v : row) {
      if (v < 0) throw DegenerateTableError("negative count in table");
    }
  }
  if (yates && (r != 2 || c != 2)) {
    throw YatesOnNon2x2Error("Yates correction applies to 2x2 tables only, got " +
                             std::to_string(r) + "x" + std::to_string(c));
  }

  std::vector<double> row_sum(r, 0.0);
  std::vector<double> col_sum(c, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      row_sum[i] += static_cast<double>(table.counts[i][j]);
      col_sum[j] += static_cast<double>(table.counts[i][j]);
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (row_sum[i] == 0.0) {
      throw DegenerateTableError("row " + std::to_string(i) + " sums to zero");
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (col_sum[j] == 0.0) {
      throw DegenerateTableError("column " + std::to_string(j) +
                                 " sums to zero");
    }
  }
  const double n = static_cast<double>(table.Total());

  ChiSquareResult out;
  out.yates_applied = yates;
  out.df = static_cast<int>((r - 1) * (c - 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double expected = row_sum[i] * col_sum[j] / n;
      if (expected < 5.0) out.low_expected_warning = true;
      double diff = std::fabs(static_cast<double>(table.counts[i][j]) - expected);
      if (yates) diff = std::max(0.0, diff - 0.5);
      out.statistic += diff * diff / expected;
    }
  }
  out.p_value = ChiSquarePValue(out.statistic, out.df);
  const double k = static_cast<double>(std::min(r, c) - 1);
  out.cramers_v = std::min(1.0, std::sqrt(out.statistic / (n * k)));
  return out;
}

ChiSquareResult ChiSquareDefault(const ContingencyTable& table) {
  return ChiSquare(table, table.rows() == 2 && table.cols() == 2);
}

}  // namespace aeadlint
