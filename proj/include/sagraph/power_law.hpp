#pragma once

// Row-indexed power laws and the two asymptotic certificates the criteria
// rely on: a finite supremum over all rows, and unbounded growth.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sagraph {

/// coef * (n + shift)^exponent for integer rows n with n + shift >= 1.
struct PowerTerm {
  double coef = 0.0;
  double exponent = 0.0;
  int shift = 0;

  double operator()(std::int64_t n) const;
};

/// Sum of power terms in the row index.
struct RowFormula {
  std::vector<PowerTerm> terms;

  double operator()(std::int64_t n) const;
  bool empty() const noexcept { return terms.empty(); }
  RowFormula negated() const;
  RowFormula& operator+=(const RowFormula& other);
  std::string describe() const;

  static RowFormula zero() { return {}; }
  static RowFormula power(double coef, double exponent, int shift = 0) {
    return RowFormula{{PowerTerm{coef, exponent, shift}}};
  }
};

struct SupremumBound {
  /// sup_{n >= first_row} f(n) <= bound.
  double bound = 0.0;
  /// f(n) <= 0 for every n >= settle_row.
  std::int64_t settle_row = 0;
};

/// Certifies that f = sum of terms is bounded above on n >= first_row and
/// returns an explicit bound. nullopt when no certificate is found within
/// `row_cap` rows (including the case where f really is unbounded).
std::optional<SupremumBound> certified_supremum(const RowFormula& f, std::int64_t first_row,
                                                std::int64_t row_cap = 10'000'000);

/// True when f(n) -> +infinity is certified by leading-order comparison.
bool certified_unbounded(const RowFormula& f);

}  // namespace sagraph
