#include "sagraph/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sagraph {

namespace {

constexpr double kExponentTol = 1e-12;

bool same_exponent(double a, double b) { return std::abs(a - b) <= kExponentTol; }

}  // namespace

double PowerTerm::operator()(std::int64_t n) const {
  if (coef == 0.0) return 0.0;
  return coef * std::pow(static_cast<double>(n + shift), exponent);
}

double RowFormula::operator()(std::int64_t n) const {
  double acc = 0.0;
  for (const auto& t : terms) acc += t(n);
  return acc;
}

RowFormula RowFormula::negated() const {
  RowFormula out = *this;
  for (auto& t : out.terms) t.coef = -t.coef;
  return out;
}

RowFormula& RowFormula::operator+=(const RowFormula& other) {
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

std::string RowFormula::describe() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (i > 0) os << (t.coef < 0 ? " - " : " + ");
    else if (t.coef < 0) os << "-";
    os << std::abs(t.coef) << "*(n";
    if (t.shift > 0) os << "+" << t.shift;
    if (t.shift < 0) os << t.shift;
    os << ")^" << t.exponent;
  }
  return os.str();
}

std::optional<SupremumBound> certified_supremum(const RowFormula& f, std::int64_t first_row,
                                                std::int64_t row_cap) {
  double constant = 0.0;
  std::vector<PowerTerm> growing;
  double lead_exponent = -std::numeric_limits<double>::infinity();
  for (const auto& t : f.terms) {
    if (t.coef > 0.0) {
      // non-increasing terms are bounded by their value at the first row
      if (t.exponent <= 0.0) constant += t(first_row);
      else growing.push_back(t);
    } else if (t.coef < 0.0 && t.exponent > 0.0) {
      lead_exponent = std::max(lead_exponent, t.exponent);
    }
  }
  if (growing.empty()) return SupremumBound{std::max(0.0, constant), first_row};
  if (!(lead_exponent > 0.0)) return std::nullopt;

  double lead_coef = 0.0;
  int lead_shift = std::numeric_limits<int>::max();
  for (const auto& t : f.terms) {
    if (t.coef < 0.0 && same_exponent(t.exponent, lead_exponent)) {
      lead_coef += -t.coef;
      lead_shift = std::min(lead_shift, t.shift);
    }
  }
  int max_shift = lead_shift;
  double same_order = 0.0;
  for (const auto& t : growing) {
    if (t.exponent > lead_exponent + kExponentTol) return std::nullopt;
    if (same_exponent(t.exponent, lead_exponent)) same_order += t.coef;
    max_shift = std::max(max_shift, t.shift);
  }
  if (same_order >= lead_coef) return std::nullopt;
  if (first_row + lead_shift < 1) return std::nullopt;

  // R(n) is non-increasing: every numerator exponent is <= lead_exponent and
  // the numerator shift is >= the denominator shift.
  auto ratio = [&](std::int64_t n) {
    double num = constant;
    for (const auto& t : growing) {
      num += t.coef * std::pow(static_cast<double>(n + max_shift), t.exponent);
    }
    return num / (lead_coef * std::pow(static_cast<double>(n + lead_shift), lead_exponent));
  };

  std::int64_t settle = first_row;
  if (ratio(first_row) > 1.0) {
    std::int64_t lo = first_row;
    std::int64_t hi = std::max<std::int64_t>(2 * first_row, first_row + 1);
    while (ratio(hi) > 1.0) {
      lo = hi;
      hi *= 2;
      if (hi > row_cap) return std::nullopt;
    }
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (ratio(mid) > 1.0) lo = mid;
      else hi = mid;
    }
    settle = hi;
  }

  double bound = 0.0;
  for (std::int64_t n = first_row; n < settle; ++n) bound = std::max(bound, f(n));
  return SupremumBound{bound, settle};
}

bool certified_unbounded(const RowFormula& f) {
  double pos_exp = -std::numeric_limits<double>::infinity();
  double neg_exp = -std::numeric_limits<double>::infinity();
  for (const auto& t : f.terms) {
    if (t.coef > 0.0) pos_exp = std::max(pos_exp, t.exponent);
    if (t.coef < 0.0) neg_exp = std::max(neg_exp, t.exponent);
  }
  if (!(pos_exp > 0.0)) return false;
  if (pos_exp > neg_exp + kExponentTol) return true;
  if (!same_exponent(pos_exp, neg_exp)) return false;
  double pos = 0.0;
  double neg = 0.0;
  for (const auto& t : f.terms) {
    if (t.coef > 0.0 && same_exponent(t.exponent, pos_exp)) pos += t.coef;
    if (t.coef < 0.0 && same_exponent(t.exponent, neg_exp)) neg += -t.coef;
  }
  return pos > neg;
}

}  // namespace sagraph
