#include "subrank/laurent_series.hpp"

#include <algorithm>
#include <sstream>

#include "subrank/errors.hpp"

namespace subrank {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a == LaurentSeries::kInfinity || b == LaurentSeries::kInfinity) return LaurentSeries::kInfinity;
  return a + b;
}

}  // namespace

LaurentSeries::LaurentSeries(Field field) : field_(std::move(field)) {}

LaurentSeries LaurentSeries::zero_to_precision(const Field& field, std::int64_t order) {
  LaurentSeries s(field);
  s.exact_ = false;
  s.trunc_ = order;
  s.val_ = order;
  return s;
}

LaurentSeries LaurentSeries::monomial(const Field& field, const Scalar& c, std::int64_t exponent) {
  LaurentSeries s(field);
  s.val_ = exponent;
  s.coeffs_.push_back(c);
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::polynomial(const Field& field, std::int64_t val, std::vector<Scalar> coeffs) {
  LaurentSeries s(field);
  s.val_ = val;
  s.coeffs_ = std::move(coeffs);
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::truncated(const Field& field, std::int64_t val, std::vector<Scalar> coeffs,
                                       std::int64_t order) {
  LaurentSeries s(field);
  s.val_ = val;
  s.coeffs_ = std::move(coeffs);
  s.exact_ = false;
  s.trunc_ = order;
  s.normalize();
  return s;
}

void LaurentSeries::normalize() {
  if (!exact_) {
    const std::int64_t keep = std::max<std::int64_t>(0, trunc_ - val_);
    if (static_cast<std::int64_t>(coeffs_.size()) > keep) coeffs_.resize(static_cast<std::size_t>(keep));
  }
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return !Field::is_zero(c); });
  val_ += first - coeffs_.begin();
  coeffs_.erase(coeffs_.begin(), first);
  while (!coeffs_.empty() && Field::is_zero(coeffs_.back())) coeffs_.pop_back();
  if (coeffs_.empty()) {
    if (exact_) {
      val_ = 0;
      trunc_ = 0;
    } else {
      val_ = trunc_;
    }
  } else if (exact_) {
    trunc_ = end_exponent();
  }
}

std::optional<std::int64_t> LaurentSeries::valuation() const {
  if (coeffs_.empty()) return std::nullopt;
  return val_;
}

std::int64_t LaurentSeries::valuation_bound() const {
  if (!coeffs_.empty()) return val_;
  return exact_ ? kInfinity : trunc_;
}

std::optional<std::int64_t> LaurentSeries::truncation() const {
  if (exact_) return std::nullopt;
  return trunc_;
}

Scalar LaurentSeries::coeff(std::int64_t e) const {
  if (!exact_ && e >= trunc_) {
    throw PrecisionError("coefficient of t^" + std::to_string(e) + " is beyond truncation order " +
                         std::to_string(trunc_));
  }
  if (coeffs_.empty() || e < val_ || e >= end_exponent()) return field_.zero();
  return coeffs_[static_cast<std::size_t>(e - val_)];
}

const Scalar& LaurentSeries::leading_coefficient() const {
  if (coeffs_.empty()) throw PrecisionError("series has no certified leading coefficient");
  return coeffs_.front();
}

LaurentSeries LaurentSeries::truncate(std::int64_t order) const {
  if (!exact_ && trunc_ <= order) return *this;
  LaurentSeries s = *this;
  s.exact_ = false;
  s.trunc_ = order;
  if (s.coeffs_.empty()) s.val_ = order;
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::shift(std::int64_t k) const {
  LaurentSeries s = *this;
  if (s.is_zero()) return s;
  s.val_ += k;
  if (!s.exact_) s.trunc_ += k;
  if (s.exact_) s.trunc_ = s.end_exponent();
  return s;
}

LaurentSeries LaurentSeries::scale(const Scalar& c) const {
  if (Field::is_zero(c)) return LaurentSeries(field_);
  LaurentSeries s = *this;
  for (auto& x : s.coeffs_) x = field_.mul(x, c);
  return s;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries s = *this;
  for (auto& x : s.coeffs_) x = field_.neg(x);
  return s;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  return series_arith(a, b, SeriesOp::Add);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  return series_arith(a, -b, SeriesOp::Add);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  return series_arith(a, b, SeriesOp::Mul);
}

LaurentSeries series_arith(const LaurentSeries& a, const LaurentSeries& b, SeriesOp op) {
  require_same_field(a.field(), b.field(), "series_arith");
  const Field& F = a.field();
  using S = LaurentSeries;

  if (op == SeriesOp::Add) {
    const bool exact = a.is_exact() && b.is_exact();
    const std::int64_t order = std::min(a.order(), b.order());
    if (a.coefficients().empty() && b.coefficients().empty()) {
      return exact ? S(F) : S::zero_to_precision(F, order);
    }
    std::int64_t lo = S::kInfinity;
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const S* x : {&a, &b}) {
      if (x->coefficients().empty()) continue;
      lo = std::min(lo, x->offset());
      hi = std::max(hi, x->end_exponent());
    }
    if (!exact) hi = std::min(hi, order);
    std::vector<Scalar> out(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo)), F.zero());
    for (const S* x : {&a, &b}) {
      const auto& c = x->coefficients();
      for (std::size_t i = 0; i < c.size(); ++i) {
        const std::int64_t e = x->offset() + static_cast<std::int64_t>(i);
        if (e >= hi) break;
        auto& slot = out[static_cast<std::size_t>(e - lo)];
        slot = F.add(slot, c[i]);
      }
    }
    return exact ? S::polynomial(F, lo, std::move(out)) : S::truncated(F, lo, std::move(out), order);
  }

  if (a.is_zero() || b.is_zero()) return S(F);
  const bool exact = a.is_exact() && b.is_exact();
  std::int64_t order = S::kInfinity;
  if (!a.is_exact()) order = std::min(order, sat_add(a.order(), b.valuation_bound()));
  if (!b.is_exact()) order = std::min(order, sat_add(b.order(), a.valuation_bound()));
  if (a.coefficients().empty() || b.coefficients().empty()) return S::zero_to_precision(F, order);

  const std::int64_t base = a.offset() + b.offset();
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  std::size_t len = ca.size() + cb.size() - 1;
  if (!exact) len = static_cast<std::size_t>(std::clamp<std::int64_t>(order - base, 0, static_cast<std::int64_t>(len)));
  std::vector<Scalar> out(len, F.zero());
  for (std::size_t i = 0; i < ca.size() && i < len; ++i) {
    for (std::size_t j = 0; j < cb.size() && i + j < len; ++j) F.add_mul(out[i + j], ca[i], cb[j]);
  }
  return exact ? S::polynomial(F, base, std::move(out)) : S::truncated(F, base, std::move(out), order);
}

LaurentSeries invert_unit(const LaurentSeries& s, std::int64_t order) {
  const Field& F = s.field();
  if (s.is_zero()) throw SingularError("invert_unit: exact zero has no inverse");
  if (s.is_zero_to_precision()) {
    throw PrecisionError("invert_unit: valuation not certifiable, series is O(t^" + std::to_string(s.order()) + ")");
  }
  const std::int64_t v = *s.valuation();
  const auto& u = s.coefficients();
  if (s.is_exact() && u.size() == 1) return LaurentSeries::monomial(F, F.inv(u[0]), -v);
  if (!s.is_exact() && s.order() - v < order) {
    throw PrecisionError("invert_unit: input known mod t^" + std::to_string(s.order()) +
                         ", cannot reach requested order " + std::to_string(order));
  }
  const std::int64_t len = std::max<std::int64_t>(0, order);
  std::vector<Scalar> inv(static_cast<std::size_t>(len), F.zero());
  const Scalar lead_inv = F.inv(u[0]);
  for (std::int64_t k = 0; k < len; ++k) {
    Scalar acc = k == 0 ? F.one() : F.zero();
    for (std::int64_t i = 1; i <= k && i < static_cast<std::int64_t>(u.size()); ++i) {
      acc = F.sub(acc, F.mul(u[static_cast<std::size_t>(i)], inv[static_cast<std::size_t>(k - i)]));
    }
    inv[static_cast<std::size_t>(k)] = F.mul(acc, lead_inv);
  }
  return LaurentSeries::truncated(F, -v, std::move(inv), order - v);
}

bool LaurentSeries::is_zero_mod(std::int64_t order) const {
  const bool low_terms_vanish = coeffs_.empty() || val_ >= order;
  return low_terms_vanish && (exact_ || trunc_ >= order);
}

bool LaurentSeries::equals_mod(const LaurentSeries& other, std::int64_t order) const {
  return (*this - other).is_zero_mod(order);
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  if (!(a.field_ == b.field_) || a.exact_ != b.exact_) return false;
  if (!a.exact_ && a.trunc_ != b.trunc_) return false;
  return a.val_ == b.val_ && a.coeffs_ == b.coeffs_;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Scalar& c = coeffs_[i];
    if (Field::is_zero(c)) continue;
    const std::int64_t e = val_ + static_cast<std::int64_t>(i);
    std::string cs = field_.format(c);
    const bool negative = field_.is_rationals() && sgn(c) < 0;
    if (negative) cs = field_.format(-c);
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << "-";
    first = false;
    if (e == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << "t";
      if (e != 1) os << "^" << e;
    }
  }
  if (!exact_) {
    if (!first) os << " + ";
    os << "O(t^" << trunc_ << ")";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace subrank
