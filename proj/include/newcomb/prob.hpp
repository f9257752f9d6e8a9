#pragma once

// Exact probability primitives: rationals, finite outcome spaces,
// distributions and conditional probability tables.
//
// Nothing in here touches floating point except `to_double`, which exists
// for reporting only.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "newcomb/error.hpp"

namespace newcomb {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders as "num/den" in lowest terms; integers keep the "/1".
std::string to_string(const Rational& r);

/// Parses "num/den" or a bare integer. When `allow_decimal` is set, a finite
/// decimal such as "0.75" is also accepted and converted exactly.
Rational parse_rational(std::string_view text, bool allow_decimal = false);

double to_double(const Rational& r);

/// A rational in [0, 1].
class Prob {
 public:
  Prob() = default;
  Prob(const Rational& value);  // NOLINT: implicit on purpose, checked
  Prob(long num, long den) : Prob(Rational(num, den)) {}

  static Prob zero() { return Prob(); }
  static Prob one() { return Prob(Rational(1)); }
  static Prob parse(std::string_view text, bool allow_decimal = false) {
    return Prob(parse_rational(text, allow_decimal));
  }

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const Prob&, const Prob&) = default;
  friend auto operator<=>(const Prob& a, const Prob& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_{0};
};

inline Prob operator*(const Prob& a, const Prob& b) { return Prob(a.value() * b.value()); }
inline std::string to_string(const Prob& p) { return to_string(p.value()); }

/// Ordered, distinct labels of a discrete variable. Declaration order is the
/// canonical order for iteration, tie-breaking and sampling.
class OutcomeSpace {
 public:
  OutcomeSpace() = default;
  explicit OutcomeSpace(std::vector<std::string> labels);
  OutcomeSpace(std::initializer_list<std::string> labels)
      : OutcomeSpace(std::vector<std::string>(labels)) {}

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool contains(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;

 private:
  std::vector<std::string> labels_;
};

/// A normalized distribution over an OutcomeSpace.
class Dist {
 public:
  const OutcomeSpace& space() const noexcept { return space_; }
  const std::vector<Prob>& masses() const noexcept { return mass_; }
  const Prob& mass(std::size_t i) const { return mass_.at(i); }
  const Prob& mass(std::string_view label) const { return mass_.at(space_.index_of(label)); }
  std::size_t size() const noexcept { return mass_.size(); }

  /// Index of the single outcome carrying all the mass, if there is one.
  std::optional<std::size_t> delta_index() const;
  bool full_support() const;

  friend bool operator==(const Dist&, const Dist&) = default;

 private:
  friend Dist make_dist(OutcomeSpace, std::span<const Rational>);
  Dist(OutcomeSpace space, std::vector<Prob> mass)
      : space_(std::move(space)), mass_(std::move(mass)) {}

  OutcomeSpace space_;
  std::vector<Prob> mass_;
};

Dist make_dist(OutcomeSpace space, std::span<const Rational> weights);
Dist make_dist(OutcomeSpace space, std::span<const Prob> weights);
Dist make_dist(OutcomeSpace space, std::initializer_list<Rational> weights);

Dist delta(const OutcomeSpace& space, std::string_view outcome);
Dist delta(const OutcomeSpace& space, std::size_t index);
Dist uniform(const OutcomeSpace& space);

/// Every deterministic distribution over `space`, in canonical order.
std::vector<Dist> all_deltas(const OutcomeSpace& space);

/// Half the L1 distance between two distributions on the same space.
Rational total_variation(const Dist& a, const Dist& b);

/// Conditional probability table P(target | given...). Rows are indexed by
/// the joint assignment of the conditioning variables in row-major order
/// (first conditioning variable most significant). With no conditioning
/// variables there is exactly one row, i.e. a plain distribution.
class Cpd {
 public:
  Cpd(std::vector<OutcomeSpace> given, OutcomeSpace target, std::vector<Dist> rows);

  static Cpd unconditional(Dist dist);
  static Cpd single(OutcomeSpace given, std::vector<Dist> rows) {
    auto target = rows.empty() ? OutcomeSpace{} : rows.front().space();
    return Cpd({std::move(given)}, std::move(target), std::move(rows));
  }

  const std::vector<OutcomeSpace>& given() const noexcept { return given_; }
  const OutcomeSpace& target() const noexcept { return target_; }
  const std::vector<Dist>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }

  const Dist& row(std::size_t index) const { return rows_.at(index); }
  /// Row selected by one outcome index per conditioning variable.
  const Dist& row(std::span<const std::size_t> parent_assignment) const;

  friend bool operator==(const Cpd&, const Cpd&) = default;

 private:
  std::vector<OutcomeSpace> given_;
  OutcomeSpace target_;
  std::vector<Dist> rows_;
};

/// Predictor that reproduces the conditioning outcome with probability
/// `alpha`. Two outcomes only unless `allow_multi` is set, in which case the
/// remaining 1 - alpha is spread evenly over the wrong outcomes.
Cpd alpha_accurate_cpd(const Prob& alpha, const OutcomeSpace& space, bool allow_multi = false);

/// A conditional table extracted from a joint. Rows whose conditioning
/// outcome has zero mass are left undefined.
struct PartialCpd {
  OutcomeSpace given;
  OutcomeSpace target;
  std::vector<std::optional<Dist>> rows;

  std::size_t defined_count() const;
  /// True when every defined row equals the same distribution.
  bool rows_identical() const;

  friend bool operator==(const PartialCpd&, const PartialCpd&) = default;
};

}  // namespace newcomb
