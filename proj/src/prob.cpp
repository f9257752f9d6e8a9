#include "newcomb/prob.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace newcomb {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NegativeMass: return "NegativeMass";
    case Errc::UnknownOutcome: return "UnknownOutcome";
    case Errc::UnsupportedArity: return "UnsupportedArity";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::ProfileMismatch: return "ProfileMismatch";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::IncompleteFixed: return "IncompleteFixed";
    case Errc::VariableMismatch: return "VariableMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidProfile: return "InvalidProfile";
    case Errc::InvalidNet: return "InvalidNet";
    case Errc::NoPayoff: return "NoPayoff";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(Errc::Parse, "not a rational: '" + std::string(whole) + "'");
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::Parse, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw Error(Errc::Parse, "bad denominator in '" + std::string(text) + "'");
    Integer den(std::string{den_text});
    if (den == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    if (!allow_decimal) {
      throw Error(Errc::Parse, "decimal '" + std::string(text) + "' is lossy in exact mode; write num/den");
    }
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw Error(Errc::Parse, "not a decimal: '" + std::string(text) + "'");
    }
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_part.size()));
    Integer whole = int_part.empty() ? Integer(0) : Integer(std::string(int_part));
    Integer frac = frac_part.empty() ? Integer(0) : Integer(std::string(frac_part));
    Rational value(whole * scale + frac, scale);
    return negative ? Rational(-value) : value;
  }

  return Rational(parse_integer(text, text));
}

Prob::Prob(const Rational& value) : value_(value) {
  if (value < 0 || value > 1) throw Error(Errc::OutOfRange, to_string(value) + " is not in [0, 1]");
}

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) throw Error(Errc::SpaceMismatch, "an outcome space needs at least 2 labels");
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw Error(Errc::SpaceMismatch, "empty outcome label");
    if (!seen.insert(l).second) throw Error(Errc::SpaceMismatch, "duplicate outcome label '" + l + "'");
  }
}

bool OutcomeSpace::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t OutcomeSpace::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(Errc::UnknownOutcome, "no outcome '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::optional<std::size_t> Dist::delta_index() const {
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    if (mass_[i].value() == 1) return i;
  }
  return std::nullopt;
}

bool Dist::full_support() const {
  return std::none_of(mass_.begin(), mass_.end(), [](const Prob& p) { return p.is_zero(); });
}

Dist make_dist(OutcomeSpace space, std::span<const Rational> weights) {
  if (weights.size() != space.size()) {
    throw Error(Errc::ShapeMismatch, "expected " + std::to_string(space.size()) + " weights, got " +
                                         std::to_string(weights.size()));
  }
  Rational sum = 0;
  for (const auto& w : weights) {
    if (w < 0) throw Error(Errc::NegativeMass, "weight " + to_string(w) + " is negative");
    sum += w;
  }
  if (sum != 1) throw Error(Errc::NotNormalized, "weights sum to " + to_string(sum));
  std::vector<Prob> mass(weights.begin(), weights.end());
  return Dist(std::move(space), std::move(mass));
}

Dist make_dist(OutcomeSpace space, std::span<const Prob> weights) {
  std::vector<Rational> raw;
  raw.reserve(weights.size());
  for (const auto& p : weights) raw.push_back(p.value());
  return make_dist(std::move(space), raw);
}

Dist make_dist(OutcomeSpace space, std::initializer_list<Rational> weights) {
  return make_dist(std::move(space), std::span<const Rational>(weights.begin(), weights.size()));
}

Dist delta(const OutcomeSpace& space, std::size_t index) {
  if (index >= space.size()) throw Error(Errc::UnknownOutcome, "outcome index out of range");
  std::vector<Rational> w(space.size(), Rational(0));
  w[index] = 1;
  return make_dist(space, w);
}

Dist delta(const OutcomeSpace& space, std::string_view outcome) {
  return delta(space, space.index_of(outcome));
}

Dist uniform(const OutcomeSpace& space) {
  std::vector<Rational> w(space.size(), Rational(1, static_cast<long>(space.size())));
  return make_dist(space, w);
}

std::vector<Dist> all_deltas(const OutcomeSpace& space) {
  std::vector<Dist> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) out.push_back(delta(space, i));
  return out;
}

Rational total_variation(const Dist& a, const Dist& b) {
  if (a.space() != b.space()) throw Error(Errc::SpaceMismatch, "total variation needs a common space");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += abs(a.mass(i).value() - b.mass(i).value());
  return sum / 2;
}

Cpd::Cpd(std::vector<OutcomeSpace> given, OutcomeSpace target, std::vector<Dist> rows)
    : given_(std::move(given)), target_(std::move(target)), rows_(std::move(rows)) {
  std::size_t expected = 1;
  for (const auto& g : given_) expected *= g.size();
  if (rows_.size() != expected) {
    throw Error(Errc::ShapeMismatch, "conditional table needs " + std::to_string(expected) + " rows, got " +
                                         std::to_string(rows_.size()));
  }
  for (const auto& r : rows_) {
    if (r.space() != target_) throw Error(Errc::SpaceMismatch, "row space differs from target space");
  }
}

Cpd Cpd::unconditional(Dist dist) {
  OutcomeSpace target = dist.space();
  return Cpd({}, std::move(target), {std::move(dist)});
}

const Dist& Cpd::row(std::span<const std::size_t> parent_assignment) const {
  if (parent_assignment.size() != given_.size()) throw Error(Errc::ShapeMismatch, "wrong number of parent values");
  std::size_t index = 0;
  for (std::size_t i = 0; i < given_.size(); ++i) {
    if (parent_assignment[i] >= given_[i].size()) throw Error(Errc::UnknownOutcome, "parent value out of range");
    index = index * given_[i].size() + parent_assignment[i];
  }
  return rows_[index];
}

Cpd alpha_accurate_cpd(const Prob& alpha, const OutcomeSpace& space, bool allow_multi) {
  const std::size_t n = space.size();
  if (n != 2 && !allow_multi) {
    throw Error(Errc::UnsupportedArity, "the alpha-accurate predictor is defined for 2 outcomes; pass allow_multi");
  }
  const Rational miss = (1 - alpha.value()) / static_cast<long>(n - 1);
  std::vector<Dist> rows;
  rows.reserve(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<Rational> w(n, miss);
    w[y] = alpha.value();
    rows.push_back(make_dist(space, w));
  }
  return Cpd::single(space, std::move(rows));
}

std::size_t PartialCpd::defined_count() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.has_value(); }));
}

bool PartialCpd::rows_identical() const {
  const Dist* first = nullptr;
  for (const auto& r : rows) {
    if (!r) continue;
    if (!first) {
      first = &*r;
    } else if (!(*r == *first)) {
      return false;
    }
  }
  return true;
}

}  // namespace newcomb
