#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "lcbound/lattice_dist.hpp"

namespace lcb {

/// Order of a Renyi entropy, alpha in [0, +inf].
///
/// The special orders 0, 1 and infinity are kept distinct from the generic
/// case so that each is evaluated by its own limit formula.
class RenyiOrder {
 public:
  enum class Kind { zero, generic, shannon, infinite };

  /// Orders within 1e-9 of one are treated as Shannon.
  static RenyiOrder of(double alpha);
  static RenyiOrder infinity() { return RenyiOrder(Kind::infinite, kInf); }
  static RenyiOrder shannon() { return RenyiOrder(Kind::shannon, 1.0); }

  /// Accepts a decimal number or "inf" / "infinity".
  static RenyiOrder parse(std::string_view text);

  Kind kind() const { return kind_; }
  double value() const { return value_; }
  bool is_infinite() const { return kind_ == Kind::infinite; }

  std::string to_string() const;

  friend bool operator==(const RenyiOrder& a, const RenyiOrder& b) { return a.value_ == b.value_; }
  friend auto operator<=>(const RenyiOrder& a, const RenyiOrder& b) { return a.value_ <=> b.value_; }

 private:
  static constexpr double kInf = __builtin_huge_val();
  RenyiOrder(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

/// Renyi entropy in nats. Zero atoms are ignored.
double renyi_entropy(const LatticeDistribution& d, RenyiOrder alpha);

/// exp(2 H_alpha).
double entropy_power(const LatticeDistribution& d, RenyiOrder alpha);

/// Largest atom, sup_x P(X = x) = exp(-H_inf).
double m_functional(const LatticeDistribution& d);

/// N_alpha - 1.
double delta(const LatticeDistribution& d, RenyiOrder alpha);

}  // namespace lcb
