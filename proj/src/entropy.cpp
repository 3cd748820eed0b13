#include "lcbound/entropy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lcb {

RenyiOrder RenyiOrder::of(double alpha) {
  if (std::isnan(alpha) || alpha < 0.0) throw std::invalid_argument("Renyi order must be >= 0");
  if (std::isinf(alpha)) return infinity();
  if (alpha == 0.0) return RenyiOrder(Kind::zero, 0.0);
  if (std::abs(alpha - 1.0) <= 1e-9) return shannon();
  return RenyiOrder(Kind::generic, alpha);
}

RenyiOrder RenyiOrder::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "+inf" || text == "Inf") return infinity();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("malformed Renyi order: '" + std::string(text) + "'");
  }
  return of(value);
}

std::string RenyiOrder::to_string() const {
  if (kind_ == Kind::infinite) return "inf";
  std::ostringstream os;
  os << value_;
  return os.str();
}

double renyi_entropy(const LatticeDistribution& d, RenyiOrder alpha) {
  const auto pmf = d.pmf();
  switch (alpha.kind()) {
    case RenyiOrder::Kind::zero:
      return std::log(static_cast<double>(d.atom_count()));
    case RenyiOrder::Kind::shannon: {
      double h = 0.0;
      for (double v : pmf) {
        if (v > 0.0) h -= v * std::log(v);
      }
      return h;
    }
    case RenyiOrder::Kind::infinite:
      return -std::log(m_functional(d));
    case RenyiOrder::Kind::generic:
      break;
  }
  // sum p^a = M^a * sum (p/M)^a keeps large orders from underflowing.
  const double a = alpha.value();
  const double peak = m_functional(d);
  double s = 0.0;
  for (double v : pmf) {
    if (v > 0.0) s += std::pow(v / peak, a);
  }
  return (a * std::log(peak) + std::log(s)) / (1.0 - a);
}

double entropy_power(const LatticeDistribution& d, RenyiOrder alpha) {
  return std::exp(2.0 * renyi_entropy(d, alpha));
}

double m_functional(const LatticeDistribution& d) {
  const auto pmf = d.pmf();
  return *std::max_element(pmf.begin(), pmf.end());
}

double delta(const LatticeDistribution& d, RenyiOrder alpha) {
  return std::expm1(2.0 * renyi_entropy(d, alpha));
}

}  // namespace lcb
