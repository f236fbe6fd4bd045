#include "ballneedlets/cutoff.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ballneedlets {

double smooth_step_seed(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double smooth_transition(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double g0 = smooth_step_seed(s);
  const double g1 = smooth_step_seed(1.0 - s);
  return g0 / (g0 + g1);
}

double Cutoff::operator()(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("Cutoff: argument must be nonnegative");
  constexpr double half_pi = 0.5 * std::numbers::pi;
  switch (kind_) {
    case CutoffKind::TypeA:
      if (t <= 1.0) return 1.0;
      if (t >= 2.0) return 0.0;
      {
        const double up = smooth_step_seed(2.0 - t);
        const double down = smooth_step_seed(t - 1.0);
        return up / (up + down);
      }
    case CutoffKind::TypeB:
      if (t <= 0.5 || t >= 2.0) return 0.0;
      if (t <= 1.0) return std::sin(half_pi * smooth_transition(2.0 * t - 1.0));
      return std::cos(half_pi * smooth_transition(t - 1.0));
  }
  return 0.0;
}

Cutoff make_type_a() { return Cutoff(CutoffKind::TypeA); }
Cutoff make_type_b() { return Cutoff(CutoffKind::TypeB); }

CutoffKind parse_cutoff_kind(const std::string& s) {
  if (s == "a" || s == "A") return CutoffKind::TypeA;
  if (s == "b" || s == "B") return CutoffKind::TypeB;
  throw std::invalid_argument("unknown cutoff kind '" + s + "' (expected a or b)");
}

std::string to_string(CutoffKind k) { return k == CutoffKind::TypeA ? "a" : "b"; }

}  // namespace ballneedlets
