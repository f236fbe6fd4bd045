#pragma once

// Admissible smoothing functions a-hat used to weight the projector series.

#include <limits>
#include <string>

namespace ballneedlets {

enum class CutoffKind {
  TypeA,  ///< identically 1 on [0,1], supported in [0,2]
  TypeB,  ///< supported in [1/2,2], squares form a dyadic partition of unity
};

class Cutoff {
 public:
  static constexpr int kInfiniteSmoothness = std::numeric_limits<int>::max();

  explicit Cutoff(CutoffKind kind) : kind_(kind) {}

  CutoffKind kind() const { return kind_; }
  int smoothness() const { return kInfiniteSmoothness; }

  /// Support [lo, hi]; the value is exactly zero outside.
  double support_lo() const { return kind_ == CutoffKind::TypeA ? 0.0 : 0.5; }
  double support_hi() const { return 2.0; }

  double operator()(double t) const;

 private:
  CutoffKind kind_;
};

Cutoff make_type_a();
Cutoff make_type_b();

inline double eval(const Cutoff& c, double t) { return c(t); }

/// C-infinity transition exp(-1/s) for s > 0, zero otherwise.
double smooth_step_seed(double s);

/// Symmetric smooth transition nu(s) = g(s)/(g(s)+g(1-s)) with nu(s)+nu(1-s)=1.
double smooth_transition(double s);

CutoffKind parse_cutoff_kind(const std::string& s);
std::string to_string(CutoffKind k);

}  // namespace ballneedlets
