#include "ballneedlets/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "ballneedlets/orthopoly.hpp"

namespace ballneedlets {

namespace {

// staircase coordinates w in [0,M]^d (w_1 >= ... >= w_d) -> barycentric t in R^{d+1}
Eigen::VectorXd staircase_to_barycentric(const Eigen::VectorXd& w, int M) {
  const Eigen::Index d = w.size();
  Eigen::VectorXd t(d + 1);
  const Eigen::VectorXd z = w / static_cast<double>(M);
  t[0] = 1.0 - z[0];
  for (Eigen::Index i = 1; i < d; ++i) t[i] = z[i - 1] - z[i];
  t[d] = z[d - 1];
  return t;
}

Eigen::VectorXd barycentric_to_staircase(const Eigen::VectorXd& t, int M) {
  const Eigen::Index d = t.size() - 1;
  Eigen::VectorXd w(d);
  double tail = 0.0;
  for (Eigen::Index i = d - 1; i >= 0; --i) {
    tail += t[i + 1];
    w[i] = M * tail;
  }
  return w;
}

double sphere_angle(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return 2.0 * std::asin(std::min(1.0, 0.5 * (u - v).norm()));
}

// sorted descending by value, ties by ascending index
Eigen::VectorXi descending_order(const Eigen::VectorXd& y) {
  std::vector<int> idx(y.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return y[a] > y[b]; });
  return Eigen::Map<Eigen::VectorXi>(idx.data(), static_cast<Eigen::Index>(idx.size()));
}

bool perm_valid_for_corner(const Eigen::VectorXi& corner, const Eigen::VectorXi& perm) {
  const Eigen::Index d = corner.size();
  std::vector<int> pos(d);
  for (Eigen::Index k = 0; k < d; ++k) pos[perm[k]] = static_cast<int>(k);
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    if (corner[i] < corner[i + 1]) return false;
    if (corner[i] == corner[i + 1] && pos[i] > pos[i + 1]) return false;
  }
  return true;
}

std::vector<int> cell_key(const Eigen::VectorXi& corner, const Eigen::VectorXi& perm) {
  std::vector<int> key(corner.data(), corner.data() + corner.size());
  key.insert(key.end(), perm.data(), perm.data() + perm.size());
  return key;
}

// Lookup table shared by locate/containing_cells; rebuilt on demand (cheap for desk scale).
std::map<std::vector<int>, int> local_index(const PointSet& ps) {
  std::map<std::vector<int>, int> table;
  for (int k = 0; k < ps.cells_per_orthant; ++k)
    table.emplace(cell_key(ps.cells[k].corner, ps.cells[k].perm), k);
  return table;
}

bool inside_freudenthal(const Eigen::VectorXd& y, const Eigen::VectorXi& perm, double tol) {
  const Eigen::Index d = y.size();
  if (y[perm[0]] > 1.0 + tol) return false;
  for (Eigen::Index k = 0; k + 1 < d; ++k)
    if (y[perm[k]] < y[perm[k + 1]] - tol) return false;
  return y[perm[d - 1]] >= -tol;
}

}  // namespace

Eigen::VectorXd lift_to_hemisphere(const PointRef& x) { return lift(x); }

Eigen::VectorXd simplex_map(const PointRef& xi) { return xi / xi.sum(); }

Eigen::VectorXd simplex_unmap(const PointRef& t) { return t.normalized(); }

int subdivision_count(double epsilon, int d) {
  if (!(epsilon > 0.0) || d < 1) throw std::invalid_argument("subdivision_count: need epsilon > 0 and d >= 1");
  return static_cast<int>(std::ceil(2.0 * std::sqrt(static_cast<double>(d)) / epsilon - 1e-12));
}

PointSet build_point_set(double epsilon, int d, double mu) {
  if (!(epsilon > 0.0) || epsilon > std::numbers::pi)
    throw std::invalid_argument("build_point_set: epsilon must lie in (0, pi]");
  if (d < 2) throw std::invalid_argument("build_point_set: d must be at least 2");
  if (!(mu >= 0.0)) throw std::invalid_argument("build_point_set: mu must be nonnegative");

  PointSet ps;
  ps.epsilon = epsilon;
  ps.d = d;
  ps.mu = mu;
  ps.M = subdivision_count(epsilon, d);
  const int M = ps.M;

  // positive-orthant cells
  std::vector<PartitionCell> local;
  Eigen::VectorXi corner = Eigen::VectorXi::Zero(d);
  Eigen::VectorXi perm0(d);
  std::iota(perm0.data(), perm0.data() + d, 0);
  while (true) {
    bool monotone = true;
    for (int i = 0; i + 1 < d; ++i) monotone = monotone && corner[i] >= corner[i + 1];
    if (monotone) {
      Eigen::VectorXi perm = perm0;
      do {
        if (!perm_valid_for_corner(corner, perm)) continue;
        PartitionCell cell;
        cell.epsilon = epsilon;
        cell.corner = corner;
        cell.perm = perm;
        cell.vertices.resize(d + 1, d + 1);
        Eigen::VectorXd w = corner.cast<double>();
        Eigen::VectorXd bary = Eigen::VectorXd::Zero(d + 1);
        for (int k = 0; k <= d; ++k) {
          if (k > 0) w[perm[k - 1]] += 1.0;
          const Eigen::VectorXd t = staircase_to_barycentric(w, M);
          bary += t;
          cell.vertices.col(k) = t.normalized();
        }
        bary /= (d + 1);
        cell.center = bary.normalized().head(d);
        local.push_back(std::move(cell));
      } while (std::next_permutation(perm.data(), perm.data() + d));
    }
    int i = d - 1;
    while (i >= 0 && corner[i] == M - 1) corner[i--] = 0;
    if (i < 0) break;
    ++corner[i];
  }

  ps.cells_per_orthant = static_cast<int>(local.size());
  const int orthants = 1 << d;
  const Eigen::Index total = static_cast<Eigen::Index>(orthants) * ps.cells_per_orthant;
  ps.cells.reserve(total);
  ps.points.resize(d, total);
  ps.surrogates.resize(total);
  for (int o = 0; o < orthants; ++o) {
    for (const PartitionCell& base : local) {
      PartitionCell cell = base;
      cell.orthant = o;
      for (int i = 0; i < d; ++i) {
        if (o & (1 << i)) {
          cell.center[i] = -cell.center[i];
          cell.vertices.row(i) *= -1.0;
        }
      }
      ps.cells.push_back(std::move(cell));
    }
  }
  double total_mass = 0.0;
  for (Eigen::Index k = 0; k < total; ++k) {
    PartitionCell& cell = ps.cells[k];
    ps.points.col(k) = cell.center;
    const double h = std::sqrt(std::max(0.0, 1.0 - cell.center.squaredNorm()));
    cell.measure_surrogate = std::pow(epsilon, d) * std::pow(h + epsilon, 2.0 * mu);
    total_mass += cell.measure_surrogate;
  }
  const double target = 1.0 / BallWeightParams::make(mu, d).b;
  for (Eigen::Index k = 0; k < total; ++k) {
    ps.cells[k].measure_surrogate *= target / total_mass;
    ps.surrogates[k] = ps.cells[k].measure_surrogate;
  }
  return ps;
}

std::vector<int> PointSet::containing_cells(const PointRef& x, double tol) const {
  std::vector<int> out;
  const Eigen::VectorXd up = lift(x);
  Eigen::VectorXd t = up.cwiseAbs();
  t /= t.sum();
  const Eigen::VectorXd w = barycentric_to_staircase(t, M);
  const auto table = local_index(*this);

  std::vector<Eigen::VectorXi> corners;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Eigen::VectorXi c(d);
    bool ok = true;
    for (int i = 0; i < d; ++i) {
      int ci = static_cast<int>(std::floor(w[i])) - ((mask >> i) & 1);
      ok = ok && ci >= 0 && ci <= M - 1;
      c[i] = ci;
    }
    if (ok) corners.push_back(c);
  }
  std::vector<int> locals;
  for (const Eigen::VectorXi& c : corners) {
    const Eigen::VectorXd y = w - c.cast<double>();
    Eigen::VectorXi perm(d);
    std::iota(perm.data(), perm.data() + d, 0);
    do {
      if (!perm_valid_for_corner(c, perm)) continue;
      if (!inside_freudenthal(y, perm, tol)) continue;
      auto it = table.find(cell_key(c, perm));
      if (it != table.end()) locals.push_back(it->second);
    } while (std::next_permutation(perm.data(), perm.data() + d));
  }
  for (int o = 0; o < (1 << d); ++o) {
    bool ok = true;
    for (int i = 0; i < d; ++i) {
      const bool negative = (o >> i) & 1;
      if (std::abs(x[i]) <= tol) continue;
      ok = ok && (negative == (x[i] < 0));
    }
    if (!ok) continue;
    for (int l : locals) out.push_back(o * cells_per_orthant + l);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int PointSet::locate(const PointRef& x) const {
  const Eigen::VectorXd up = lift(x);
  Eigen::VectorXd t = up.cwiseAbs();
  t /= t.sum();
  const Eigen::VectorXd w = barycentric_to_staircase(t, M);
  Eigen::VectorXi c(d);
  for (int i = 0; i < d; ++i) c[i] = std::clamp(static_cast<int>(std::floor(w[i])), 0, M - 1);
  const Eigen::VectorXd y = w - c.cast<double>();
  const Eigen::VectorXi perm = descending_order(y);
  int orthant = 0;
  for (int i = 0; i < d; ++i)
    if (x[i] < 0) orthant |= 1 << i;
  const auto table = local_index(*this);
  auto it = table.find(cell_key(c, perm));
  if (it != table.end() && inside_freudenthal(y, perm, 1e-9))
    return orthant * cells_per_orthant + it->second;
  const std::vector<int> candidates = containing_cells(x, 1e-9);
  if (candidates.empty()) throw std::runtime_error("PointSet::locate: point not covered");
  return candidates.front();
}

InclusionRadii cell_inclusion_check(const PartitionCell& cell) {
  const Eigen::Index dim = cell.vertices.rows();  // d + 1
  const Eigen::VectorXd c = lift(cell.center);
  InclusionRadii r;
  for (Eigen::Index k = 0; k < dim; ++k)
    r.r_outer = std::max(r.r_outer, sphere_angle(c, cell.vertices.col(k)));

  double inner = std::numbers::pi;
  if (dim == 3) {
    // facets are great-circle arcs: exact point-to-arc distance
    for (Eigen::Index skip = 0; skip < 3; ++skip) {
      const Eigen::Vector3d a = cell.vertices.col((skip + 1) % 3);
      const Eigen::Vector3d b = cell.vertices.col((skip + 2) % 3);
      const Eigen::Vector3d cc = c;
      const Eigen::Vector3d n = a.cross(b).normalized();
      const Eigen::Vector3d proj = cc - cc.dot(n) * n;
      double dist;
      const bool inside_arc =
          proj.norm() > 0 && a.cross(proj).dot(n) >= 0.0 && proj.cross(b).dot(n) >= 0.0;
      if (inside_arc)
        dist = std::atan2(std::abs(cc.dot(n)), proj.norm());
      else
        dist = std::min(sphere_angle(c, a), sphere_angle(c, b));
      inner = std::min(inner, dist);
    }
  } else {
    const int res = 16;
    const int nv = static_cast<int>(dim) - 1;  // vertices per facet
    for (Eigen::Index skip = 0; skip < dim; ++skip) {
      std::vector<Eigen::Index> ids;
      for (Eigen::Index k = 0; k < dim; ++k)
        if (k != skip) ids.push_back(k);
      // enumerate compositions of res into nv parts
      std::vector<int> comp(nv, 0);
      comp[0] = res;
      while (true) {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
        for (int k = 0; k < nv; ++k) p += comp[k] * cell.vertices.col(ids[k]);
        inner = std::min(inner, sphere_angle(c, p.normalized()));
        // next composition
        int i = nv - 2;
        while (i >= 0 && comp[i] == 0) --i;
        if (i < 0) break;
        --comp[i];
        const int rest = comp[nv - 1] + 1;
        comp[nv - 1] = 0;
        comp[i + 1] = rest;
      }
    }
  }
  r.r_inner = inner;
  return r;
}

double cell_measure(const PartitionCell& cell, double mu, int order) {
  const Eigen::Index dim = cell.vertices.rows();
  const int d = static_cast<int>(dim) - 1;
  // flat vertices in the positive orthant
  Eigen::MatrixXd flat(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Eigen::VectorXd v = cell.vertices.col(k).cwiseAbs();
    flat.col(k) = v / v.sum();
  }
  // d-volume of the flat simplex via the Gram determinant of its edge vectors
  Eigen::MatrixXd edges(dim, d);
  for (int k = 0; k < d; ++k) edges.col(k) = flat.col(k + 1) - flat.col(0);
  double fact = 1.0;
  for (int k = 2; k <= d; ++k) fact *= k;
  const double volume = std::sqrt((edges.transpose() * edges).determinant()) / fact;
  const double h = 1.0 / std::sqrt(static_cast<double>(dim));

  const QuadratureRule1D gl = gauss_jacobi(JacobiParams(0.0, 0.0), order);
  std::vector<int> idx(d, 0);
  double sum = 0.0;
  while (true) {
    // collapsed coordinates u in [0,1]^d -> barycentric lambda
    double weight = fact * volume;
    Eigen::VectorXd lam(dim);
    double prod = 1.0;
    for (int k = 0; k < d; ++k) {
      const double u = 0.5 * (gl.nodes[idx[k]] + 1.0);
      weight *= 0.5 * gl.weights[idx[k]] * std::pow(u, d - 1 - k);
      lam[k] = prod * (1.0 - u);
      prod *= u;
    }
    lam[d] = prod;
    const Eigen::VectorXd p = flat * lam;
    const double r = p.norm();
    double f = h / std::pow(r, d + 1);
    if (mu != 0.0) f *= std::pow(p[d] / r, 2.0 * mu);
    sum += weight * f;
    int k = d - 1;
    while (k >= 0 && idx[k] == order - 1) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
  }
  return sum;
}

}  // namespace ballneedlets
