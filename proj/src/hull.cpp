#include "graspbo/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace graspbo {

namespace {

double coordinate_scale(const Eigen::MatrixXd& points) {
  return std::max(1.0, points.cwiseAbs().maxCoeff());
}

bool lex_less(const Eigen::MatrixXd& pts, int a, int b) {
  for (int j = 0; j < pts.cols(); ++j) {
    if (pts(a, j) < pts(b, j)) return true;
    if (pts(a, j) > pts(b, j)) return false;
  }
  return a < b;
}

/// Hyperplane through the d facet vertices; throws on affine dependence.
void facet_plane(const Eigen::MatrixXd& pts, const std::vector<int>& vs,
                 double scale, Eigen::VectorXd& normal, double& offset) {
  const int d = static_cast<int>(pts.cols());
  Eigen::MatrixXd A(d - 1, d);
  for (int k = 1; k < d; ++k)
    A.row(k - 1) = pts.row(vs[k]) - pts.row(vs[0]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  if (svd.singularValues().minCoeff() <= 1e-10 * scale)
    throw DegenerateHull("degenerate facet");
  normal = svd.matrixV().col(d - 1);
  offset = 0.0;
  for (int v : vs) offset += normal.dot(pts.row(v));
  offset /= static_cast<double>(vs.size());
}

Facet make_facet(const Eigen::MatrixXd& pts, std::vector<int> vs,
                 const Eigen::VectorXd& interior, double scale) {
  Facet f;
  f.vertices = std::move(vs);
  facet_plane(pts, f.vertices, scale, f.normal, f.offset);
  if (f.normal.dot(interior) > f.offset) {
    f.normal = -f.normal;
    f.offset = -f.offset;
  }
  return f;
}

/// Greedy affinely-independent simplex: lexicographic seed, then points of
/// maximal distance from the current affine hull (ties lexicographic).
std::vector<int> initial_simplex(const Eigen::MatrixXd& pts, double scale) {
  const int n = static_cast<int>(pts.rows());
  const int d = static_cast<int>(pts.cols());
  int seed = 0;
  for (int i = 1; i < n; ++i)
    if (lex_less(pts, i, seed)) seed = i;
  std::vector<int> simplex{seed};
  Eigen::MatrixXd basis(d, 0);  // orthonormal columns spanning the hull
  while (static_cast<int>(simplex.size()) < d + 1) {
    int best = -1;
    double best_dist = 1e-9 * scale;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd r = (pts.row(i) - pts.row(seed)).transpose();
      r -= basis * (basis.transpose() * r);
      const double dist = r.norm();
      if (dist > best_dist + 1e-15 * scale ||
          (best >= 0 && dist > best_dist - 1e-15 * scale &&
           lex_less(pts, i, best))) {
        best = i;
        best_dist = dist;
      }
    }
    if (best < 0) throw DegenerateHull("affinely dependent points");
    simplex.push_back(best);
    Eigen::VectorXd r = (pts.row(best) - pts.row(seed)).transpose();
    r -= basis * (basis.transpose() * r);
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = r / r.norm();
  }
  return simplex;
}

}  // namespace

std::vector<Facet> convex_hull(const Eigen::MatrixXd& points) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (d < 2 || d > 6) throw Error("convex_hull: dimension must be in 2..6");
  if (n < d + 1) throw DegenerateHull("need at least d+1 points");
  const double scale = coordinate_scale(points);
  const double eps_vis = 1e-10 * scale;

  const std::vector<int> simplex = initial_simplex(points, scale);
  Eigen::VectorXd interior = Eigen::VectorXd::Zero(d);
  for (int v : simplex) interior += points.row(v).transpose();
  interior /= static_cast<double>(simplex.size());

  std::vector<Facet> facets;
  for (int omit = 0; omit <= d; ++omit) {
    std::vector<int> vs;
    for (int k = 0; k <= d; ++k)
      if (k != omit) vs.push_back(simplex[k]);
    std::sort(vs.begin(), vs.end());
    facets.push_back(make_facet(points, std::move(vs), interior, scale));
  }

  std::vector<bool> in_simplex(n, false);
  for (int v : simplex) in_simplex[v] = true;

  for (int i = 0; i < n; ++i) {
    if (in_simplex[i]) continue;
    const Eigen::VectorXd p = points.row(i).transpose();

    std::vector<Facet> kept;
    std::vector<Facet> visible;
    for (auto& f : facets) {
      if (f.normal.dot(p) - f.offset > eps_vis)
        visible.push_back(std::move(f));
      else
        kept.push_back(std::move(f));
    }
    if (visible.empty()) {
      facets = std::move(kept);
      continue;
    }

    // Horizon ridges appear in exactly one visible facet.
    std::map<std::vector<int>, int> ridge_count;
    for (const auto& f : visible) {
      for (size_t k = 0; k < f.vertices.size(); ++k) {
        std::vector<int> ridge;
        for (size_t j = 0; j < f.vertices.size(); ++j)
          if (j != k) ridge.push_back(f.vertices[j]);
        ++ridge_count[ridge];
      }
    }
    for (const auto& [ridge, count] : ridge_count) {
      if (count > 2) throw Error("convex_hull: inconsistent horizon");
      if (count != 1) continue;
      std::vector<int> vs = ridge;
      vs.push_back(i);
      std::sort(vs.begin(), vs.end());
      kept.push_back(make_facet(points, std::move(vs), interior, scale));
    }
    facets = std::move(kept);
  }
  return facets;
}

double min_facet_distance(const std::vector<Facet>& facets) {
  if (facets.empty()) throw OriginOutside("no facets");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : facets) best = std::min(best, f.offset);
  if (best <= 0.0) throw OriginOutside("origin not interior to the hull");
  return best;
}

double support_value(const Eigen::MatrixXd& points, const Eigen::VectorXd& u) {
  return (points * u).maxCoeff();
}

namespace {

/// Local minimization of the support function over the unit sphere:
/// projected subgradient descent followed by an active-set polish that
/// jumps to the exact facet normal once the active points identify one.
double refine_direction(const Eigen::MatrixXd& points, Eigen::VectorXd u,
                        int iters) {
  const int d = static_cast<int>(points.cols());
  const double scale = coordinate_scale(points);
  double best = support_value(points, u);
  Eigen::VectorXd best_u = u;
  for (int t = 1; t <= iters; ++t) {
    Eigen::VectorXd vals = points * u;
    int active;
    vals.maxCoeff(&active);
    Eigen::VectorXd g = points.row(active).transpose();
    Eigen::VectorXd g_tan = g - g.dot(u) * u;
    const double gn = g_tan.norm();
    if (gn < 1e-14 * scale) break;
    u = (u - (0.5 / t) * g_tan / gn * std::min(gn, scale)).normalized();
    const double h = support_value(points, u);
    if (h < best) {
      best = h;
      best_u = u;
    }
  }
  // Active-set polish: hyperplane fit through near-active points.
  for (double band : {1e-12, 1e-9, 1e-6, 1e-4}) {
    std::vector<int> active;
    const Eigen::VectorXd vals = points * best_u;
    const double h = vals.maxCoeff();
    for (int i = 0; i < points.rows(); ++i)
      if (vals[i] >= h - band * scale) active.push_back(i);
    if (static_cast<int>(active.size()) < d) continue;
    Eigen::MatrixXd A(active.size(), d);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (size_t k = 0; k < active.size(); ++k) mean += points.row(active[k]);
    mean /= static_cast<double>(active.size());
    for (size_t k = 0; k < active.size(); ++k)
      A.row(k) = points.row(active[k]) - mean.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    Eigen::VectorXd nu = svd.matrixV().col(d - 1).normalized();
    for (const Eigen::VectorXd& cand : {nu, Eigen::VectorXd(-nu)}) {
      const double hv = support_value(points, cand);
      if (hv < best) {
        best = hv;
        best_u = cand;
      }
    }
  }
  return best;
}

/// Deterministic candidate directions: negated normalized points, axis
/// directions, and a fixed pseudo-random batch.
std::vector<Eigen::VectorXd> base_candidates(const Eigen::MatrixXd& points,
                                             int extra) {
  const int d = static_cast<int>(points.cols());
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < points.rows(); ++i) {
    const double nrm = points.row(i).norm();
    if (nrm > 1e-12) dirs.push_back(-points.row(i).transpose() / nrm);
  }
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e[j] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  Rng rng(0x6f726967u);
  for (int k = 0; k < extra; ++k) dirs.push_back(rng.unit_vector(d));
  return dirs;
}

double min_support_over_sphere(const Eigen::MatrixXd& points,
                               std::vector<Eigen::VectorXd> dirs,
                               int refine_top, int iters) {
  std::vector<std::pair<double, int>> ranked;
  ranked.reserve(dirs.size());
  for (int k = 0; k < static_cast<int>(dirs.size()); ++k)
    ranked.emplace_back(support_value(points, dirs[k]), k);
  std::sort(ranked.begin(), ranked.end());
  double best = ranked.front().first;
  for (int k = 0; k < std::min<int>(refine_top, ranked.size()); ++k)
    best = std::min(best,
                    refine_direction(points, dirs[ranked[k].second], iters));
  return best;
}

}  // namespace

bool contains_origin(const Eigen::MatrixXd& points) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (n < d + 1) return false;
  const double scale = coordinate_scale(points);

  // Full-dimensionality check: affinely dependent sets have no interior.
  Eigen::MatrixXd centered = points;
  centered.rowwise() -= points.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
  if (svd.singularValues().minCoeff() <= 1e-10 * scale) return false;

  // Frank-Wolfe distance-to-origin minimization; a direction along which
  // every point is strictly positive certifies separation.
  int start;
  points.rowwise().squaredNorm().minCoeff(&start);
  Eigen::VectorXd x = points.row(start).transpose();
  for (int it = 0; it < 2000; ++it) {
    const Eigen::VectorXd vals = points * x;
    int idx;
    const double lo = vals.minCoeff(&idx);
    const double xx = x.squaredNorm();
    if (xx > 1e-24 && lo > 0.0) return false;  // separating hyperplane
    const double gap = xx - lo;
    if (gap <= 1e-20 * scale * scale) break;
    const Eigen::VectorXd s = points.row(idx).transpose();
    const Eigen::VectorXd dxs = x - s;
    const double denom = dxs.squaredNorm();
    if (denom <= 0.0) break;
    x += std::clamp(gap / denom, 0.0, 1.0) * (s - x);
    if (x.squaredNorm() <= 1e-18) break;  // origin reached
  }

  // Interior margin: minimum of the support function over the sphere.
  const double margin =
      min_support_over_sphere(points, base_candidates(points, 128), 24, 120);
  return margin > kClosureTol;
}

double support_epsilon(const Eigen::MatrixXd& points, int n_dirs, Rng& rng) {
  if (!contains_origin(points)) throw OriginOutside("support_epsilon");
  const int d = static_cast<int>(points.cols());
  std::vector<Eigen::VectorXd> dirs = base_candidates(points, 0);
  dirs.reserve(dirs.size() + n_dirs);
  for (int k = 0; k < n_dirs; ++k) dirs.push_back(rng.unit_vector(d));
  return min_support_over_sphere(points, std::move(dirs), 64, 150);
}

VolumeEstimate mc_volume(const Eigen::MatrixXd& points, int n_samples,
                         Rng& rng) {
  std::vector<Facet> facets;
  try {
    facets = convex_hull(points);
  } catch (const DegenerateHull&) {
    return {0.0, 0.0};
  }
  const int d = static_cast<int>(points.cols());
  const Eigen::VectorXd lo = points.colwise().minCoeff();
  const Eigen::VectorXd hi = points.colwise().maxCoeff();
  const double box_volume = (hi - lo).prod();

  Eigen::MatrixXd normals(facets.size(), d);
  Eigen::VectorXd offsets(facets.size());
  for (size_t f = 0; f < facets.size(); ++f) {
    normals.row(f) = facets[f].normal.transpose();
    offsets[f] = facets[f].offset;
  }

  long inside = 0;
  Eigen::VectorXd x(d);
  for (int s = 0; s < n_samples; ++s) {
    for (int j = 0; j < d; ++j) x[j] = rng.uniform(lo[j], hi[j]);
    bool ok = true;
    for (long f = 0; f < normals.rows(); ++f) {
      if (normals.row(f).dot(x) > offsets[f]) {
        ok = false;
        break;
      }
    }
    inside += ok;
  }
  const double p = static_cast<double>(inside) / n_samples;
  return {box_volume * p, box_volume * std::sqrt(p * (1.0 - p) / n_samples)};
}

}  // namespace graspbo
