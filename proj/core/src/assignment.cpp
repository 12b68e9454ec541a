#include "carnot/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carnot/errors.hpp"

namespace carnot {

namespace {
constexpr double kBig = std::numeric_limits<double>::infinity();
}

AssignmentResult solve_assignment(const CostMatrix& c) {
  if (c.rows != c.cols) throw DomainError("assignment needs a square cost matrix");
  const int n = static_cast<int>(c.rows);
  AssignmentResult res;
  if (n == 0) return res;
  auto C = [&](int i, int j) { return c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
  const auto un = static_cast<std::size_t>(n);
  std::vector<int> x(un, -1), y(un, -1), matches(un, 0), freerows(un), collist(un), pred(un);
  std::vector<double> v(un), d(un);

  // column reduction
  for (int j = n - 1; j >= 0; --j) {
    double mn = C(0, j);
    int imin = 0;
    for (int i = 1; i < n; ++i)
      if (C(i, j) < mn) {
        mn = C(i, j);
        imin = i;
      }
    v[static_cast<std::size_t>(j)] = mn;
    if (++matches[static_cast<std::size_t>(imin)] == 1) {
      x[static_cast<std::size_t>(imin)] = j;
      y[static_cast<std::size_t>(j)] = imin;
    } else if (v[static_cast<std::size_t>(j)] < v[static_cast<std::size_t>(x[static_cast<std::size_t>(imin)])]) {
      const int j1 = x[static_cast<std::size_t>(imin)];
      x[static_cast<std::size_t>(imin)] = j;
      y[static_cast<std::size_t>(j)] = imin;
      y[static_cast<std::size_t>(j1)] = -1;
    } else {
      y[static_cast<std::size_t>(j)] = -1;
    }
  }

  // reduction transfer
  int numfree = 0;
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (matches[ui] == 0) {
      freerows[static_cast<std::size_t>(numfree++)] = i;
    } else if (matches[ui] == 1) {
      const int j1 = x[ui];
      double mn = kBig;
      for (int j = 0; j < n; ++j)
        if (j != j1) mn = std::min(mn, C(i, j) - v[static_cast<std::size_t>(j)]);
      if (std::isfinite(mn)) v[static_cast<std::size_t>(j1)] -= mn - (C(i, j1) - v[static_cast<std::size_t>(j1)]);
    }
  }

  // augmenting row reduction, two passes; each pass is capped because
  // near-separable costs make it trade tiny dual decrements indefinitely
  for (int pass = 0; pass < 2; ++pass) {
    int k = 0;
    const int prvnumfree = numfree;
    numfree = 0;
    long budget = 4L * n;
    while (k < prvnumfree) {
      if (--budget < 0) {
        while (k < prvnumfree) freerows[static_cast<std::size_t>(numfree++)] = freerows[static_cast<std::size_t>(k++)];
        break;
      }
      const int i = freerows[static_cast<std::size_t>(k++)];
      double umin = C(i, 0) - v[0];
      int j1 = 0, j2 = -1;
      double usubmin = kBig;
      for (int j = 1; j < n; ++j) {
        const double h = C(i, j) - v[static_cast<std::size_t>(j)];
        if (h < usubmin) {
          if (h >= umin) {
            usubmin = h;
            j2 = j;
          } else {
            usubmin = umin;
            umin = h;
            j2 = j1;
            j1 = j;
          }
        }
      }
      int i0 = y[static_cast<std::size_t>(j1)];
      if (umin < usubmin) {
        if (std::isfinite(usubmin)) v[static_cast<std::size_t>(j1)] -= usubmin - umin;
      } else if (i0 >= 0 && j2 >= 0) {
        j1 = j2;
        i0 = y[static_cast<std::size_t>(j2)];
      }
      x[static_cast<std::size_t>(i)] = j1;
      y[static_cast<std::size_t>(j1)] = i;
      if (i0 >= 0) {
        x[static_cast<std::size_t>(i0)] = -1;
        if (umin < usubmin)
          freerows[static_cast<std::size_t>(--k)] = i0;
        else
          freerows[static_cast<std::size_t>(numfree++)] = i0;
      }
    }
  }

  // augmentation by shortest alternating paths
  for (int f = 0; f < numfree; ++f) {
    const int freerow = freerows[static_cast<std::size_t>(f)];
    for (int j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      d[uj] = C(freerow, j) - v[uj];
      pred[uj] = freerow;
      collist[uj] = j;
    }
    int low = 0, up = 0, last = 0, endofpath = -1;
    double mn = 0.0;
    bool found = false;
    do {
      if (up == low) {
        last = low - 1;
        mn = d[static_cast<std::size_t>(collist[static_cast<std::size_t>(up++)])];
        for (int k = up; k < n; ++k) {
          const int j = collist[static_cast<std::size_t>(k)];
          const double h = d[static_cast<std::size_t>(j)];
          if (h <= mn) {
            if (h < mn) {
              up = low;
              mn = h;
            }
            collist[static_cast<std::size_t>(k)] = collist[static_cast<std::size_t>(up)];
            collist[static_cast<std::size_t>(up++)] = j;
          }
        }
        for (int k = low; k < up; ++k)
          if (y[static_cast<std::size_t>(collist[static_cast<std::size_t>(k)])] < 0) {
            endofpath = collist[static_cast<std::size_t>(k)];
            found = true;
            break;
          }
      }
      if (!found) {
        const int j1 = collist[static_cast<std::size_t>(low++)];
        const int i = y[static_cast<std::size_t>(j1)];
        const double* row = c.data.data() + static_cast<std::size_t>(i) * un;
        const double h = row[j1] - v[static_cast<std::size_t>(j1)] - mn;
        for (int k = up; k < n; ++k) {
          const int j = collist[static_cast<std::size_t>(k)];
          const auto uj = static_cast<std::size_t>(j);
          const double v2 = row[uj] - v[uj] - h;
          if (v2 < d[uj]) {
            pred[uj] = i;
            if (v2 == mn) {
              if (y[uj] < 0) {
                endofpath = j;
                found = true;
                break;
              }
              collist[static_cast<std::size_t>(k)] = collist[static_cast<std::size_t>(up)];
              collist[static_cast<std::size_t>(up++)] = j;
            }
            d[uj] = v2;
          }
        }
      }
    } while (!found);

    for (int k = 0; k <= last; ++k) {
      const auto j1 = static_cast<std::size_t>(collist[static_cast<std::size_t>(k)]);
      v[j1] += d[j1] - mn;
    }
    int i;
    do {
      i = pred[static_cast<std::size_t>(endofpath)];
      y[static_cast<std::size_t>(endofpath)] = i;
      const int j1 = endofpath;
      endofpath = x[static_cast<std::size_t>(i)];
      x[static_cast<std::size_t>(i)] = j1;
    } while (i != freerow);
  }

  res.row_to_col = x;
  res.v = v;
  res.u.assign(un, 0.0);
  for (int i = 0; i < n; ++i) {
    double mn = kBig;
    for (int j = 0; j < n; ++j) mn = std::min(mn, C(i, j) - v[static_cast<std::size_t>(j)]);
    res.u[static_cast<std::size_t>(i)] = mn;
    res.cost += C(i, x[static_cast<std::size_t>(i)]);
  }
  return res;
}

TransportationResult solve_transportation(const CostMatrix& c, const std::vector<double>& a,
                                          const std::vector<double>& b) {
  const std::size_t n = c.rows, m = c.cols;
  if (a.size() != n || b.size() != m) throw DomainError("marginals do not match the cost matrix");
  double sa = 0.0, sb = 0.0;
  for (double w : a) {
    if (!(w >= 0.0)) throw DomainError("negative supply");
    sa += w;
  }
  for (double w : b) {
    if (!(w >= 0.0)) throw DomainError("negative demand");
    sb += w;
  }
  if (std::abs(sa - sb) > 1e-9 * std::max(1.0, sa)) throw DomainError("unbalanced marginals");
  TransportationResult res;
  res.u.assign(n, 0.0);
  res.v.assign(m, 0.0);
  if (n == 0 || m == 0) return res;

  const double eps = 1e-15 * std::max(1.0, sa);
  std::vector<double> supply = a, demand = b;
  // nodes: sources 0..n-1, sinks n..n+m-1
  const std::size_t V = n + m;
  std::vector<double> pot(V, 0.0), dist(V);
  std::vector<long> pred(V);
  std::vector<char> done(V);
  std::vector<std::vector<std::pair<std::size_t, double>>> colflow(m);

  // initial potentials: sink potential = column minimum
  for (std::size_t j = 0; j < m; ++j) {
    double mn = kBig;
    for (std::size_t i = 0; i < n; ++i) mn = std::min(mn, c(i, j));
    pot[n + j] = mn;
  }

  auto flow_ref = [&](std::size_t i, std::size_t j) -> double* {
    for (auto& [r, f] : colflow[j])
      if (r == i) return &f;
    return nullptr;
  };

  for (;;) {
    bool any_supply = false;
    for (std::size_t i = 0; i < n; ++i) any_supply |= supply[i] > eps;
    bool any_demand = false;
    for (std::size_t j = 0; j < m; ++j) any_demand |= demand[j] > eps;
    if (!any_supply || !any_demand) break;

    std::fill(dist.begin(), dist.end(), kBig);
    std::fill(pred.begin(), pred.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
      if (supply[i] > eps) dist[i] = 0.0;
    for (;;) {
      std::size_t best = V;
      double bd = kBig;
      for (std::size_t u = 0; u < V; ++u)
        if (!done[u] && dist[u] < bd) {
          bd = dist[u];
          best = u;
        }
      if (best == V) break;
      done[best] = 1;
      if (best < n) {
        for (std::size_t j = 0; j < m; ++j) {
          const std::size_t t = n + j;
          if (done[t]) continue;
          const double rc = std::max(0.0, c(best, j) + pot[best] - pot[t]);
          if (bd + rc < dist[t]) {
            dist[t] = bd + rc;
            pred[t] = static_cast<long>(best);
          }
        }
      } else {
        const std::size_t j = best - n;
        for (const auto& [i, f] : colflow[j]) {
          if (f <= 0.0 || done[i]) continue;
          const double rc = std::max(0.0, -c(i, j) + pot[best] - pot[i]);
          if (bd + rc < dist[i]) {
            dist[i] = bd + rc;
            pred[i] = static_cast<long>(best);
          }
        }
      }
    }
    std::size_t target = V;
    double td = kBig;
    for (std::size_t j = 0; j < m; ++j)
      if (demand[j] > eps && dist[n + j] < td) {
        td = dist[n + j];
        target = n + j;
      }
    if (target == V) throw InternalError("transportation solver found no augmenting path");
    double maxd = 0.0;
    for (double dv : dist)
      if (dv < kBig) maxd = std::max(maxd, dv);
    for (std::size_t u = 0; u < V; ++u) pot[u] += dist[u] < kBig ? dist[u] : maxd;

    // bottleneck
    double delta = demand[target - n];
    std::size_t u = target;
    while (pred[u] >= 0) {
      const auto p = static_cast<std::size_t>(pred[u]);
      if (p >= n) delta = std::min(delta, *flow_ref(u, p - n));
      u = p;
    }
    delta = std::min(delta, supply[u]);
    const std::size_t start = u;
    // apply
    u = target;
    while (pred[u] >= 0) {
      const auto p = static_cast<std::size_t>(pred[u]);
      if (p < n) {
        if (double* f = flow_ref(p, u - n))
          *f += delta;
        else
          colflow[u - n].emplace_back(p, delta);
      } else {
        double* f = flow_ref(u, p - n);
        *f -= delta;
        if (*f <= eps) *f = 0.0;
      }
      u = p;
    }
    supply[start] -= delta;
    if (supply[start] <= eps) supply[start] = 0.0;
    demand[target - n] -= delta;
    if (demand[target - n] <= eps) demand[target - n] = 0.0;
  }

  for (std::size_t j = 0; j < m; ++j)
    for (const auto& [i, f] : colflow[j])
      if (f > 0.0) {
        res.flows.push_back({static_cast<int>(i), static_cast<int>(j), f});
        res.cost += f * c(i, j);
      }
  std::sort(res.flows.begin(), res.flows.end(),
            [](const Flow& x, const Flow& y) { return x.i != y.i ? x.i < y.i : x.j < y.j; });
  for (std::size_t i = 0; i < n; ++i) res.u[i] = -pot[i];
  for (std::size_t j = 0; j < m; ++j) res.v[j] = pot[n + j];
  // tighten: u_i = min_j (c_ij - v_j) keeps feasibility exact
  for (std::size_t i = 0; i < n; ++i) {
    double mn = kBig;
    for (std::size_t j = 0; j < m; ++j) mn = std::min(mn, c(i, j) - res.v[j]);
    res.u[i] = mn;
  }
  return res;
}

}  // namespace carnot
