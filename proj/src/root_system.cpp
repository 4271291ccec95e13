#include "obata/root_system.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace obata {

namespace {

void add_edge(std::vector<std::vector<int>>& a, int i, int j, int aij,
              int aji) {
  a[i][j] = aij;
  a[j][i] = aji;
}

}  // namespace

Integer RootSystem::inner(const IVec& a, const IVec& b) const {
  Integer s = 0;
  for (int i = 0; i < rank; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < rank; ++j) {
      if (cartan[i][j] == 0 || sgn(b[j]) == 0) continue;
      s += a[i] * b[j] * cartan[i][j] * d[j];
    }
  }
  return s;
}

int RootSystem::height(const IVec& a) const {
  Integer h = 0;
  for (const auto& c : a) h += c;
  return int(h.get_si());
}

bool RootSystem::is_positive_root(const IVec& a) const {
  return index_.count(a) > 0;
}

std::size_t RootSystem::root_index(const IVec& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) throw std::invalid_argument("not a positive root");
  return it->second;
}

IVec RootSystem::highest_root() const {
  const IVec* best = nullptr;
  int best_h = -1;
  for (const auto& r : positive_roots) {
    int h = height(r);
    if (h > best_h) {
      best_h = h;
      best = &r;
    }
  }
  return *best;
}

std::string RootSystem::name() const {
  return std::string(1, letter) + std::to_string(rank);
}

RootSystem build_root_system(char letter, int rank) {
  bool ok = false;
  switch (letter) {
    case 'A': ok = rank >= 1; break;
    case 'B': ok = rank >= 2; break;
    case 'C': ok = rank >= 2; break;
    case 'D': ok = rank >= 4; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: ok = false;
  }
  if (!ok) throw std::invalid_argument("invalid simple type");

  RootSystem rs;
  rs.letter = letter;
  rs.rank = rank;
  int n = rank;
  auto& a = rs.cartan;
  a.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  rs.d.assign(n, 1);

  switch (letter) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) add_edge(a, i, i + 1, -1, -1);
      break;
    case 'B':
      // last simple root short
      for (int i = 0; i + 2 < n; ++i) add_edge(a, i, i + 1, -1, -1);
      add_edge(a, n - 2, n - 1, -2, -1);
      for (int i = 0; i + 1 < n; ++i) rs.d[i] = 2;
      break;
    case 'C':
      // last simple root long
      for (int i = 0; i + 2 < n; ++i) add_edge(a, i, i + 1, -1, -1);
      add_edge(a, n - 2, n - 1, -1, -2);
      rs.d[n - 1] = 2;
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) add_edge(a, i, i + 1, -1, -1);
      add_edge(a, n - 3, n - 1, -1, -1);
      break;
    case 'E':
      // Bourbaki numbering: node 2 hangs off node 4 of the chain 1-3-4-5-...
      add_edge(a, 0, 2, -1, -1);
      add_edge(a, 1, 3, -1, -1);
      for (int i = 2; i + 1 < n; ++i) add_edge(a, i, i + 1, -1, -1);
      break;
    case 'F':
      add_edge(a, 0, 1, -1, -1);
      add_edge(a, 1, 2, -2, -1);
      add_edge(a, 2, 3, -1, -1);
      rs.d[0] = rs.d[1] = 2;
      break;
    case 'G':
      // alpha_1 short, alpha_2 long; highest root 3a1 + 2a2
      add_edge(a, 0, 1, -1, -3);
      rs.d[1] = 3;
      break;
  }

  // close the simple roots under root strings: beta + a_i is a root iff
  // p - <beta, a_i^vee> > 0 with p the largest k with beta - k a_i a root
  std::map<IVec, bool> seen;
  std::vector<IVec> frontier;
  for (int i = 0; i < n; ++i) {
    IVec alpha(n, Integer(0));
    alpha[i] = 1;
    seen[alpha] = true;
    frontier.push_back(alpha);
  }
  std::vector<IVec> all(frontier);
  while (!frontier.empty()) {
    std::vector<IVec> next;
    for (const auto& beta : frontier) {
      for (int i = 0; i < n; ++i) {
        IVec alpha(n, Integer(0));
        alpha[i] = 1;
        IVec down = beta;
        int p = 0;
        while (true) {
          down[i] -= 1;
          // only positive roots are stored; root strings are unbroken, so
          // stopping at the first non-root is exact
          bool any_neg = false;
          for (const auto& c : down)
            if (sgn(c) < 0) any_neg = true;
          if (any_neg || !seen.count(down)) break;
          ++p;
        }
        // <beta, a_i^vee> = 2 (beta, a_i) / (a_i, a_i)
        Integer num = 2 * rs.inner(beta, alpha);
        Integer den = rs.norm2(alpha);
        Integer pairing = num / den;
        if (Integer(p) - pairing > 0) {
          IVec up = beta;
          up[i] += 1;
          if (!seen.count(up)) {
            seen[up] = true;
            next.push_back(up);
            all.push_back(up);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  // height ascending, then reverse-lex so alpha_1 precedes alpha_2
  std::stable_sort(all.begin(), all.end(), [&rs](const IVec& x, const IVec& y) {
    int hx = rs.height(x), hy = rs.height(y);
    if (hx != hy) return hx < hy;
    return x > y;
  });
  rs.positive_roots = std::move(all);
  for (std::size_t k = 0; k < rs.positive_roots.size(); ++k)
    rs.index_[rs.positive_roots[k]] = k;
  return rs;
}

IVec maximal_root(const RootSystem& rs) { return rs.highest_root(); }

DiagramDecomposition diagram_joyce_decomposition(char letter, int rank) {
  RootSystem rs = build_root_system(letter, rank);
  DiagramDecomposition dec;
  dec.letter = letter;
  dec.rank = rank;
  dec.algebra_dim = rank + 2 * int(rs.positive_roots.size());

  std::deque<std::vector<IVec>> queue;
  queue.push_back(rs.positive_roots);
  while (!queue.empty()) {
    std::vector<IVec> roots = std::move(queue.front());
    queue.pop_front();
    // maximal root of this (irreducible) subsystem: height-maximal
    const IVec* theta = nullptr;
    int best_h = -1;
    for (const auto& r : roots) {
      int h = rs.height(r);
      if (h > best_h) {
        best_h = h;
        theta = &r;
      }
    }
    IVec th = *theta;
    int nonorth = 0;
    std::vector<IVec> orth;
    for (const auto& r : roots) {
      if (r == th) continue;
      if (sgn(rs.inner(r, th)) == 0)
        orth.push_back(r);
      else
        ++nonorth;
    }
    if (nonorth % 2 != 0)
      throw std::logic_error("odd non-orthogonal root count");
    DiagramLayer layer;
    layer.d_index = int(dec.layers.size()) + 1;
    layer.f_hdim = nonorth / 2;
    layer.theta = th;
    dec.layers.push_back(layer);

    // split the orthogonal subsystem into non-orthogonality components
    std::size_t k = orth.size();
    std::vector<int> comp(k, -1);
    int ncomp = 0;
    for (std::size_t s = 0; s < k; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<std::size_t> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < k; ++v) {
          if (comp[v] >= 0) continue;
          if (sgn(rs.inner(orth[u], orth[v])) != 0) {
            comp[v] = ncomp;
            stack.push_back(v);
          }
        }
      }
      ++ncomp;
    }
    std::vector<std::vector<IVec>> parts(ncomp);
    for (std::size_t s = 0; s < k; ++s) parts[comp[s]].push_back(orth[s]);
    std::stable_sort(parts.begin(), parts.end(),
                     [](const std::vector<IVec>& x, const std::vector<IVec>& y) {
                       auto lowest = [](const std::vector<IVec>& part) {
                         std::size_t best = SIZE_MAX;
                         for (const auto& r : part)
                           for (std::size_t i = 0; i < r.size(); ++i)
                             if (sgn(r[i]) != 0 && i < best) best = i;
                         return best;
                       };
                       return lowest(x) < lowest(y);
                     });
    for (auto& p : parts) queue.push_back(std::move(p));
  }

  dec.m = int(dec.layers.size());
  dec.b_dim = rank - dec.m;
  dec.ell = 2 * dec.m - rank;
  for (const auto& l : dec.layers)
    if (l.f_hdim == 0) ++dec.trivial_f;
  return dec;
}

}  // namespace obata
