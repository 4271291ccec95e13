#include "obata/chevalley.hpp"

#include <algorithm>
#include <stdexcept>

namespace obata {

namespace {

// signed-root helpers: a root datum is (sign, index into positive_roots)
struct SRoot {
  int sign;  // +1 or -1
  std::size_t idx;
};

bool signed_root_of(const RootSystem& rs, const IVec& v, SRoot& out) {
  bool nonneg = true, nonpos = true;
  for (const auto& c : v) {
    if (sgn(c) > 0) nonpos = false;
    if (sgn(c) < 0) nonneg = false;
  }
  if (nonneg == nonpos) return false;  // zero or mixed sign
  IVec w = v;
  if (nonpos)
    for (auto& c : w) c = -c;
  if (!rs.is_positive_root(w)) return false;
  out.sign = nonpos ? -1 : 1;
  out.idx = rs.root_index(w);
  return true;
}

class NTable {
 public:
  explicit NTable(const RootSystem& rs) : rs_(rs) { build(); }

  // N for a pair of positive roots (indices); 0 if the sum is not a root
  Integer pos(std::size_t a, std::size_t b) const {
    if (a == b) return 0;
    bool flip = a > b;
    if (flip) std::swap(a, b);
    auto it = table_.find({a, b});
    if (it == table_.end()) return 0;
    return flip ? Integer(-it->second) : it->second;
  }

  // N for signed roots sa*A, sb*B where A,B are positive-root indices
  Integer at(int sa, std::size_t a, int sb, std::size_t b) const {
    if (sa > 0 && sb > 0) return pos(a, b);
    if (sa < 0 && sb < 0) return -pos(a, b);
    if (sa < 0) return -at(sb, b, sa, a);  // antisymmetry
    // mixed: N_{A,-B}
    const IVec& A = rs_.positive_roots[a];
    const IVec& B = rs_.positive_roots[b];
    IVec diff = A;
    for (int i = 0; i < rs_.rank; ++i) diff[i] -= B[i];
    SRoot c;
    if (!signed_root_of(rs_, diff, c)) return 0;
    if (c.sign > 0) {
      // A - B = C > 0: triple (A,-B,-C) gives
      // N_{A,-B} = (C,C)/(A,A) * N_{-B,-C} = -(C,C)/(A,A) * N_{B,C}
      Integer num = rs_.norm2(rs_.positive_roots[c.idx]) * (-pos(b, c.idx));
      Integer den = rs_.norm2(A);
      if (num % den != 0) throw std::logic_error("non-integer N");
      return num / den;
    }
    // B - A = E > 0: triple (A,-B,E) gives N_{A,-B} = (E,E)/(B,B) N_{E,A}
    Integer num = rs_.norm2(rs_.positive_roots[c.idx]) * pos(c.idx, a);
    Integer den = rs_.norm2(B);
    if (num % den != 0) throw std::logic_error("non-integer N");
    return num / den;
  }

  // N via root vectors (positive coordinates assumed roots)
  Integer at_vec(const IVec& sa, const IVec& sb) const {
    SRoot a, b;
    if (!signed_root_of(rs_, sa, a) || !signed_root_of(rs_, sb, b))
      throw std::invalid_argument("not roots");
    return at(a.sign, a.idx, b.sign, b.idx);
  }

  const std::map<std::pair<std::size_t, std::size_t>, Integer>& table() const {
    return table_;
  }

  // length of the descending a-string through b: max k with b - k a a root
  int string_down(std::size_t a, std::size_t b) const {
    const IVec& A = rs_.positive_roots[a];
    IVec w = rs_.positive_roots[b];
    int p = 0;
    while (true) {
      for (int i = 0; i < rs_.rank; ++i) w[i] -= A[i];
      SRoot s;
      if (!signed_root_of(rs_, w, s)) break;
      ++p;
    }
    return p;
  }

 private:
  void build() {
    // positive_roots are height-sorted, so processing in index order makes
    // every reduction hit an already-filled entry
    for (std::size_t g = 0; g < rs_.positive_roots.size(); ++g) {
      const IVec& gamma = rs_.positive_roots[g];
      if (rs_.height(gamma) == 1) continue;
      // special pairs (a,b), a < b, a + b = gamma; the minimal a is the
      // extraspecial pair and anchors the sign convention
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t a = 0; a < g; ++a) {
        IVec rest = gamma;
        const IVec& A = rs_.positive_roots[a];
        for (int i = 0; i < rs_.rank; ++i) rest[i] -= A[i];
        SRoot s;
        if (!signed_root_of(rs_, rest, s) || s.sign < 0) continue;
        std::size_t b = s.idx;
        if (a < b) pairs.push_back({a, b});
      }
      if (pairs.empty()) throw std::logic_error("non-simple root with no sum");
      std::sort(pairs.begin(), pairs.end());
      std::size_t xi = pairs[0].first, eta = pairs[0].second;
      table_[{xi, eta}] = Integer(string_down(xi, eta) + 1);
      for (std::size_t t = 1; t < pairs.size(); ++t) {
        auto [a, b] = pairs[t];
        // quadruple (xi, eta, -a, -b) sums to zero:
        //   N_{xi,eta} N_{-a,-b}/(gamma,gamma)
        // + N_{eta,-a} N_{xi,-b}/(eta-a,eta-a)
        // + N_{-a,xi} N_{eta,-b}/(xi-a,xi-a) = 0
        const IVec& XI = rs_.positive_roots[xi];
        const IVec& ETA = rs_.positive_roots[eta];
        const IVec& A = rs_.positive_roots[a];
        Rational t2 = 0, t3 = 0;
        IVec eta_a = ETA;
        for (int i = 0; i < rs_.rank; ++i) eta_a[i] -= A[i];
        SRoot s;
        if (signed_root_of(rs_, eta_a, s)) {
          Rational num(at(1, eta, -1, a) * at(1, xi, -1, b));
          t2 = num / Rational(rs_.norm2(rs_.positive_roots[s.idx]));
        }
        IVec xi_a = XI;
        for (int i = 0; i < rs_.rank; ++i) xi_a[i] -= A[i];
        if (signed_root_of(rs_, xi_a, s)) {
          Rational num(Integer(-at(1, xi, -1, a)) * at(1, eta, -1, b));
          t3 = num / Rational(rs_.norm2(rs_.positive_roots[s.idx]));
        }
        // N_{-a,-b} = -N_{a,b}
        Rational n = Rational(rs_.norm2(gamma)) * (t2 + t3) /
                     Rational(table_[{xi, eta}]);
        if (n.get_den() != 1) throw std::logic_error("non-integer N");
        if (sgn(n) == 0) throw std::logic_error("vanishing special N");
        table_[{a, b}] = n.get_num();
      }
    }
  }

  const RootSystem& rs_;
  std::map<std::pair<std::size_t, std::size_t>, Integer> table_;
};

}  // namespace

Integer ChevalleyRealization::n_pos(std::size_t a, std::size_t b) const {
  if (a == b) return 0;
  bool flip = a > b;
  if (flip) std::swap(a, b);
  auto it = n_table.find({a, b});
  if (it == n_table.end()) return 0;
  return flip ? Integer(-it->second) : it->second;
}

IVec ChevalleyRealization::coroot(const IVec& gamma) const {
  const RootSystem& rs = root_system;
  Integer dg = rs.norm2(gamma);  // 2 d_gamma
  IVec c(rs.rank);
  for (int i = 0; i < rs.rank; ++i) {
    Integer num = gamma[i] * Integer(2 * rs.d[i]);
    if (num % dg != 0) throw std::logic_error("non-integer coroot");
    c[i] = num / dg;
  }
  return c;
}

ChevalleyRealization chevalley_compact_form(const RootSystem& rs) {
  NTable nt(rs);
  int r = rs.rank;
  std::size_t np = rs.positive_roots.size();
  ChevalleyRealization out;
  out.root_system = rs;
  out.n_table = nt.table();
  LieAlgebra g(r + 2 * np);
  for (int i = 0; i < r; ++i) {
    g.set_label(i, "t" + std::to_string(i + 1));
    out.cartan_index.push_back(i);
  }
  for (std::size_t k = 0; k < np; ++k) {
    int u = r + int(2 * k), v = u + 1;
    g.set_label(u, "u" + std::to_string(k + 1));
    g.set_label(v, "v" + std::to_string(k + 1));
    out.root_space_index.push_back({u, v});
  }

  auto pairing = [&rs](const IVec& gamma, int i) {
    // <gamma, alpha_i^vee> = sum_j gamma_j cartan[j][i]
    Integer s = 0;
    for (int j = 0; j < rs.rank; ++j) s += gamma[j] * rs.cartan[j][i];
    return s;
  };

  // [t_i, u_g] = <g,a_i^vee> v_g,   [t_i, v_g] = -<g,a_i^vee> u_g
  for (int i = 0; i < r; ++i)
    for (std::size_t k = 0; k < np; ++k) {
      Integer c = pairing(rs.positive_roots[k], i);
      if (sgn(c) == 0) continue;
      auto [u, v] = out.root_space_index[k];
      g.set_bracket(i, u, {{v, Rational(c)}});
      g.set_bracket(i, v, {{u, Rational(-c)}});
    }

  // [u_g, v_g] = 2 sum_i coroot_i t_i
  for (std::size_t k = 0; k < np; ++k) {
    IVec cr = out.coroot(rs.positive_roots[k]);
    SparseVec sv;
    for (int i = 0; i < r; ++i)
      if (sgn(cr[i]) != 0) sv.push_back({i, Rational(2 * cr[i])});
    auto [u, v] = out.root_space_index[k];
    g.set_bracket(u, v, sv);
  }

  // mixed root-space brackets, using u_{-e} = -u_e and v_{-e} = v_e:
  //   [u_g, u_h] =  N_{g,h} u_{g+h} - N_{g,-h} u_{g-h}
  //   [v_g, v_h] = -N_{g,h} u_{g+h} - N_{g,-h} u_{g-h}
  //   [u_g, v_h] =  N_{g,h} v_{g+h} + N_{g,-h} v_{g-h}
  //   [v_g, u_h] =  N_{g,h} v_{g+h} - N_{g,-h} v_{g-h}
  for (std::size_t kg = 0; kg < np; ++kg)
    for (std::size_t kh = kg + 1; kh < np; ++kh) {
      const IVec& G = rs.positive_roots[kg];
      const IVec& H = rs.positive_roots[kh];
      auto [ug, vg] = out.root_space_index[kg];
      auto [uh, vh] = out.root_space_index[kh];
      IVec sum = G;
      for (int i = 0; i < r; ++i) sum[i] += H[i];
      IVec diff = G;
      for (int i = 0; i < r; ++i) diff[i] -= H[i];
      SRoot ssum, sdiff;
      bool has_sum = signed_root_of(rs, sum, ssum);
      bool has_diff = signed_root_of(rs, diff, sdiff);
      Integer n1 = has_sum ? nt.pos(kg, kh) : Integer(0);
      Integer m = has_diff ? nt.at(1, kg, -1, kh) : Integer(0);

      SparseVec uu, vv, uv, vu;
      if (sgn(n1) != 0) {
        auto [us, vs] = out.root_space_index[ssum.idx];
        uu.push_back({us, Rational(n1)});
        vv.push_back({us, Rational(-n1)});
        uv.push_back({vs, Rational(n1)});
        vu.push_back({vs, Rational(n1)});
      }
      if (sgn(m) != 0) {
        auto [ud, vd] = out.root_space_index[sdiff.idx];
        Rational mu = sdiff.sign > 0 ? Rational(-m) : Rational(m);
        uu.push_back({ud, mu});
        vv.push_back({ud, mu});
        uv.push_back({vd, Rational(m)});
        vu.push_back({vd, Rational(-m)});
      }
      auto sort_sv = [](SparseVec& s) {
        std::sort(s.begin(), s.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
      };
      sort_sv(uu);
      sort_sv(vv);
      sort_sv(uv);
      sort_sv(vu);
      if (!uu.empty()) g.set_bracket(ug, uh, uu);
      if (!vv.empty()) g.set_bracket(vg, vh, vv);
      if (!uv.empty()) g.set_bracket(ug, vh, uv);
      if (!vu.empty()) g.set_bracket(vg, uh, vu);
    }

  out.algebra = std::move(g);
  return out;
}

}  // namespace obata
