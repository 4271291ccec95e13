#include "obata/span_basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace obata {

IVec clear_denominators(const Vec& v) {
  Integer l = common_denominator(v);
  IVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational q = v[i] * Rational(l);
    r[i] = q.get_num();  // denominator is 1 by construction
  }
  return r;
}

SpanBasis::SpanBasis(std::size_t ambient_dim)
    : ambient_(ambient_dim), pivot_row_(ambient_dim, -1) {}

namespace {

void make_primitive(IVec& v, std::size_t pivot) {
  Integer c = content(v);
  if (sgn(v[pivot]) < 0) c = -c;
  if (c != 1 && sgn(c) != 0) {
    for (auto& x : v) x /= c;
  }
}

}  // namespace

bool SpanBasis::reduce(IVec& v) const {
  // Kill pivot positions left to right. Row r stores a primitive integer
  // vector whose pivot entry is positive; the rational row is v / pivot.
  Integer f, g;
  for (std::size_t j = 0; j < ambient_; ++j) {
    if (sgn(v[j]) == 0) continue;
    int ri = pivot_row_[j];
    if (ri < 0) return true;  // v has a new pivot at column j
    const IVec& r = rows_[ri].v;
    const Integer& p = r[j];
    // v := p*v - v[j]*r, then strip content to tame growth.
    f = v[j];
    for (std::size_t k = j; k < ambient_; ++k) {
      if (sgn(r[k]) == 0) {
        if (sgn(v[k]) != 0) v[k] *= p;
      } else {
        v[k] = p * v[k] - f * r[k];
      }
    }
    // v[j] is now exactly zero.
    Integer c = 0;
    for (std::size_t k = j + 1; k < ambient_; ++k) {
      c = gcd(c, v[k]);
      if (c == 1) break;
    }
    if (c > 1) {
      for (std::size_t k = j + 1; k < ambient_; ++k) v[k] /= c;
    }
  }
  return false;
}

bool SpanBasis::insert(const Vec& v) {
  if (v.size() != ambient_)
    throw std::invalid_argument("span insert: dimension mismatch");
  return insert(clear_denominators(v));
}

bool SpanBasis::insert(IVec v) {
  if (v.size() != ambient_)
    throw std::invalid_argument("span insert: dimension mismatch");
  if (!reduce(v)) return false;
  std::size_t pivot = 0;
  while (sgn(v[pivot]) == 0) ++pivot;
  make_primitive(v, pivot);
  // Back-substitute into existing rows to keep full RREF shape.
  const Integer& p = v[pivot];
  for (auto& row : rows_) {
    Integer f = row.v[pivot];
    if (sgn(f) == 0) continue;
    for (std::size_t k = 0; k < ambient_; ++k) {
      if (sgn(v[k]) == 0) {
        if (sgn(row.v[k]) != 0) row.v[k] *= p;
      } else {
        row.v[k] = p * row.v[k] - f * v[k];
      }
    }
    make_primitive(row.v, row.pivot);
  }
  // Insert keeping rows ordered by pivot column.
  Row nr{std::move(v), pivot};
  auto it = std::lower_bound(
      rows_.begin(), rows_.end(), pivot,
      [](const Row& r, std::size_t p2) { return r.pivot < p2; });
  rows_.insert(it, std::move(nr));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    pivot_row_[rows_[i].pivot] = int(i);
  return true;
}

bool SpanBasis::contains(const Vec& v) const {
  return contains(clear_denominators(v));
}

bool SpanBasis::contains(IVec v) const { return !reduce(v); }

Vec SpanBasis::row(std::size_t i) const {
  const Row& r = rows_[i];
  Vec out(ambient_);
  Rational inv(Integer(1), r.v[r.pivot]);
  inv.canonicalize();
  for (std::size_t k = 0; k < ambient_; ++k) {
    if (sgn(r.v[k]) != 0) out[k] = Rational(r.v[k]) * inv;
  }
  return out;
}

}  // namespace obata
