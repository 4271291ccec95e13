#include "obata/rational.hpp"

#include <stdexcept>

namespace obata {

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Rational q(s);
      q.canonicalize();
      return q;
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (num.empty() || den.empty())
      throw std::invalid_argument("malformed rational literal: " + s);
    Integer p(num), q(den);
    if (sgn(q) == 0)
      throw std::invalid_argument("zero denominator in rational: " + s);
    Rational r(p, q);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer common_denominator(const Vec& v) {
  Integer l = 1;
  for (const auto& q : v) {
    Integer d = q.get_den();
    l = lcm(l, d);
  }
  return l;
}

Integer content(const IVec& v) {
  Integer g = 0;
  for (const auto& x : v) {
    g = gcd(g, x);
    if (g == 1) break;
  }
  return g;
}

}  // namespace obata
