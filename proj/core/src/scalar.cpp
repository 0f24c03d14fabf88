#include "bdq/scalar.hpp"

#include <sstream>

namespace bdq {

mpq_class Scalar::parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw Error("parse_error", "bad rational '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rational_text(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::ostringstream os;
  if (sgn(re_) != 0) os << re_.get_str() << (sgn(im_) > 0 ? "+" : "");
  if (im_ == 1) {
    os << "I";
  } else if (im_ == -1) {
    os << "-I";
  } else {
    os << im_.get_str() << "*I";
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace bdq
