#include "resdyn/rational.hpp"

#include "resdyn/errors.hpp"

namespace resdyn {

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw InvalidArgument("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto parse_integer = [&](std::string_view digits) {
    std::string_view body = digits;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    if (body.empty()) throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    for (char c : body) {
      if (c < '0' || c > '9') throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    }
    return Integer(std::string(digits), 10);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-') {
    throw InvalidArgument("denominator must be written positive in '" + std::string(text) + "'");
  }
  return Rational(parse_integer(text.substr(0, slash)), parse_integer(den_text));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw InvalidArgument("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& x, long exponent) {
  if (exponent < 0) {
    if (x.is_zero()) throw InvalidArgument("zero to a negative power");
    return Rational(1) / pow(x, -exponent);
  }
  const auto e = static_cast<unsigned long>(exponent);
  return Rational(pow(x.numerator(), e), pow(x.denominator(), e));
}

Integer pow(const Integer& x, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), x.get_mpz_t(), exponent);
  return out;
}

std::string to_string(const Integer& x) { return x.get_str(); }

}  // namespace resdyn
