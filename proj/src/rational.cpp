#include "lossy/rational.hpp"

#include <stdexcept>

namespace lossy {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  try {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw std::invalid_argument("mixed decimal/fraction");
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      if (negative) whole.erase(0, 1);
      if (whole.empty()) whole = "0";
      mpz_class den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      mpz_class num(whole + frac, 10);
      Rational q(num, den);
      q.canonicalize();
      return negative ? Rational(-q) : q;
    }
    Rational q(s, 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
}

std::int64_t floor_to_int(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

std::int64_t ceil_to_int(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace lossy
