#include "bca/rational.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include "bca/error.hpp"

namespace bca {

namespace {

const std::regex kFraction(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
const std::regex kDecimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");

BigInt pow10(unsigned long exponent) {
  BigInt result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kFraction)) {
    std::string num_text = m[1].str();
    if (num_text.front() == '+') num_text.erase(0, 1);
    BigInt num(num_text, 10);
    BigInt den(m[2].str(), 10);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (std::regex_match(s, m, kDecimal)) {
    const std::string int_part = m[2].str();
    const std::string frac_part = m[3].matched ? m[3].str() : std::string();
    if (int_part.empty() && frac_part.empty()) {
      throw Error(ErrorCode::ParseError, "not a number: '" + s + "'");
    }
    BigInt digits(int_part + frac_part, 10);
    Rational r(digits, pow10(frac_part.size()));
    if (m[4].matched) {
      const long exponent = std::stol(m[4].str());
      if (std::labs(exponent) > 4096) throw Error(ErrorCode::ParseError, "exponent too large: '" + s + "'");
      const BigInt scale = pow10(static_cast<unsigned long>(std::labs(exponent)));
      if (exponent >= 0) {
        r *= scale;
      } else {
        r /= scale;
      }
    }
    r.canonicalize();
    if (m[1].str() == "-") r = -r;
    return r;
  }
  throw Error(ErrorCode::ParseError, "not a rational: '" + s + "'");
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_decimal(const Rational& value, int digits) {
  std::ostringstream out;
  out.precision(digits);
  out << to_double(value);
  return out.str();
}

double to_double(const Rational& value) { return value.get_d(); }

Rational floor_of(const Rational& value) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(q);
}

BigInt floor_div(const Rational& value, const Rational& unit) {
  const Rational ratio = value / unit;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  return q;
}

BigInt ceil_div(const Rational& value, const Rational& unit) {
  const Rational ratio = value / unit;
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  return q;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt result;
  mpz_lcm(result.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return result;
}

std::size_t BigIntHash::operator()(const BigInt& value) const noexcept {
  const mpz_srcptr z = value.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
  const std::size_t limbs = mpz_size(z);
  for (std::size_t i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace bca
