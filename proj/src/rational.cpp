#include "soscert/rational.hpp"

#include <stdexcept>

namespace soscert {

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;  // exact at each step
  }
  return r;
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt double_factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = n; i >= 2; i -= 2) {
    r *= i;
    if (i == 2 || i == 3) break;
  }
  if (n >= 2) return r;
  return 1;
}

BigRational pow_rational(const BigRational& base, long exp) {
  if (exp == 0) return 1;
  if (base == 0 && exp < 0) throw std::domain_error("pow_rational: 0^negative");
  BigRational b = exp < 0 ? BigRational(1) / base : base;
  unsigned long e = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  BigRational acc = 1;
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

BigRational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : text) {
    bool ok = (c >= '0' && c <= '9') || c == '/' || c == '-' || c == '+';
    if (!ok)
      throw std::invalid_argument("not an exact rational literal: '" + text +
                                  "' (decimals are not accepted)");
  }
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return BigRational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an exact rational literal: '" + text + "'");
  }
}

std::string rational_to_string(const BigRational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

bool is_integer(const BigRational& q) { return denominator(q) == 1; }

BigInt rational_ceil(const BigRational& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt quot = n / d;  // truncates toward zero
  if (quot * d != n && n > 0) quot += 1;
  return quot;
}

}  // namespace soscert
