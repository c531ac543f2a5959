#include "layercake/rational.hpp"

#include <cctype>

namespace layercake {

std::string int128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  std::string out;
  while (u != 0) {
    out.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  return std::string(out.rbegin(), out.rend());
}

namespace {

__int128 parse_digits(const std::string& s, size_t from, size_t to) {
  if (from == to) throw std::invalid_argument("empty number in rational '" + s + "'");
  unsigned __int128 v = 0;
  constexpr unsigned __int128 kMax = (unsigned __int128)-1 >> 1;  // INT128_MAX
  for (size_t i = from; i < to; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("bad digit in rational '" + s + "'");
    v = v * 10 + unsigned(s[i] - '0');
    if (v > kMax) throw std::overflow_error("rational literal too large: '" + s + "'");
  }
  return (__int128)v;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin == end) throw std::invalid_argument("empty rational literal");

  bool neg = false;
  if (text[begin] == '-' || text[begin] == '+') {
    neg = text[begin] == '-';
    ++begin;
  }

  size_t slash = text.find('/', begin);
  if (slash != std::string::npos && slash < end) {
    Int n = parse_digits(text, begin, slash);
    Int d = parse_digits(text, slash + 1, end);
    return Rational::make(neg ? -n : n, d);
  }

  size_t dot = text.find('.', begin);
  if (dot != std::string::npos && dot < end) {
    Int whole = dot > begin ? parse_digits(text, begin, dot) : 0;
    size_t frac_digits = end - dot - 1;
    Int frac = frac_digits > 0 ? parse_digits(text, dot + 1, end) : 0;
    Int den = 1;
    for (size_t i = 0; i < frac_digits; ++i) {
      if (__builtin_mul_overflow(den, (Int)10, &den))
        throw std::overflow_error("decimal literal too precise: '" + text + "'");
    }
    Int num;
    if (__builtin_mul_overflow(whole, den, &num) || __builtin_add_overflow(num, frac, &num))
      throw std::overflow_error("decimal literal too large: '" + text + "'");
    return Rational::make(neg ? -num : num, den);
  }

  Int n = parse_digits(text, begin, end);
  return Rational::make(neg ? -n : n, (Int)1);
}

std::string Rational::str() const {
  if (den_ == 1) return int128_to_string(num_);
  return int128_to_string(num_) + "/" + int128_to_string(den_);
}

}  // namespace layercake
