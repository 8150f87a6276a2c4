#include "zonopref/rational.hpp"

#include <charconv>
#include <map>
#include <system_error>

#include "zonopref/error.hpp"

namespace zonopref {

namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::Parse, "not a rational number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class pow10(unsigned long n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
  return r;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 4) bad_number(text);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot_pos);
    std::string_view frac_part = s.substr(dot_pos + 1);
    if (int_part.empty() && frac_part.empty()) bad_number(text);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      bad_number(text);
    digits = std::string(int_part) + std::string(frac_part);
    fraction_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) bad_number(text);
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";
  Rational value{mpz_class(digits, 10)};
  long shift = exponent - fraction_digits;
  if (shift > 0)
    value *= pow10(static_cast<unsigned long>(shift));
  else if (shift < 0)
    value /= pow10(static_cast<unsigned long>(-shift));
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad_number(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
      num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den)) bad_number(text);
    mpz_class d(std::string{den}, 10);
    if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    mpz_class n(std::string{num_digits}, 10);
    if (!num.empty() && num.front() == '-') n = -n;
    Rational r(n, d);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  mpz_class den = value.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return value.get_num().get_str() + "/" + value.get_den().get_str();

  unsigned long places = std::max(twos, fives);
  mpz_class scaled = value.get_num() * pow10(places) / value.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return negative ? "-" + digits : digits;
}

Rational rational_from_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error(ErrorCode::Parse, "cannot format double");
  std::string_view text(buf, static_cast<size_t>(end - buf));
  if (text == "inf" || text == "-inf" || text == "nan" || text == "-nan")
    throw Error(ErrorCode::Parse, "non-finite number");
  return parse_rational(text);
}

Rational sqrt_lower(const Rational& value, unsigned bits) {
  if (value <= 0) return 0;
  // sqrt(p/q) = sqrt(p*q)/q; scale by 4^bits before the integer root.
  mpz_class radicand = value.get_num() * value.get_den();
  radicand <<= 2 * bits;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  mpz_class den = value.get_den();
  den <<= bits;
  Rational r(root, den);
  r.canonicalize();
  return r;
}

Rational sqrt_upper(const Rational& value, unsigned bits) {
  if (value <= 0) return 0;
  mpz_class radicand = value.get_num() * value.get_den();
  radicand <<= 2 * bits;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  if (root * root != radicand) root += 1;
  mpz_class den = value.get_den();
  den <<= bits;
  Rational r(root, den);
  r.canonicalize();
  return r;
}

namespace {

bool is_perfect_square(const Rational& r) {
  return mpz_perfect_square_p(r.get_num_mpz_t()) && mpz_perfect_square_p(r.get_den_mpz_t());
}

Rational exact_sqrt(const Rational& r) {
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  return Rational(n, d);
}

}  // namespace

bool sqrt_le_sqrt_sum(const Rational& lhs_squared,
                      const std::vector<std::pair<Rational, Rational>>& terms) {
  // Fold rational square roots into one constant and group the remaining
  // terms by radicand.
  Rational constant = 0;
  std::map<Rational, Rational> irrational;
  for (const auto& [coeff, radicand] : terms) {
    if (coeff < 0 || radicand < 0)
      throw Error(ErrorCode::InvalidArgument, "negative coefficient or radicand");
    if (coeff == 0 || radicand == 0) continue;
    if (is_perfect_square(radicand))
      constant += coeff * exact_sqrt(radicand);
    else
      irrational[radicand] += coeff;
  }
  if (irrational.empty()) return lhs_squared <= constant * constant;
  if (irrational.size() == 1 && constant == 0) {
    const auto& [radicand, coeff] = *irrational.begin();
    return lhs_squared <= coeff * coeff * radicand;
  }
  for (unsigned bits = 32; bits <= 2048; bits *= 2) {
    Rational lo = constant, hi = constant;
    for (const auto& [radicand, coeff] : irrational) {
      lo += coeff * sqrt_lower(radicand, bits);
      hi += coeff * sqrt_upper(radicand, bits);
    }
    if (lhs_squared <= lo * lo) return true;
    if (lhs_squared > hi * hi) return false;
  }
  // Indistinguishable at 2048 bits. Ties such as sqrt(18) vs sqrt(2) + sqrt(8)
  // land here; the comparison is non-strict, so they count as true.
  return true;
}

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot: length mismatch");
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "add: length mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "sub: length mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(const Vec& a, const Rational& s) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Vec negate(const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Rational squared_norm(const Vec& a) { return dot(a, a); }

bool is_zero(const Vec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::NotReflexive: return "NotReflexive";
    case ErrorCode::NotTransitive: return "NotTransitive";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::ProductTooLarge: return "ProductTooLarge";
    case ErrorCode::NotIntervalOrder: return "NotIntervalOrder";
    case ErrorCode::NoDecompositionWithinBound: return "NoDecompositionWithinBound";
    case ErrorCode::MissingCoordinates: return "MissingCoordinates";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeBasisComponent: return "NegativeBasisComponent";
    case ErrorCode::NotTwoDimensional: return "NotTwoDimensional";
    case ErrorCode::EpsTooLarge: return "EpsTooLarge";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownAlternative: return "UnknownAlternative";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace zonopref
