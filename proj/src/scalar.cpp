#include "quadhess/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <system_error>

namespace quadhess {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::singular: return "singular";
    case ErrorKind::update_singular: return "update-singular";
    case ErrorKind::degenerate_leading_coefficient: return "degenerate-leading-coefficient";
    case ErrorKind::no_real_solution: return "no-real-solution";
    case ErrorKind::on_discriminant_locus: return "on-discriminant-locus";
    case ErrorKind::irrational_root: return "irrational-root";
    case ErrorKind::stencil: return "stencil";
    case ErrorKind::residual: return "residual";
    case ErrorKind::vertical_tangent: return "vertical-tangent";
    case ErrorKind::size: return "size";
    case ErrorKind::generation_exhausted: return "generation-exhausted";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

std::string_view to_string(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::exact: return "exact";
    case ScalarKind::real: return "float";
    case ScalarKind::complex: return "complex";
  }
  return "unknown";
}

std::optional<Rational> exact_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational root(rn, rd);
  root.canonicalize();
  return root;
}

Rational principal_sqrt(const Rational& x) {
  auto root = exact_sqrt(x);
  if (!root) {
    throw Error(ErrorKind::irrational_root,
                "discriminant " + format_scalar(x) + " is not the square of a rational");
  }
  return *root;
}

Real principal_sqrt(Real x) { return std::sqrt(x); }

Complex principal_sqrt(const Complex& x) { return std::sqrt(x); }

std::string format_scalar(const Rational& x) { return x.get_str(); }

std::string format_scalar(Real x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

std::string format_scalar(const Complex& x) {
  std::string im = format_scalar(x.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_scalar(x.real()) + im + "i";
}

Rational parse_rational(std::string_view text) {
  auto bad = [&]() {
    return Error(ErrorKind::parse, "not a rational number: '" + std::string(text) + "'");
  };
  auto is_integer = [](std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return std::string(!s.empty() && s.front() == '+' ? s.substr(1) : s);
  };

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer(num)) throw bad();
  mpz_class n(strip_plus(num), 10);
  mpz_class d = 1;
  if (slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    if (!is_integer(den) || den.front() == '-' || den.front() == '+') throw bad();
    d = mpz_class(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace quadhess
