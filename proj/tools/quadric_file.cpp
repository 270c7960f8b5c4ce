#include "quadric_file.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <vector>

namespace quadhess::cli {
namespace {

Error parse_error(const std::string& what) { return Error(ErrorKind::parse, what); }

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_decimal(const std::string& token) {
  if (token.empty() || token.find('/') != std::string::npos) {
    throw parse_error("expected a decimal coordinate, got '" + token + "'");
  }
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE) {
    throw parse_error("expected a decimal coordinate, got '" + token + "'");
  }
  return v;
}

Rational exact_entry(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(mpz_class(v.dump(), 10));
  throw parse_error("exact mode needs rational strings or integers, got " + v.dump());
}

Real real_entry(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
  throw parse_error("float mode needs numbers or rational strings, got " + v.dump());
}

Complex complex_entry(const nlohmann::json& v) {
  if (v.is_array()) {
    if (v.size() != 2) throw parse_error("complex entries are [re, im] pairs, got " + v.dump());
    return Complex(real_entry(v[0]), real_entry(v[1]));
  }
  return Complex(real_entry(v), 0.0);
}

template <Scalar T>
T entry_as(const nlohmann::json& v) {
  if constexpr (std::same_as<T, Rational>) {
    return exact_entry(v);
  } else if constexpr (std::same_as<T, Real>) {
    return real_entry(v);
  } else {
    return complex_entry(v);
  }
}

}  // namespace

ScalarKind parse_mode(std::string_view text) {
  if (text == "exact") return ScalarKind::exact;
  if (text == "float") return ScalarKind::real;
  if (text == "complex") return ScalarKind::complex;
  throw parse_error("unknown mode '" + std::string(text) + "' (expected exact|float|complex)");
}

template <Scalar T>
QuadricSurface<T> quadric_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw parse_error("quadric file must hold a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long>() < 1) {
    throw parse_error("quadric file needs an integer field n >= 1");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long>());

  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) throw parse_error("field kind must be a string");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind != "rational" && kind != "float" && kind != "complex") {
      throw parse_error("unknown kind '" + kind + "' (expected rational|float|complex)");
    }
    if (kind == "complex" && kind_of<T> != ScalarKind::complex) {
      throw parse_error("a complex quadric cannot be verified in " +
                        std::string(to_string(kind_of<T>)) + " mode");
    }
    if (kind == "float" && is_exact_v<T>) {
      throw parse_error("a float quadric cannot be verified in exact mode");
    }
  }

  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw parse_error("quadric file needs an entries array");
  }
  const nlohmann::json& rows = doc["entries"];
  const std::size_t m = n + 2;
  if (rows.size() != m) {
    throw parse_error("entries must have n+2 = " + std::to_string(m) + " rows");
  }
  std::vector<T> e;
  e.reserve(m * m);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != m) {
      throw parse_error("every entries row must have n+2 = " + std::to_string(m) + " values");
    }
    for (const auto& v : row) e.push_back(entry_as<T>(v));
  }
  return QuadricSurface<T>(Matrix<T>(m, m, std::move(e)));
}

template <Scalar T>
QuadricSurface<T> read_quadric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open quadric file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw parse_error("malformed JSON in '" + path + "': " + ex.what());
  }
  return quadric_from_json<T>(doc);
}

template <Scalar T>
ColVector<T> parse_point(std::string_view text) {
  if (trim(text).empty()) throw parse_error("empty point");
  std::vector<T> coords;
  if constexpr (std::same_as<T, Rational>) {
    for (const std::string& tok : split_commas(text)) coords.push_back(parse_rational(tok));
  } else if constexpr (std::same_as<T, Real>) {
    for (const std::string& tok : split_commas(text)) coords.push_back(parse_decimal(tok));
  } else {
    nlohmann::json items;
    try {
      items = nlohmann::json::parse("[" + std::string(text) + "]");
    } catch (const nlohmann::json::exception&) {
      throw parse_error("malformed complex point '" + std::string(text) + "'");
    }
    for (const auto& item : items) {
      if (item.is_string()) throw parse_error("complex coordinates are numbers or [re, im] pairs");
      coords.push_back(complex_entry(item));
    }
  }
  return ColVector<T>(std::move(coords));
}

template QuadricSurface<Rational> quadric_from_json(const nlohmann::json&);
template QuadricSurface<Real> quadric_from_json(const nlohmann::json&);
template QuadricSurface<Complex> quadric_from_json(const nlohmann::json&);
template QuadricSurface<Rational> read_quadric_file(const std::string&);
template QuadricSurface<Real> read_quadric_file(const std::string&);
template QuadricSurface<Complex> read_quadric_file(const std::string&);
template ColVector<Rational> parse_point(std::string_view);
template ColVector<Real> parse_point(std::string_view);
template ColVector<Complex> parse_point(std::string_view);

}  // namespace quadhess::cli
