#include "brdkit/rational.hpp"

#include <cctype>

#include "brdkit/error.hpp"

namespace brdkit {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw CaseError("malformed rational '" + std::string(text) + "', expected p/q");
  }
  const BigInt p{std::string(num)};
  const BigInt q{std::string(den)};
  if (q == 0) throw CaseError("rational '" + std::string(text) + "' has zero denominator");
  Rational r(p, q);
  r.canonicalize();
  if (r.get_num() != p || r.get_den() != q) {
    throw CaseError("rational '" + std::string(text) + "' is not in lowest terms");
  }
  return r;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace brdkit
