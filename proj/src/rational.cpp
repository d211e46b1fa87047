#include "latticecalc/rational.hpp"

#include <regex>

#include "latticecalc/error.hpp"

namespace latticecalc {

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^\s*([+-]?[0-9]+)(?:/([0-9]+))?\s*$)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) {
    input_error("bad_rational", "not a rational literal: \"" + s + "\"");
  }
  Integer numerator(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str(), 10);
  Integer denominator = 1;
  if (m[2].matched) {
    denominator = Integer(m[2].str(), 10);
    if (denominator == 0) input_error("bad_rational", "zero denominator in \"" + s + "\"");
  }
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

}  // namespace latticecalc
