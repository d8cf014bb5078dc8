#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "brdkit/casefile.hpp"
#include "brdkit/formula.hpp"
#include "brdkit/rational.hpp"

namespace test_support {

inline brdkit::Formula F(const std::string& text, const brdkit::ParseContext& ctx = {}) {
  return brdkit::parse_formula(text, ctx);
}

inline brdkit::Rational Q(long p, long q) { return brdkit::make_rational(p, q); }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline brdkit::CaseModel sample(const std::string& name) {
  return brdkit::load_case(read_text(std::string(BRDKIT_CASES_DIR) + "/" + name));
}

}  // namespace test_support
