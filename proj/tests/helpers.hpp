#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "maxplus/honest.hpp"
#include "maxplus/io.hpp"
#include "maxplus/matrix.hpp"

namespace testutil {

// Builds a dense matrix from whitespace-separated tokens through the text
// parser, so fixtures double as format coverage.
inline maxplus::Matrix mat(int n, const std::string& body) {
  std::stringstream ss("maxplus v1\nn " + std::to_string(n) + "\n" + body);
  return maxplus::read_matrix(ss);
}

// The all-ones banded matrix: a = 1, b = -1 everywhere. Small, fully
// hand-checkable, and the anchor for most frozen values.
inline maxplus::HonestMatrix ones_honest(int m) {
  const std::size_t n = static_cast<std::size_t>(2 * m + 1);
  return maxplus::HonestMatrix(m, std::vector<maxplus::Weight>(n, 1),
                               std::vector<maxplus::Weight>(n, -1));
}

// Order-5 banded matrix whose apex condition fails: the heavy 1 -> 2 edge
// can be used twice in long walks, pushing entries above the top cycle
// weight 54.
inline maxplus::HonestMatrix lopsided_honest() {
  return maxplus::HonestMatrix(2, {50, 1, 1, 1, 1}, {-1, -1, -1, -1, -1});
}

// Worked 3x3 example: support 2, squared (1,1) entry 6.
inline maxplus::Matrix example3() {
  return mat(3,
             "3 -inf 4\n"
             "-inf 1 -2\n"
             "-inf -inf -inf\n");
}

inline std::vector<maxplus::Value> vals(const std::string& tokens) {
  std::stringstream ss(tokens);
  std::vector<maxplus::Value> out;
  std::string tok;
  while (ss >> tok)
    out.push_back(tok == "-inf" ? maxplus::Value::eps()
                                : maxplus::Value::of(std::stoll(tok)));
  return out;
}

}  // namespace testutil
