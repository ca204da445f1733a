#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "maxplus/errors.hpp"
#include "maxplus/honest.hpp"
#include "maxplus/matrix.hpp"

namespace maxplus {

// Matrix text format v1:
//   maxplus v1
//   n <N>
//   N rows of N whitespace-separated tokens, decimal integers or `-inf`
// Entries are 64-bit integers written in full, so a round trip is bit-exact.
inline void write_matrix(std::ostream& os, const Matrix& m) {
  os << "maxplus v1\n";
  os << "n " << m.n() << "\n";
  for (int i = 1; i <= m.n(); ++i) {
    for (int j = 1; j <= m.n(); ++j) {
      if (j > 1) os << ' ';
      os << m.at(i, j);
    }
    os << '\n';
  }
}

namespace detail {

inline std::string next_token(std::istream& is, const char* what) {
  std::string tok;
  if (!(is >> tok)) throw ParseError(std::string("unexpected end of input, expected ") + what);
  return tok;
}

inline Weight parse_weight(const std::string& tok) {
  std::size_t used = 0;
  Weight w = 0;
  try {
    w = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("bad weight token '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError("bad weight token '" + tok + "'");
  return w;
}

inline Value parse_value(const std::string& tok) {
  if (tok == "-inf") return Value::eps();
  return Value::of(parse_weight(tok));
}

inline int parse_order(const std::string& tok, const char* what) {
  const Weight w = parse_weight(tok);
  if (w < 1 || w > 1000000)
    throw ParseError(std::string(what) + " out of range: " + tok);
  return static_cast<int>(w);
}

inline void expect(std::istream& is, const std::string& want) {
  const std::string got = next_token(is, want.c_str());
  if (got != want) throw ParseError("expected '" + want + "', got '" + got + "'");
}

}  // namespace detail

inline Matrix read_matrix(std::istream& is) {
  detail::expect(is, "maxplus");
  detail::expect(is, "v1");
  detail::expect(is, "n");
  const int n = detail::parse_order(detail::next_token(is, "order"), "order");
  Matrix m(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      m.at(i, j) = detail::parse_value(detail::next_token(is, "matrix entry"));
  return m;
}

// Compact honest form:
//   honest v1
//   m <m>
//   a: <2m+1 ints>
//   b: <2m+1 ints>
inline void write_honest(std::ostream& os, const HonestMatrix& h) {
  os << "honest v1\n";
  os << "m " << h.m() << "\n";
  os << "a:";
  for (Weight w : h.a_band()) os << ' ' << w;
  os << "\nb:";
  for (Weight w : h.b_band()) os << ' ' << w;
  os << '\n';
}

inline HonestMatrix read_honest(std::istream& is) {
  detail::expect(is, "honest");
  detail::expect(is, "v1");
  detail::expect(is, "m");
  const int m = detail::parse_order(detail::next_token(is, "order parameter"), "order parameter");
  const std::size_t n = static_cast<std::size_t>(2 * m + 1);
  detail::expect(is, "a:");
  std::vector<Weight> a(n);
  for (auto& w : a) w = detail::parse_weight(detail::next_token(is, "band weight"));
  detail::expect(is, "b:");
  std::vector<Weight> b(n);
  for (auto& w : b) w = detail::parse_weight(detail::next_token(is, "band weight"));
  return HonestMatrix(m, std::move(a), std::move(b));
}

inline void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_matrix(os, m);
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed");
}

inline void save_honest(const std::string& path, const HonestMatrix& h) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_honest(os, h);
  os.flush();
  if (!os) throw IoError("write to '" + path + "' failed");
}

inline Matrix load_matrix(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return read_matrix(is);
}

inline HonestMatrix load_honest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return read_honest(is);
}

// Accepts either on-disk format and returns the dense matrix.
inline Matrix load_dense_or_honest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  std::string head;
  if (!(is >> head)) throw ParseError("empty input file '" + path + "'");
  is.seekg(0);
  if (head == "honest") return to_dense(read_honest(is));
  return read_matrix(is);
}

}  // namespace maxplus
