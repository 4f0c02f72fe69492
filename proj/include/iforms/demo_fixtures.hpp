#pragma once

// Built-in demo scenarios.  The same texts are shipped as editable files
// under demos/; a unit test keeps the two in sync.

#include <string>
#include <vector>

#include "iforms/error.hpp"

namespace iforms::demos {

inline std::string sl2() {
  return
      "# Left-invariant 1-forms on SL(2): the integrability variety is one conic.\n"
      "L = algebra(3) { [1,2] = -e(1); [1,3] = -e(2); [2,3] = -e(3); };\n"
      "lie_jacobi(L);\n"
      "lie_quadrics(L);\n"
      "lie_check(L, [1, 0, 0]);\n"
      "lie_check(L, [1, 2, 2]);\n"
      "lie_check(L, [1, 1, 1]) expect false;\n";
}

inline std::string godbillon_vey() {
  return
      "# Finite Godbillon-Vey sequences: a conic of integrable classes, the\n"
      "# accepted and rejected two-term sequences, and a length-4 sequence with\n"
      "# the high-index wedge obstruction.\n"
      "ambient 2;\n"
      "w0 = d(x0);\n"
      "w1 = x1*d(x0);\n"
      "w2 = -d(x1) + 1/2*x1^2*d(x0);\n"
      "S = seq(w0, w1, w2);\n"
      "gv_check(S);\n"
      "gv_obstruction(S);\n"
      "gv_curve(S);\n"
      "S2 = seq(d(x0), d(x0));\n"
      "gv_check(S2);\n"
      "S3 = seq(d(x0), d(x1));\n"
      "gv_check(S3) expect false;\n"
      "T = seq(d(x0), x0*d(x0), x0^2*d(x0), x0^3*d(x0));\n"
      "gv_check(T);\n"
      "gv_obstruction(T);\n"
      "gv_curve(T);\n";
}

/// The family w_0 = d(x0), w_j = ((j+1) + j*(x0+...+xn)) d(xj): a rational
/// normal curve of integrable classes through n+3 distinguished members.
inline std::string rnc_family(int n) {
  if (n < 2 || n > 8) throw DomainError("rnc_family: n must be in 2..8");
  std::string s = "# The degree-" + std::to_string(n) +
                  " rational normal curve of integrable classes.\n";
  s += "ambient " + std::to_string(n + 1) + ";\n";
  s += "u = x0";
  for (int i = 1; i <= n; ++i) s += " + x" + std::to_string(i);
  s += ";\n";
  s += "w0 = d(x0);\n";
  for (int j = 1; j <= n; ++j) {
    s += "w" + std::to_string(j) + " = (" + std::to_string(j + 1);
    s += j == 1 ? " + u" : " + " + std::to_string(j) + "*u";
    s += ")*d(x" + std::to_string(j) + ");\n";
  }
  s += "W = space(w0";
  for (int j = 1; j <= n; ++j) s += ", w" + std::to_string(j);
  s += ");\n";
  s += "wsum = w0";
  for (int j = 1; j <= n; ++j) s += " + w" + std::to_string(j);
  s += ";\n";
  s += "wharm = 1/2*w0";
  for (int j = 1; j <= n; ++j)
    s += " + 1/" + std::to_string(j + 2) + "*w" + std::to_string(j);
  s += ";\n";
  s += "wbad = w0";
  for (int j = 1; j <= n; ++j)
    s += " + " + std::to_string(j + 1) + "*w" + std::to_string(j);
  s += ";\n";
  for (int j = 1; j <= n; ++j) s += "check(w" + std::to_string(j) + ");\n";
  s += "check(wsum);\n";
  s += "check(wharm);\n";
  s += "check(wbad) expect false;\n";
  s += "rank(W);\n";
  s += "veronese_web(W, w0";
  for (int j = 1; j <= n; ++j) s += ", w" + std::to_string(j);
  s += ", wsum, wharm);\n";
  return s;
}

inline std::string steiner_conic() {
  return
      "# Five points on the conic y^2 = xz and the unique conic through them.\n"
      "P = points([1, 0, 0], [0, 0, 1], [1, 1, 1], [1, 2, 4], [1, 3, 9]);\n"
      "steiner(P);\n";
}

inline std::string sl2_point() {
  return
      "# Is a + 2b + 2c integrable among left-invariant forms on SL(2)?\n"
      "L = algebra(3) { [1,2] = -e(1); [1,3] = -e(2); [2,3] = -e(3); };\n"
      "lie_check(L, [1, 2, 2]);\n";
}

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"paper-4.1", "paper-4.2", "paper-4.3",
                                             "steiner-conic"};
  return n;
}

/// Source text of a named demo; `n` only affects paper-4.3.
inline std::string source(const std::string& name, int n = 2) {
  if (name == "paper-4.1") return sl2();
  if (name == "paper-4.2") return godbillon_vey();
  if (name == "paper-4.3") return rnc_family(n);
  if (name == "steiner-conic") return steiner_conic();
  throw DomainError("unknown demo '" + name + "'");
}

} // namespace iforms::demos
