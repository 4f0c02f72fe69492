#pragma once

#include <vector>

#include "iforms/error.hpp"
#include "iforms/exterior.hpp"
#include "iforms/formspace.hpp"
#include "iforms/rational.hpp"

namespace iforms {

/// Finite Godbillon-Vey candidate sequence (omega_0, ..., omega_{i0}):
/// 1-forms over a common variable set, trailing zero forms trimmed.
class GVSequence {
 public:
  explicit GVSequence(std::vector<PForm> forms) : forms_(std::move(forms)) {
    if (forms_.empty()) throw DomainError("GVSequence: empty sequence");
    nvars_ = forms_.front().nvars();
    for (const auto& f : forms_) {
      if (f.nvars() != nvars_) throw MismatchError("GVSequence: mixed variable counts");
      if (f.degree() != 1) throw DomainError("GVSequence: entries must be 1-forms");
    }
    while (forms_.size() > 1 && forms_.back().is_zero()) forms_.pop_back();
    if (forms_.back().is_zero()) throw DomainError("GVSequence: all forms are zero");
  }

  int nvars() const { return nvars_; }
  std::size_t size() const { return forms_.size(); }
  int top_index() const { return static_cast<int>(forms_.size()) - 1; }
  const std::vector<PForm>& forms() const { return forms_; }

 private:
  int nvars_ = 0;
  std::vector<PForm> forms_;
};

/// Development Omega = dz + sum_i z^i/i! omega_i as a polynomial 1-form on
/// nvars+1 variables, z being the last one.
inline PForm develop(const GVSequence& seq) {
  const int n = seq.nvars();
  PForm omega = PForm::d_coordinate(n + 1, n);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    MPoly zi = MPoly::variable(n + 1, n).pow(static_cast<unsigned>(i));
    zi *= Rational(1, factorial(static_cast<unsigned>(i)));
    omega += seq.forms()[i].widened(n + 1) * zi;
  }
  return omega;
}

/// True iff the development is integrable identically in (x, z).
inline bool is_gv_sequence(const GVSequence& seq) { return is_integrable(develop(seq)); }

/// The rational curve c -> [sum_i c^i/i! omega_i] in P(W), homogenized with
/// c = t/s and factorials cleared: component i is (i0!/i!) s^(i0-i) t^i.
/// Requires a genuine GV sequence with linearly independent forms.
inline CurveParam gv_curve(const GVSequence& seq) {
  if (!is_gv_sequence(seq))
    throw PreconditionError("gv_curve: sequence is not a Godbillon-Vey sequence");
  // FormSpace validates independence; report the GV-specific message.
  try {
    FormSpace w(seq.forms());
  } catch (const DomainError&) {
    throw PreconditionError("gv_curve: forms are linearly dependent "
                            "(the curve lives in a quotient space)");
  }
  const int i0 = seq.top_index();
  const Int top = factorial(static_cast<unsigned>(i0));
  std::vector<BiForm> comps;
  comps.reserve(seq.size());
  for (int i = 0; i <= i0; ++i) {
    const Rational c(top, factorial(static_cast<unsigned>(i)));
    comps.push_back(BiForm::monomial(i0, i, c));
  }
  return CurveParam(std::move(comps));
}

/// The high-index wedge obstruction: omega_i ^ omega_j = 0 for all i, j >= 2.
/// For a genuine GV sequence with i0 > 2 this must hold, forcing
/// rank(span(forms)) <= 3.
inline bool high_wedge_obstruction(const GVSequence& seq) {
  if (!is_gv_sequence(seq))
    throw PreconditionError("high_wedge_obstruction: sequence is not a Godbillon-Vey sequence");
  for (std::size_t i = 2; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (!wedge(seq.forms()[i], seq.forms()[j]).is_zero()) return false;
  return true;
}

} // namespace iforms
