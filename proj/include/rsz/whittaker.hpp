#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>

#include "rsz/padic.hpp"
#include "rsz/reps.hpp"

namespace rsz {

struct WhittakerValue {
  CycScalar value;
  bool in_support = false;
};

struct UnsupportedClass : DomainError {
  using DomainError::DomainError;
};

// Normalized new vector W^new of pi in W(pi, psi), with values on g_{t,k,v} cached.
class NewVector {
 public:
  // Throws UnsupportedClass for classes without a table.
  explicit NewVector(LocalRep pi);

  const LocalRep& rep() const { return pi_; }
  int conductor() const { return c_; }
  const MultChar& central() const { return omega_; }

  // W(g_{t,k,v}), v a p-adic unit, 0 <= k <= c.
  WhittakerValue at_coset(int t, int k, const Rational& v) const;
  // W(g) in the model W(pi, psi^{psi_sign}); psi_sign = -1 uses W(diag(-1,1) g).
  CycScalar operator()(const Mat2& g, int psi_sign = 1) const;

 private:
  WhittakerValue table(int t, int k, const Rational& v) const;

  LocalRep pi_;
  int c_;
  MultChar omega_;
  mutable std::map<std::tuple<int, int, long>, WhittakerValue> cache_;
};

WhittakerValue eval_coset(const LocalRep& pi, int t, int k, const Rational& v);
CycScalar eval_general(const LocalRep& pi, const Mat2& g, int psi_sign = 1);

// W^new_pi(g) = omega_pi(det g) W^new*_{pi^vee}(g) on the grid g = g_{t,k,v}, t in [t_min, t_max],
// with W^new*(g) = W^new(g A) / W^new(A), A = [[0, p^{-c}], [1, 0]].
struct ConjNewReport {
  bool ok = true;
  int checked = 0;
  std::string first_failure;
};
// `corrupt` (optional) perturbs the table side to exercise the harness.
ConjNewReport conj_new_check(const LocalRep& pi, int t_min, int t_max,
                             const std::function<CycScalar(int, int, long, const CycScalar&)>& corrupt = {});

}  // namespace rsz
