#pragma once

// A datum of finite Cartan type over a finite abelian group: a Cartan
// matrix (a_ij), group elements g_i, characters chi_i, linking scalars
// lambda_ij and root-vector scalars mu_alpha.  Supported diagrams are
// disjoint unions of A1 vertices plus at most one A2 pair.  Validation
// checks the compatibility conditions; the derived RootDatum lists the
// positive roots in convex order with their heights, group elements,
// characters and truncation orders N_alpha.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hopfcoh/group.hpp"
#include "hopfcoh/scalar.hpp"

namespace hopfcoh {

// Sum of terms coeff * zeta_{zeta_order}^power; a plain rational is a
// single term with zeta_order = 1.
struct ScalarLiteral {
  struct Term {
    long zeta_order = 1;
    long power = 0;
    Rational coeff = Rational(1);
  };
  std::vector<Term> terms;

  static ScalarLiteral rational(const Rational& q) {
    return {{Term{1, 0, q}}};
  }
  static ScalarLiteral zero() { return {}; }
  Scalar resolve(const CycloField& F) const;
  bool literally_zero() const;  // all coefficients zero (field-independent)
};

struct CartanDatum {
  std::vector<long> invariant_factors;
  int theta = 0;
  std::vector<std::vector<int>> cartan;
  std::vector<std::vector<long>> g_exponents;    // one vector per vertex
  std::vector<std::vector<long>> chi_exponents;  // one vector per vertex
  std::map<std::pair<int, int>, ScalarLiteral> lambda;  // keys i<j, 0-based
  std::map<std::vector<int>, ScalarLiteral> mu;  // key: root coefficient vector
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

struct Component {
  bool is_a2 = false;
  std::vector<int> vertices;  // ascending; size 1 or 2
};

struct Root {
  std::vector<int> coeffs;  // over simple roots
  int component = 0;
  long height = 0;
  GroupIndex g = 0;    // g_alpha
  Character chi;       // chi_alpha
  long N = 0;          // order of chi_alpha(g_alpha)
  bool simple = false;
  int vertex = -1;     // defined for simple roots
  Scalar mu;           // resolved scalar, zero if absent
};

class DatumContext {
 public:
  // Validates and derives; returns nullptr (with report filled) on errors.
  static std::unique_ptr<DatumContext> build(const CartanDatum& d,
                                             ValidationReport& report);

  const AbelianGroup& group() const { return *group_; }
  const CycloField& field() const { return *field_; }
  int theta() const { return theta_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  GroupIndex g(int i) const { return g_[i]; }
  const Character& chi(int i) const { return chi_[i]; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Root>& roots() const { return roots_; }
  const ValidationReport& report() const { return report_; }

  // chi_j(g_i) as exponent of zeta_e and as a scalar
  long braiding_exponent(int i, int j) const;
  Scalar braiding(int i, int j) const;

  Scalar lambda_ij(int i, int j) const;  // requires i < j; zero if absent
  Scalar lambda_ji(int i, int j) const;  // -chi_i(g_j) * lambda_ij

  // mu_alpha(1 - g_alpha^{N_alpha}) for a simple root, as a kGamma element
  std::map<GroupIndex, Scalar> u_alpha_simple(int root_index) const;

  bool connected(int i, int j) const;  // same component

 private:
  DatumContext() = default;
  std::unique_ptr<AbelianGroup> group_;
  std::unique_ptr<CycloField> field_;
  int theta_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<GroupIndex> g_;
  std::vector<Character> chi_;
  std::vector<Component> components_;
  std::vector<Root> roots_;
  std::map<std::pair<int, int>, Scalar> lambda_;
  std::vector<int> component_of_;
  ValidationReport report_;
};

}  // namespace hopfcoh
