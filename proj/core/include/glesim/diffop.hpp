#pragma once

#include <string>
#include <vector>

namespace glesim {

// First-order differential operators with polynomial coefficients in
// (q, p, z) and opaque potential-derivative symbols V', V'', ... for the
// unit-constant m = d = 1 system. Enough structure to verify the commutator
// algebra of the generator symbolically, for arbitrary smooth V.
namespace diffop {

enum class Deriv { none, q, p, z };

struct Monomial {
  int eq = 0, ep = 0, ez = 0;
  // (derivative order k, power) for symbols V^(k), k >= 1, sorted by k
  std::vector<std::pair<int, int>> symbols;

  bool operator==(const Monomial&) const = default;
  bool operator<(const Monomial& o) const;
  std::string str() const;
};

struct Term {
  double coeff = 0.0;
  Monomial mono;
  Deriv deriv = Deriv::none;
};

class DiffOp {
public:
  DiffOp() = default;
  static DiffOp zero() { return {}; }
  static DiffOp identity(double c = 1.0);
  static DiffOp d(Deriv which, double c = 1.0);
  static DiffOp mult(
    const Monomial& mono, double c = 1.0);  // multiplication operator
  static DiffOp term(double c, const Monomial& mono, Deriv deriv);

  DiffOp operator+(const DiffOp& o) const;
  DiffOp operator-(const DiffOp& o) const;
  DiffOp operator*(double c) const;

  // commutator [this, other]; both operators must be at most first order,
  // and the result is again at most first order
  DiffOp commutator(const DiffOp& o) const;

  // adjoint in L2 of exp(-(V(q) + p^2/2 + z^2/2)) (unit constants)
  DiffOp adjoint() const;

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const DiffOp& o) const;
  std::string str() const;

  const std::vector<Term>& terms() const { return terms_; }

private:
  std::vector<Term> terms_;
  void canonicalize();
};

// operators of the unit-constant generator: A = -d_z and
// B = -p d_q + V' d_p - z d_p + p d_z
DiffOp op_A();
DiffOp op_B();

struct IdentityCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

// all commutator identities of the unit-constant operator family
std::vector<IdentityCheck> commutator_table();

} // namespace diffop
} // namespace glesim
