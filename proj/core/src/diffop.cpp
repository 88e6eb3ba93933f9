#include "glesim/diffop.hpp"

#include <algorithm>
#include <cmath>

#include "glesim/errors.hpp"

namespace glesim::diffop {

bool Monomial::operator<(const Monomial& o) const {
  if (eq != o.eq) return eq < o.eq;
  if (ep != o.ep) return ep < o.ep;
  if (ez != o.ez) return ez < o.ez;
  return symbols < o.symbols;
}

std::string Monomial::str() const {
  std::string s;
  auto pow_str = [](const std::string& v, int e) {
    if (e == 0) return std::string();
    if (e == 1) return v;
    return v + "^" + std::to_string(e);
  };
  s += pow_str("q", eq);
  s += pow_str("p", ep);
  s += pow_str("z", ez);
  for (const auto& [k, pw] : symbols) {
    std::string base = "V" + std::string(static_cast<std::size_t>(k), '\'');
    s += pow_str(base, pw);
  }
  return s;
}

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.eq = a.eq + b.eq;
  r.ep = a.ep + b.ep;
  r.ez = a.ez + b.ez;
  r.symbols = a.symbols;
  for (const auto& [k, pw] : b.symbols) {
    auto it = std::find_if(r.symbols.begin(), r.symbols.end(),
                           [&](const auto& s) { return s.first == k; });
    if (it == r.symbols.end())
      r.symbols.emplace_back(k, pw);
    else
      it->second += pw;
  }
  std::sort(r.symbols.begin(), r.symbols.end());
  return r;
}

// derivative of a coefficient monomial with respect to one variable; product
// rule over the power and every symbol (d/dq V^(k) = V^(k+1))
std::vector<std::pair<double, Monomial>> mono_derivative(const Monomial& m,
                                                         Deriv var) {
  std::vector<std::pair<double, Monomial>> out;
  if (var == Deriv::p) {
    if (m.ep > 0) {
      Monomial r = m;
      r.ep -= 1;
      out.emplace_back(static_cast<double>(m.ep), r);
    }
    return out;
  }
  if (var == Deriv::z) {
    if (m.ez > 0) {
      Monomial r = m;
      r.ez -= 1;
      out.emplace_back(static_cast<double>(m.ez), r);
    }
    return out;
  }
  if (var == Deriv::q) {
    if (m.eq > 0) {
      Monomial r = m;
      r.eq -= 1;
      out.emplace_back(static_cast<double>(m.eq), r);
    }
    for (std::size_t i = 0; i < m.symbols.size(); ++i) {
      const auto [k, pw] = m.symbols[i];
      Monomial r = m;
      if (pw == 1)
        r.symbols.erase(r.symbols.begin() + static_cast<std::ptrdiff_t>(i));
      else
        r.symbols[i].second -= 1;
      Monomial up;
      up.symbols = {{k + 1, 1}};
      out.emplace_back(static_cast<double>(pw), mono_mul(r, up));
    }
  }
  return out;
}

} // namespace

void DiffOp::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    if (a.deriv != b.deriv) return a.deriv < b.deriv;
    return a.mono < b.mono;
  });
  std::vector<Term> merged;
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().deriv == t.deriv &&
        merged.back().mono == t.mono)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  terms_.clear();
  for (const auto& t : merged)
    if (std::abs(t.coeff) > 1e-12) terms_.push_back(t);
}

DiffOp DiffOp::identity(double c) {
  DiffOp op;
  op.terms_.push_back(Term{c, Monomial{}, Deriv::none});
  op.canonicalize();
  return op;
}

DiffOp DiffOp::d(Deriv which, double c) {
  DiffOp op;
  op.terms_.push_back(Term{c, Monomial{}, which});
  op.canonicalize();
  return op;
}

DiffOp DiffOp::mult(const Monomial& mono, double c) {
  DiffOp op;
  op.terms_.push_back(Term{c, mono, Deriv::none});
  op.canonicalize();
  return op;
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
  DiffOp r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.canonicalize();
  return r;
}

DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + o * -1.0; }

DiffOp DiffOp::operator*(double c) const {
  DiffOp r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  r.canonicalize();
  return r;
}

DiffOp DiffOp::commutator(const DiffOp& o) const {
  // [f d_u + f0, g d_v + g0] = f (d_u g) d_v - g (d_v f) d_u
  //                           + f (d_u g0) - g (d_v f0)
  DiffOp r;
  for (const auto& x : terms_) {
    for (const auto& y : o.terms_) {
      if (x.deriv != Deriv::none) {
        for (const auto& [c, m] : mono_derivative(y.mono, x.deriv))
          r.terms_.push_back(
              Term{x.coeff * y.coeff * c, mono_mul(x.mono, m), y.deriv});
      }
      if (y.deriv != Deriv::none) {
        for (const auto& [c, m] : mono_derivative(x.mono, y.deriv))
          r.terms_.push_back(
              Term{-x.coeff * y.coeff * c, mono_mul(y.mono, m), x.deriv});
      }
    }
  }
  r.canonicalize();
  return r;
}

DiffOp DiffOp::adjoint() const {
  // (f d_u)* = -f d_u - (d_u f) + f U_u with U = V + p^2/2 + z^2/2
  DiffOp r;
  for (const auto& t : terms_) {
    if (t.deriv == Deriv::none) {
      r.terms_.push_back(t);
      continue;
    }
    r.terms_.push_back(Term{-t.coeff, t.mono, t.deriv});
    for (const auto& [c, m] : mono_derivative(t.mono, t.deriv))
      r.terms_.push_back(Term{-t.coeff * c, m, Deriv::none});
    Monomial uu;
    if (t.deriv == Deriv::q)
      uu.symbols = {{1, 1}};
    else if (t.deriv == Deriv::p)
      uu.ep = 1;
    else
      uu.ez = 1;
    r.terms_.push_back(Term{t.coeff, mono_mul(t.mono, uu), Deriv::none});
  }
  r.canonicalize();
  return r;
}

bool DiffOp::operator==(const DiffOp& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& a = terms_[i];
    const auto& b = o.terms_[i];
    if (a.deriv != b.deriv || !(a.mono == b.mono) ||
        std::abs(a.coeff - b.coeff) > 1e-12)
      return false;
  }
  return true;
}

std::string DiffOp::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + std::to_string(t.coeff) + ")";
    const std::string m = t.mono.str();
    if (!m.empty()) s += m;
    switch (t.deriv) {
      case Deriv::none: break;
      case Deriv::q: s += " d_q"; break;
      case Deriv::p: s += " d_p"; break;
      case Deriv::z: s += " d_z"; break;
    }
  }
  return s;
}

DiffOp DiffOp::term(double c, const Monomial& mono, Deriv deriv) {
  DiffOp op;
  op.terms_.push_back(Term{c, mono, deriv});
  op.canonicalize();
  return op;
}

DiffOp op_A() { return DiffOp::d(Deriv::z, -1.0); }

DiffOp op_B() {
  Monomial p1;
  p1.ep = 1;
  Monomial z1;
  z1.ez = 1;
  Monomial vprime;
  vprime.symbols = {{1, 1}};
  // B = -p d_q + V' d_p - z d_p + p d_z
  return DiffOp::term(-1.0, p1, Deriv::q) + DiffOp::term(1.0, vprime, Deriv::p) +
         DiffOp::term(-1.0, z1, Deriv::p) + DiffOp::term(1.0, p1, Deriv::z);
}

std::vector<IdentityCheck> commutator_table() {
  const DiffOp A = op_A();
  const DiffOp B = op_B();
  const DiffOp C = A.commutator(B);
  const DiffOp C2 = C.commutator(B);
  const DiffOp Astar = A.adjoint();
  const DiffOp Cstar = C.adjoint();
  const DiffOp C2star = C2.adjoint();
  const DiffOp Id = DiffOp::identity();

  Monomial vpp;
  vpp.symbols = {{2, 1}};
  const DiffOp Vpp = DiffOp::mult(vpp);
  const DiffOp dp = DiffOp::d(Deriv::p);
  const DiffOp dq = DiffOp::d(Deriv::q);
  const DiffOp dz = DiffOp::d(Deriv::z);
  // -V'' d_p as an operator
  const DiffOp vpp_dp = DiffOp::term(1.0, vpp, Deriv::p);

  std::vector<std::pair<std::string, std::pair<DiffOp, DiffOp>>> checks = {
      {"C = [A,B] = d_p", {C, dp}},
      {"C2 = [C,B] = d_z - d_q", {C2, dz - dq}},
      {"[A,A] = 0", {A.commutator(A), DiffOp::zero()}},
      {"[A,C] = 0", {A.commutator(C), DiffOp::zero()}},
      {"[A,C2] = 0", {A.commutator(C2), DiffOp::zero()}},
      {"[A,A*] = Id", {A.commutator(Astar), Id}},
      {"[C,A*] = 0", {C.commutator(Astar), DiffOp::zero()}},
      {"[C2,A*] = -Id", {C2.commutator(Astar), Id * -1.0}},
      {"[C2,B] = -V'' d_p - d_p", {C2.commutator(B), vpp_dp * -1.0 - dp}},
      {"[C,C*] = Id", {C.commutator(Cstar), Id}},
      {"[C2*,C2] = -Id - V''", {C2star.commutator(C2), Id * -1.0 - Vpp}},
  };

  std::vector<IdentityCheck> out;
  for (auto& [name, pair] : checks) {
    IdentityCheck ic;
    ic.name = name;
    ic.actual = pair.first.str();
    ic.expected = pair.second.str();
    ic.pass = pair.first == pair.second;
    out.push_back(std::move(ic));
  }
  return out;
}

} // namespace glesim::diffop
