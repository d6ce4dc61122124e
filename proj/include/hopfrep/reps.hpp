#pragma once

// Modules as verified matrix triples, the simple-module census, induced and
// tensor modules, hom spaces, socles, the 2-dimensional module families and
// isomorphism testing.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hopfrep/algebra.hpp"
#include "hopfrep/blocks.hpp"
#include "hopfrep/hopf.hpp"
#include "hopfrep/linalg.hpp"
#include "hopfrep/report.hpp"

namespace hopfrep {

class RelationViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedLambda : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroLambda : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Module {
  AlgPtr alg;
  std::size_t d = 0;
  Matrix G, A, B;
};

namespace detail {

inline void require(bool ok, const char* rel) {
  if (!ok) throw RelationViolation(std::string("module violates ") + rel);
}

}  // namespace detail

inline Module module_make(const AlgPtr& alg, Matrix G, Matrix A, Matrix B) {
  const auto& F = alg->field();
  const auto& sp = alg->spec();
  const std::size_t d = G.rows();
  if (G.cols() != d || A.rows() != d || A.cols() != d || B.rows() != d || B.cols() != d)
    throw RelationViolation("module matrices must be square of equal size");
  Matrix id = Matrix::identity(F, d);
  detail::require(G.pow(sp.n) == id, "g^n = 1");
  detail::require(A * G == G * A, "ag = ga");
  detail::require(B * G == G * A + G * B, "bg = ga + gb");
  if (alg->char2()) {
    detail::require((A * A).is_zero(), "a^2 = 0");
    detail::require(B.pow(4).is_zero(), "b^4 = 0");
    detail::require(B * A * B * A == A * B * A * B, "baba = abab");
    detail::require(B * B * A == A * B * B + A * B * A, "b^2 a = ab^2 + aba");
  } else {
    Matrix gp = G.pow(sp.p);
    detail::require(A.pow(sp.p) == (id - gp).scaled(sp.lambda), "a^p = lambda(1 - g^p)");
    detail::require(B.pow(sp.p) == (id - gp).scaled(sp.mu), "b^p = mu(1 - g^p)");
    detail::require(B * A == A * B + (A * A).scaled(alg->half()), "ba = ab + (1/2)a^2");
  }
  return {alg, d, std::move(G), std::move(A), std::move(B)};
}

// rho(basis monomial) for every basis index, built along the predecessor order.
inline std::vector<Matrix> rep_all_monomials(const Module& mod) {
  const auto& alg = mod.alg;
  std::vector<Matrix> rep(alg->dim());
  rep[0] = Matrix::identity(alg->field(), mod.d);
  for (std::size_t idx = 1; idx < alg->dim(); ++idx) {
    auto [gen, prev] = alg->lpred(idx);
    const Matrix& g = (gen == Gen::g) ? mod.G : (gen == Gen::a ? mod.A : mod.B);
    rep[idx] = g * rep[prev];
  }
  return rep;
}

inline Matrix rep_element(const Module& mod, const Element& u, const std::vector<Matrix>& rep) {
  const auto& F = mod.alg->field();
  Matrix acc(F, mod.d, mod.d);
  for (std::size_t m = 0; m < u.c.size(); ++m) {
    if (u.c[m].v == 0) continue;
    acc = acc + rep[m].scaled(u.c[m]);
  }
  return acc;
}

// --- simple modules ----------------------------------------------------------

struct SimpleLabel {
  std::uint32_t index = 0;
  std::size_t dim = 1;
};

inline Module scalar_module(const AlgPtr& alg, Scalar gv, Scalar av, Scalar bv) {
  const auto& F = alg->field();
  Matrix G(F, 1, 1), A(F, 1, 1), B(F, 1, 1);
  G.at(0, 0) = gv;
  A.at(0, 0) = av;
  B.at(0, 0) = bv;
  return module_make(alg, G, A, B);
}

// S_i = H(1,mu) (x)_A X_i realized on the basis { v, b v, ..., b^{p-1} v }.
inline Module induced_simple(const AlgPtr& alg, std::uint32_t i) {
  const auto& F = alg->field();
  const auto& sp = alg->spec();
  if (alg->char2() || !F->is_one(sp.lambda))
    throw UnsupportedLambda("induced modules require the lambda = 1 lifting");
  if (i == 0 || i >= sp.t) throw std::out_of_range("induced_simple index");
  const std::uint32_t p = sp.p;
  Scalar xi_i = F->pow(F->xi(), i);
  Scalar alpha = xi_i;                 // g v = alpha v
  Scalar beta = F->sub(F->one(), xi_i);  // a v = beta v
  Matrix G(F, p, p), A(F, p, p), B(F, p, p);
  for (std::uint32_t l = 0; l < p; ++l) {
    if (l == 0) {
      G.at(0, 0) = alpha;
      A.at(0, 0) = beta;
    } else {
      CoeffTable gb = alg->commutation_coeffs(CoeffKind::GB, l);
      for (std::uint32_t r = 0; r <= l; ++r)
        G.at(l - r, l) = F->add(G.at(l - r, l), F->mul(gb.coef[r], F->mul(alpha, F->pow(beta, r))));
      CoeffTable ab = alg->commutation_coeffs(CoeffKind::AB, l);
      for (std::uint32_t r = 0; r <= l; ++r)
        A.at(l - r, l) = F->add(A.at(l - r, l), F->mul(ab.coef[r], F->pow(beta, r + 1)));
    }
    if (l + 1 < p)
      B.at(l + 1, l) = F->one();
    else
      B.at(0, l) = F->mul(sp.mu, F->sub(F->one(), F->pow(xi_i, p)));  // b^p v = mu(1 - xi^{ip}) v
  }
  return module_make(alg, G, A, B);
}

// Census per parameter region: t = 1 has only the trivial module; lambda = 0
// has t one-dimensional modules; lambda = 1 has S_0 and the induced S_i; in
// characteristic 2 all t simples are one-dimensional.
inline std::vector<std::pair<SimpleLabel, Module>> simple_modules(const AlgPtr& alg) {
  const auto& F = alg->field();
  const auto& sp = alg->spec();
  std::vector<std::pair<SimpleLabel, Module>> out;
  if (sp.t == 1) {
    out.push_back({{0, 1}, scalar_module(alg, F->one(), F->zero(), F->zero())});
    return out;
  }
  if (alg->char2()) {
    for (std::uint32_t i = 0; i < sp.t; ++i)
      out.push_back({{i, 1}, scalar_module(alg, F->pow(F->xi(), i), F->zero(), F->zero())});
    return out;
  }
  if (F->is_zero(sp.lambda)) {
    Scalar root = F->pth_root(sp.mu);
    for (std::uint32_t i = 0; i < sp.t; ++i) {
      Scalar xi_i = F->pow(F->xi(), i);
      out.push_back({{i, 1}, scalar_module(alg, xi_i, F->zero(),
                                           F->mul(root, F->sub(F->one(), xi_i)))});
    }
    return out;
  }
  if (F->is_one(sp.lambda)) {
    out.push_back({{0, 1}, scalar_module(alg, F->one(), F->zero(), F->zero())});
    for (std::uint32_t i = 1; i < sp.t; ++i)
      out.push_back({{i, sp.p}, induced_simple(alg, i)});
    return out;
  }
  throw UnsupportedLambda("simple census requires lambda in {0, 1}; normalize first");
}

// --- hom spaces and isomorphism ----------------------------------------------

// Intertwiners F with F rho_M(x) = rho_N(x) F for the generators, as a
// subspace of d_N x d_M matrices (row-major vectorization).
inline Subspace hom_space(const Module& m, const Module& n) {
  const auto& F = m.alg->field();
  const std::size_t dm = m.d, dn = n.d, vars = dn * dm;
  Matrix sys(F, 3 * vars, vars);
  const Matrix* ms[3] = {&m.G, &m.A, &m.B};
  const Matrix* ns[3] = {&n.G, &n.A, &n.B};
  for (int gi = 0; gi < 3; ++gi) {
    std::size_t base = static_cast<std::size_t>(gi) * vars;
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) {
        std::size_t row = base + r * dm + c;
        for (std::size_t k = 0; k < dm; ++k)
          sys.at(row, r * dm + k) = F->add(sys.at(row, r * dm + k), ms[gi]->at(k, c));
        for (std::size_t k = 0; k < dn; ++k)
          sys.at(row, k * dm + c) = F->sub(sys.at(row, k * dm + c), ns[gi]->at(r, k));
      }
  }
  return kernel(sys);
}

inline std::size_t end_dim(const Module& m) { return hom_space(m, m).dim(); }

struct IsoResult {
  bool isomorphic = false;
  bool definitive = true;
};

inline IsoResult iso_test(const Module& m, const Module& n, std::size_t sample_count = 200) {
  if (m.d != n.d) return {false, true};
  const auto& F = m.alg->field();
  Subspace hom = hom_space(m, n);
  if (hom.dim() == 0) return {false, true};
  const std::size_t d = m.d, vars = hom.dim();
  auto invertible = [&](const Vec& v) {
    Matrix f(F, d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) f.at(r, c) = v[r * d + c];
    return rank_of(f) == d;
  };
  double combos = 1;
  for (std::size_t i = 0; i < vars; ++i) {
    combos *= static_cast<double>(F->q());
    if (combos > 2e6) break;
  }
  if (combos <= 1e6) {
    std::vector<std::uint64_t> odo(vars, 0);
    while (true) {
      std::size_t pos = 0;
      while (pos < odo.size()) {
        if (++odo[pos] < F->q()) break;
        odo[pos++] = 0;
      }
      if (pos == odo.size()) break;
      Vec v(d * d, F->zero());
      for (std::size_t i = 0; i < vars; ++i) {
        if (odo[i] == 0) continue;
        Scalar f = F->element(odo[i]);
        Vec row = hom.basis_row(i);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = F->add(v[j], F->mul(f, row[j]));
      }
      if (invertible(v)) return {true, true};
    }
    return {false, true};
  }
  std::mt19937_64 rng(7);
  for (std::size_t k = 0; k < sample_count; ++k) {
    Vec v(d * d, F->zero());
    for (std::size_t i = 0; i < vars; ++i) {
      Scalar f = F->element(rng() % F->q());
      Vec row = hom.basis_row(i);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = F->add(v[j], F->mul(f, row[j]));
    }
    if (invertible(v)) return {true, true};
  }
  return {false, false};  // probably not isomorphic
}

// --- tensor products ----------------------------------------------------------

inline Module tensor_module(const Module& m, const Module& n) {
  if (m.alg != n.alg) throw std::invalid_argument("tensor of modules over different algebras");
  const auto& F = m.alg->field();
  Matrix in = Matrix::identity(F, n.d);
  Matrix G = kron(m.G, n.G);
  Matrix A = kron(m.A, in) + kron(m.G, n.A);
  Matrix B = kron(m.B, in) + kron(m.G, n.B);
  return module_make(m.alg, std::move(G), std::move(A), std::move(B));
}

// --- submodules, quotients, socle ---------------------------------------------

inline Module submodule(const Module& m, const Subspace& u) {
  const auto& F = m.alg->field();
  const std::size_t r = u.dim();
  Matrix mats[3] = {Matrix(F, r, r), Matrix(F, r, r), Matrix(F, r, r)};
  const Matrix* src[3] = {&m.G, &m.A, &m.B};
  for (int gi = 0; gi < 3; ++gi)
    for (std::size_t k = 0; k < r; ++k) {
      Vec v = u.basis_row(k);
      Vec img(m.d, F->zero());
      for (std::size_t rr = 0; rr < m.d; ++rr)
        for (std::size_t cc = 0; cc < m.d; ++cc)
          if (src[gi]->at(rr, cc).v != 0 && v[cc].v != 0)
            img[rr] = F->add(img[rr], F->mul(src[gi]->at(rr, cc), v[cc]));
      auto co = u.coords(img);
      if (!co) throw RelationViolation("subspace is not a submodule");
      for (std::size_t l = 0; l < r; ++l) mats[gi].at(l, k) = (*co)[l];
    }
  return module_make(m.alg, mats[0], mats[1], mats[2]);
}

// Quotient by a stable subspace; coset representatives are the standard basis
// vectors at the non-pivot coordinates of w.
inline Module quotient_module(const Module& m, const Subspace& w) {
  const auto& F = m.alg->field();
  std::vector<std::size_t> free_cols;
  {
    std::vector<bool> piv(m.d, false);
    for (auto c : w.pivots()) piv[c] = true;
    for (std::size_t c = 0; c < m.d; ++c)
      if (!piv[c]) free_cols.push_back(c);
  }
  const std::size_t r = free_cols.size();
  Matrix mats[3] = {Matrix(F, r, r), Matrix(F, r, r), Matrix(F, r, r)};
  const Matrix* src[3] = {&m.G, &m.A, &m.B};
  for (int gi = 0; gi < 3; ++gi)
    for (std::size_t k = 0; k < r; ++k) {
      Vec img(m.d, F->zero());
      for (std::size_t rr = 0; rr < m.d; ++rr) img[rr] = src[gi]->at(rr, free_cols[k]);
      Vec res = w.dim() ? w.reduce(img) : img;
      for (std::size_t l = 0; l < r; ++l) mats[gi].at(l, k) = res[free_cols[l]];
    }
  return module_make(m.alg, mats[0], mats[1], mats[2]);
}

inline Module subquotient(const Module& m, const Subspace& u, const Subspace& w) {
  Module sub = submodule(m, u);
  Matrix win(m.alg->field(), w.dim(), u.dim());
  for (std::size_t k = 0; k < w.dim(); ++k) {
    auto co = u.coords(w.basis_row(k));
    if (!co) throw NotContained("subquotient: W is not contained in U");
    for (std::size_t l = 0; l < u.dim(); ++l) win.at(k, l) = (*co)[l];
  }
  return quotient_module(sub, Subspace::from_matrix(win));
}

struct SocleResult {
  Subspace soc;
  std::map<std::uint32_t, std::size_t> census;  // simple index -> multiplicity
};

// soc(M) = annihilator of the radical, intersected kernel by kernel.
inline SocleResult socle(const Module& mod, const Subspace& jac,
                         const std::vector<std::pair<SimpleLabel, Module>>& simples) {
  const auto& F = mod.alg->field();
  std::vector<Matrix> rep = rep_all_monomials(mod);
  Subspace cur = Subspace::full(F, mod.d);
  for (std::size_t k = 0; k < jac.dim() && cur.dim() > 0; ++k) {
    Element u{mod.alg, jac.basis_row(k)};
    Matrix ru = rep_element(mod, u, rep);
    // restrict rho(u) to the running intersection and cut its kernel
    Matrix img(F, cur.dim(), mod.d);
    for (std::size_t r = 0; r < cur.dim(); ++r) {
      Vec v = cur.basis_row(r);
      for (std::size_t rr = 0; rr < mod.d; ++rr) {
        Scalar acc = F->zero();
        for (std::size_t cc = 0; cc < mod.d; ++cc)
          if (ru.at(rr, cc).v != 0 && v[cc].v != 0)
            acc = F->add(acc, F->mul(ru.at(rr, cc), v[cc]));
        img.at(r, rr) = acc;
      }
    }
    Subspace ker = kernel(img.transpose());
    Matrix next(F, ker.dim(), mod.d);
    for (std::size_t r = 0; r < ker.dim(); ++r) {
      Vec co = ker.basis_row(r);
      for (std::size_t cc = 0; cc < mod.d; ++cc) {
        Scalar acc = F->zero();
        for (std::size_t l = 0; l < cur.dim(); ++l)
          if (co[l].v != 0) acc = F->add(acc, F->mul(co[l], cur.basis().at(l, cc)));
        next.at(r, cc) = acc;
      }
    }
    cur = Subspace::from_matrix(next);
  }
  SocleResult out;
  out.soc = cur;
  if (cur.dim() > 0) {
    Module socmod = submodule(mod, cur);
    for (const auto& [label, simple] : simples) {
      std::size_t h = hom_space(simple, socmod).dim();
      std::size_t e = end_dim(simple);
      if (h % e != 0) throw RelationViolation("socle multiplicity is not integral");
      if (h / e > 0) out.census[label.index] = h / e;
    }
  }
  return out;
}

// --- g restriction and the 2-dimensional families ------------------------------

// Jordan type of rho(g): (xi exponent, block size) -> count.
inline std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> g_jordan_type(
    const Module& m) {
  const auto& F = m.alg->field();
  const auto& sp = m.alg->spec();
  std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> out;
  std::size_t accounted = 0;
  for (std::uint32_t l = 0; l < sp.t; ++l) {
    Matrix x = m.G - Matrix::identity(F, m.d).scaled(F->pow(F->xi(), l));
    std::vector<std::size_t> ranks{m.d};
    Matrix cur = x;
    while (true) {
      std::size_t r = rank_of(cur);
      ranks.push_back(r);
      if (r == 0 || r == ranks[ranks.size() - 2]) break;
      cur = cur * x;
    }
    // pad so that differences past stabilization vanish
    ranks.push_back(ranks.back());
    for (std::size_t k = 1; k + 1 < ranks.size(); ++k) {
      std::size_t nk = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1];
      if (nk > 0 && ranks[k - 1] != ranks[k]) {
        out[{l, k}] = nk;
        accounted += nk * k;
      }
    }
  }
  if (accounted != m.d)
    throw RelationViolation("g restriction does not decompose over the xi powers");
  return out;
}

enum class TwoParamFamily { Char2M, LiftingN };

// The upper-triangular 2x2 family: g = [[xi^i, beta], [0, xi^i]], a = 0,
// b = [[delta, gamma], [0, delta]] with delta = 0 (char 2) or
// delta = mu^{1/p}(1 - xi^i) (lambda = 0 lifting).
inline Module two_param_module(const AlgPtr& alg, TwoParamFamily fam, std::uint32_t i,
                               Scalar beta, Scalar gamma) {
  const auto& F = alg->field();
  const auto& sp = alg->spec();
  if (fam == TwoParamFamily::Char2M && !alg->char2())
    throw std::invalid_argument("M(beta, gamma) lives over the characteristic-2 algebra");
  if (fam == TwoParamFamily::LiftingN && (alg->char2() || !F->is_zero(sp.lambda)))
    throw std::invalid_argument("N(beta, gamma) lives over the lambda = 0 lifting");
  Scalar xi_i = F->pow(F->xi(), i);
  Scalar dlt = alg->char2() ? F->zero()
                            : F->mul(F->pth_root(sp.mu), F->sub(F->one(), xi_i));
  Matrix G(F, 2, 2), A(F, 2, 2), B(F, 2, 2);
  G.at(0, 0) = xi_i;
  G.at(1, 1) = xi_i;
  G.at(0, 1) = beta;
  B.at(0, 0) = dlt;
  B.at(1, 1) = dlt;
  B.at(0, 1) = gamma;
  return module_make(alg, G, A, B);
}

inline Module direct_sum(const Module& m, const Module& n) {
  const auto& F = m.alg->field();
  const std::size_t d = m.d + n.d;
  Matrix mats[3] = {Matrix(F, d, d), Matrix(F, d, d), Matrix(F, d, d)};
  const Matrix* a[3] = {&m.G, &m.A, &m.B};
  const Matrix* b[3] = {&n.G, &n.A, &n.B};
  for (int gi = 0; gi < 3; ++gi) {
    for (std::size_t r = 0; r < m.d; ++r)
      for (std::size_t c = 0; c < m.d; ++c) mats[gi].at(r, c) = a[gi]->at(r, c);
    for (std::size_t r = 0; r < n.d; ++r)
      for (std::size_t c = 0; c < n.d; ++c) mats[gi].at(m.d + r, m.d + c) = b[gi]->at(r, c);
  }
  return module_make(m.alg, mats[0], mats[1], mats[2]);
}

// Eigenvalue census of rho(g) on S_i (x) S_j: the sole eigenvalue must be
// xi^{i+j} with eigenspace of dimension exactly p.
inline Report g_eigenspace_on_tensor(const AlgPtr& alg,
                                     const std::vector<std::pair<SimpleLabel, Module>>& simples,
                                     std::uint32_t i, std::uint32_t j) {
  const auto& F = alg->field();
  const auto& sp = alg->spec();
  Report rep;
  Module t = tensor_module(simples.at(i).second, simples.at(j).second);
  std::uint32_t target = (i + j) % sp.t;
  bool sole = true, dim_ok = true;
  std::string census;
  for (std::uint32_t l = 0; l < sp.t; ++l) {
    std::size_t dl = eigenspace(t.G, F->pow(F->xi(), l)).dim();
    if (dl > 0) census += (census.empty() ? "" : " ") + std::string("xi^") + std::to_string(l) +
                          ":" + std::to_string(dl);
    if (l == target) {
      if (dl != sp.p) dim_ok = false;
    } else if (dl != 0) {
      sole = false;
    }
  }
  rep.add("tensor/g_eigenvalue_census", sole && dim_ok, census,
          "xi^" + std::to_string(target) + ":" + std::to_string(sp.p),
          "sole eigenvalue xi^{i+j} with eigenspace of dimension p");
  return rep;
}

// --- the lambda != 0 normalization ---------------------------------------------

struct NormalizeResult {
  AlgPtr target;                 // H(1, lambda^{-1} mu)
  Element im_g, im_a, im_b;      // generator images in the target
  Matrix basis_map;              // phi on the monomial basis, column per source monomial
  Report cert;
};

inline NormalizeResult normalize_parameters(const AlgPtr& alg) {
  const auto& F = alg->field();
  const auto& sp = alg->spec();
  if (alg->char2()) throw std::domain_error("normalization applies to the odd-p lifting");
  if (F->is_zero(sp.lambda)) throw ZeroLambda("normalize_parameters requires lambda != 0");
  AlgebraSpec tgt = AlgebraSpec::make(sp.p, sp.s, sp.t, F->one(),
                                      F->mul(F->inv(sp.lambda), sp.mu), F);
  NormalizeResult out;
  out.target = Algebra::build(tgt);
  Scalar root = F->pth_root(sp.lambda);
  out.im_g = out.target->gen_elem(Gen::g);
  out.im_a = out.target->gen_elem(Gen::a).scaled(root);
  out.im_b = out.target->gen_elem(Gen::b).scaled(root);
  const auto& T = out.target;

  // relation preservation in the target, with the source parameters
  bool rel = true;
  rel = rel && T->power(out.im_g, sp.n) == T->one();
  rel = rel && T->mul(out.im_a, out.im_g) == T->mul(out.im_g, out.im_a);
  rel = rel && T->mul(out.im_b, out.im_g) ==
                   T->mul(out.im_g, out.im_a) + T->mul(out.im_g, out.im_b);
  Element one_minus_gp = T->one() - T->power(out.im_g, sp.p);
  rel = rel && T->power(out.im_a, sp.p) == one_minus_gp.scaled(sp.lambda);
  rel = rel && T->power(out.im_b, sp.p) == one_minus_gp.scaled(sp.mu);
  rel = rel && T->mul(out.im_b, out.im_a) ==
                   T->mul(out.im_a, out.im_b) +
                       T->mul(out.im_a, out.im_a).scaled(alg->half());
  out.cert.add("normalize/relations", rel, rel ? "preserved" : "violated", "preserved",
               "generator images satisfy the source relations");

  // bijectivity: the induced basis map has full rank
  out.basis_map = Matrix(F, T->dim(), alg->dim());
  for (std::size_t m = 0; m < alg->dim(); ++m) {
    auto mono = alg->decode(m);
    Element img = T->power(out.im_g, mono.gpow);
    img = T->mul(img, T->power(out.im_a, mono.apow));
    img = T->mul(img, T->power(out.im_b, mono.bpow));
    for (std::size_t r = 0; r < T->dim(); ++r) out.basis_map.at(r, m) = img.c[r];
  }
  std::size_t rk = rank_of(out.basis_map);
  out.cert.add("normalize/bijective", rk == alg->dim(), "rank=" + std::to_string(rk),
               "rank=" + std::to_string(alg->dim()), "the map is a bijection");
  return out;
}

// Applies phi (x) phi to a coproduct value computed in the source algebra and
// compares with Delta of the image; used to certify the coalgebra condition.
inline bool normalize_coalgebra_check(const AlgPtr& alg, const NormalizeResult& nr) {
  const auto& F = alg->field();
  const auto& T = nr.target;
  auto phi_of_basis = [&](std::size_t m) {
    Element img = T->zero_elem();
    for (std::size_t r = 0; r < T->dim(); ++r) img.c[r] = nr.basis_map.at(r, m);
    return img;
  };
  for (Gen gen : {Gen::g, Gen::a, Gen::b}) {
    Element src = alg->gen_elem(gen);
    Element img = (gen == Gen::g) ? nr.im_g : (gen == Gen::a ? nr.im_a : nr.im_b);
    TensorElement lhs = delta(img);
    TensorElement rhs{T, {}};
    for (const auto& [k, v] : delta(src).c) {
      std::size_t x = static_cast<std::size_t>(k / alg->dim());
      std::size_t y = static_cast<std::size_t>(k % alg->dim());
      Element px = phi_of_basis(x), py = phi_of_basis(y);
      for (std::size_t r1 = 0; r1 < T->dim(); ++r1) {
        if (px.c[r1].v == 0) continue;
        for (std::size_t r2 = 0; r2 < T->dim(); ++r2) {
          if (py.c[r2].v == 0) continue;
          rhs.addc(TensorElement::key(r1, r2, T->dim()),
                   F->mul(v, F->mul(px.c[r1], py.c[r2])));
        }
      }
    }
    if (lhs != rhs) return false;
  }
  return true;
}

// Pulls a target module back along phi to a module over the source algebra.
inline Module pull_back(const AlgPtr& alg, const NormalizeResult& nr, const Module& target_mod) {
  std::vector<Matrix> rep = rep_all_monomials(target_mod);
  Matrix g = rep_element(target_mod, nr.im_g, rep);
  Matrix a = rep_element(target_mod, nr.im_a, rep);
  Matrix b = rep_element(target_mod, nr.im_b, rep);
  return module_make(alg, std::move(g), std::move(a), std::move(b));
}

}  // namespace hopfrep
