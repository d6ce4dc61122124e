#pragma once

// Central idempotents e_i = (1/t) sum_j (xi^{-i p^s} g^{p^s})^j and the block
// decomposition H = (+)_i H e_i they cut out.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfrep/algebra.hpp"
#include "hopfrep/linalg.hpp"
#include "hopfrep/report.hpp"

namespace hopfrep {

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Block {
  std::uint32_t index = 0;
  Element idempotent;
  Subspace basis;
};

inline std::size_t expected_block_dim(const AlgebraSpec& sp) {
  std::size_t d = 1;
  std::uint32_t exps = (sp.variant == Variant::Char2Nichols) ? sp.s + 4 : sp.s + 2;
  for (std::uint32_t i = 0; i < exps; ++i) d *= sp.p;
  return d;
}

// The t central orthogonal idempotents, fully verified.
inline std::vector<Element> central_idempotents(const AlgPtr& alg) {
  const auto& F = alg->field();
  const auto& sp = alg->spec();
  std::uint64_t ps = 1;
  for (std::uint32_t i = 0; i < sp.s; ++i) ps *= sp.p;
  Scalar invt = F->inv(F->from_int(sp.t));
  std::vector<Element> es;
  for (std::uint32_t i = 0; i < sp.t; ++i) {
    Element e = alg->zero_elem();
    for (std::uint32_t j = 0; j < sp.t; ++j) {
      // xi^{-i p^s j}, exponent taken mod t
      std::uint64_t expo = (static_cast<std::uint64_t>(i) % sp.t) * (ps % sp.t) % sp.t * j % sp.t;
      Scalar coef = F->mul(invt, F->pow(F->xi(), (sp.t - expo % sp.t) % sp.t));
      std::size_t idx = alg->char2() ? alg->index_word(ps * j % sp.n, 0)
                                     : alg->index(ps * j % sp.n, 0, 0);
      e.c[idx] = F->add(e.c[idx], coef);
    }
    es.push_back(std::move(e));
  }
  // verification: idempotent, orthogonal, complete, central, eigen-relation
  Element sum = alg->zero_elem();
  for (std::uint32_t i = 0; i < sp.t; ++i) {
    for (std::uint32_t j = 0; j < sp.t; ++j) {
      Element prod = alg->mul(es[i], es[j]);
      if (i == j && prod != es[i])
        throw VerificationFailed("e_" + std::to_string(i) + " is not idempotent");
      if (i != j && !prod.is_zero())
        throw VerificationFailed("e_" + std::to_string(i) + " e_" + std::to_string(j) +
                                 " is not zero");
    }
    sum += es[i];
    for (Gen gen : {Gen::g, Gen::a, Gen::b})
      if (alg->lmul(gen, es[i]) != alg->rmul(es[i], gen))
        throw VerificationFailed("e_" + std::to_string(i) + " is not central");
    // g^{p^s} e_i = xi^{i p^s} e_i
    std::vector<Scalar> shifted(alg->dim());
    alg->g_shift(es[i].c.data(), shifted.data(), ps);
    Element lhs{alg, std::move(shifted)};
    Element rhs = es[i].scaled(F->pow(F->xi(), (static_cast<std::uint64_t>(i) % sp.t) * (ps % sp.t) % sp.t));
    if (lhs != rhs)
      throw VerificationFailed("g^{p^s} e_i != xi^{i p^s} e_i for i = " + std::to_string(i));
  }
  if (sum != alg->one()) throw VerificationFailed("idempotents do not sum to 1");
  return es;
}

inline Block block_basis(const AlgPtr& alg, const std::vector<Element>& idems, std::uint32_t i) {
  Block blk;
  blk.index = i;
  blk.idempotent = idems.at(i);
  Matrix rows = alg->left_products_table(idems.at(i));  // row m = e_m * e_i
  blk.basis = Subspace::from_matrix(rows);
  std::size_t want = expected_block_dim(alg->spec());
  if (blk.basis.dim() != want)
    throw DimensionMismatch("block " + std::to_string(i) + " has dimension " +
                            std::to_string(blk.basis.dim()) + ", expected " +
                            std::to_string(want));
  return blk;
}

inline std::vector<Block> all_blocks(const AlgPtr& alg) {
  auto idems = central_idempotents(alg);
  std::vector<Block> blocks;
  for (std::uint32_t i = 0; i < alg->spec().t; ++i) blocks.push_back(block_basis(alg, idems, i));
  return blocks;
}

// Matrix of left multiplication by gen restricted to the block basis.
inline Matrix restricted_action(const AlgPtr& alg, const Subspace& space, Gen gen) {
  const auto& F = alg->field();
  const std::size_t r = space.dim();
  Matrix out(F, r, r);
  for (std::size_t k = 0; k < r; ++k) {
    Element v{alg, space.basis_row(k)};
    Element img = alg->lmul(gen, v);
    auto co = space.coords(img.c);
    if (!co) throw VerificationFailed("block basis is not stable under the left action");
    for (std::size_t l = 0; l < r; ++l) out.at(l, k) = (*co)[l];
  }
  return out;
}

inline Report verify_block_decomposition(const AlgPtr& alg, const std::vector<Block>& blocks) {
  const auto& F = alg->field();
  const auto& sp = alg->spec();
  Report rep;
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.basis.dim();
  rep.add("blocks/dimension_sum", total == alg->dim(), std::to_string(total),
          std::to_string(alg->dim()), "dim H = sum_i dim H e_i");
  bool disjoint = true;
  for (std::size_t i = 0; i < blocks.size() && disjoint; ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      Subspace s = subspace_sum(blocks[i].basis, blocks[j].basis);
      if (s.dim() != blocks[i].basis.dim() + blocks[j].basis.dim()) {
        disjoint = false;
        break;
      }
    }
  rep.add("blocks/pairwise_disjoint", disjoint, disjoint ? "trivial intersections" : "overlap",
          "trivial intersections", "the sum of the blocks is direct");

  bool ideal = true, eigen = true;
  for (const auto& blk : blocks) {
    for (std::size_t k = 0; k < blk.basis.dim() && ideal; ++k) {
      Element v{alg, blk.basis.basis_row(k)};
      for (Gen gen : {Gen::g, Gen::a, Gen::b}) {
        if (!blk.basis.contains(alg->lmul(gen, v).c) ||
            !blk.basis.contains(alg->rmul(v, gen).c)) {
          ideal = false;
          break;
        }
      }
    }
    // unique eigenvalue xi^i: (g|_{He_i} - xi^i) is nilpotent
    Matrix rg = restricted_action(alg, blk.basis, Gen::g);
    Scalar ev = F->pow(F->xi(), blk.index);
    Matrix x = rg - Matrix::identity(F, rg.rows()).scaled(ev);
    std::size_t steps = 1;
    while ((1u << steps) < rg.rows()) ++steps;
    for (std::size_t it = 0; it <= steps; ++it) x = x * x;
    if (!x.is_zero()) eigen = false;
  }
  rep.add("blocks/two_sided_ideal", ideal, ideal ? "closed" : "not closed", "closed",
          "each H e_i is a two-sided ideal");
  rep.add("blocks/g_eigenvalue", eigen, eigen ? "nilpotent" : "not nilpotent", "nilpotent",
          "g acts on H e_i with sole eigenvalue xi^i");
  std::string dims;
  for (const auto& b : blocks) dims += (dims.empty() ? "" : ",") + std::to_string(b.basis.dim());
  rep.add("blocks/count", blocks.size() == sp.t, std::to_string(blocks.size()) + " [" + dims + "]",
          std::to_string(sp.t), "t blocks of dimension p^{s+2} (resp. 2^{s+4})");
  return rep;
}

}  // namespace hopfrep
