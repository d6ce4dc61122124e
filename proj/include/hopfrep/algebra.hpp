#pragma once

// The two algebra variants and their normal-form arithmetic.
//
// Odd characteristic ("lifting" variant): generators g, a, b with
//   g^n = 1, ag = ga, bg = ga + gb,
//   a^p = lambda(1 - g^p), b^p = mu(1 - g^p), ba = ab + (1/2)a^2,
// basis { g^i a^j b^k : 0 <= i < n, 0 <= j,k < p }, n = p^s t.
//
// Characteristic 2 ("Nichols" variant): generators g, a, b with
//   g^n = 1, ag = ga, bg = ga + gb,
//   a^2 = 0, b^4 = 0, baba = abab, b^2 a = ab^2 + aba,
// basis { g^i w : 0 <= i < n, w in the fixed 16-word list I }.
//
// Products are computed by iterated left multiplication with generators;
// the only cached operators are the per-generator sparse columns (plus the
// mirrored right-multiplication columns). The char-2 reduction tables for
// a*w and b*w are derived mechanically from the rewriting rules at build
// time and must close into the word list, otherwise construction fails.

#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfrep/field.hpp"
#include "hopfrep/linalg.hpp"
#include "hopfrep/report.hpp"

namespace hopfrep {

class RelationCheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Variant { CharPLifting, Char2Nichols };
enum class Gen : std::uint8_t { g = 0, a = 1, b = 2 };

struct AlgebraSpec {
  Variant variant = Variant::CharPLifting;
  std::uint32_t p = 0, s = 0, t = 0;
  std::uint64_t n = 0;
  Scalar lambda{}, mu{};
  FieldPtr field;

  // Infers the variant from p; char 2 forces lambda = mu = 0.
  static AlgebraSpec make(std::uint32_t p, std::uint32_t s, std::uint32_t t, Scalar lambda,
                          Scalar mu, FieldPtr F) {
    if (s < 1) throw std::invalid_argument("algebra spec: s must be >= 1");
    if (t >= 1 && t % p == 0) throw std::invalid_argument("algebra spec: p divides t");
    if (t < 1) throw std::invalid_argument("algebra spec: t must be >= 1");
    AlgebraSpec sp;
    sp.p = p;
    sp.s = s;
    sp.t = t;
    sp.field = std::move(F);
    sp.n = t;
    for (std::uint32_t i = 0; i < s; ++i) sp.n *= p;
    sp.variant = (p == 2) ? Variant::Char2Nichols : Variant::CharPLifting;
    if (sp.variant == Variant::Char2Nichols &&
        (!sp.field->is_zero(lambda) || !sp.field->is_zero(mu)))
      throw std::invalid_argument("algebra spec: characteristic 2 requires lambda = mu = 0");
    sp.lambda = lambda;
    sp.mu = mu;
    return sp;
  }
};

class Algebra;
using AlgPtr = std::shared_ptr<const Algebra>;

struct Element {
  AlgPtr alg;
  std::vector<Scalar> c;

  bool is_zero() const {
    for (const auto& x : c)
      if (x.v != 0) return false;
    return true;
  }

  std::vector<std::uint32_t> support() const {
    std::vector<std::uint32_t> s;
    for (std::uint32_t i = 0; i < c.size(); ++i)
      if (c[i].v != 0) s.push_back(i);
    return s;
  }

  friend bool operator==(const Element& x, const Element& y) { return x.c == y.c; }
  friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element x, const Element& y) { return x += y; }
  friend Element operator-(Element x, const Element& y) { return x -= y; }
  friend Element operator*(const Element& x, const Element& y);
  Element scaled(Scalar f) const;
  std::string str() const;
};

// One target of a sparse generator column.
struct GenTerm {
  std::uint32_t idx;
  Scalar coef;
};

enum class CoeffKind { AB, GB };

struct CoeffTable {
  CoeffKind kind;
  std::uint32_t m;
  std::vector<Scalar> coef;  // coef[i] multiplies b^{m-i} a^{i+1} (AB) or b^{m-i} g a^i (GB)
};

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static constexpr std::uint32_t kWordCount = 16;

  static AlgPtr build(const AlgebraSpec& spec) {
    AlgPtr alg(new Algebra(spec));
    return alg;
  }

  const AlgebraSpec& spec() const { return spec_; }
  const FieldPtr& field() const { return F_; }
  std::size_t dim() const { return dim_; }
  bool char2() const { return spec_.variant == Variant::Char2Nichols; }
  Scalar half() const { return half_; }

  // --- basis indexing -----------------------------------------------------

  std::size_t index(std::uint64_t i, std::uint32_t j, std::uint32_t k) const {
    return static_cast<std::size_t>((i * spec_.p + j) * spec_.p + k);
  }
  std::size_t index_word(std::uint64_t i, std::uint32_t w) const {
    return static_cast<std::size_t>(i * kWordCount + w);
  }

  struct Mono {
    std::uint64_t gpow = 0;
    std::uint32_t apow = 0, bpow = 0;  // odd p
    std::uint32_t word = 0;            // char 2
  };

  Mono decode(std::size_t idx) const {
    Mono m;
    if (char2()) {
      m.word = static_cast<std::uint32_t>(idx % kWordCount);
      m.gpow = idx / kWordCount;
    } else {
      m.bpow = static_cast<std::uint32_t>(idx % spec_.p);
      m.apow = static_cast<std::uint32_t>((idx / spec_.p) % spec_.p);
      m.gpow = idx / (static_cast<std::size_t>(spec_.p) * spec_.p);
    }
    return m;
  }

  std::string monomial_name(std::size_t idx) const {
    Mono m = decode(idx);
    std::string out;
    auto pw = [&](const char* sym, std::uint64_t e) {
      if (e == 0) return;
      if (!out.empty()) out += ' ';
      out += sym;
      if (e > 1) out += "^" + std::to_string(e);
    };
    pw("g", m.gpow);
    if (char2()) {
      if (m.word != 0) {
        if (!out.empty()) out += ' ';
        out += kWordNames[m.word];
      }
    } else {
      pw("a", m.apow);
      pw("b", m.bpow);
    }
    return out.empty() ? "1" : out;
  }

  // --- element constructors -----------------------------------------------

  Element zero_elem() const { return {shared_from_this(), std::vector<Scalar>(dim_)}; }

  Element monomial_elem(std::size_t idx, Scalar coef) const {
    Element e = zero_elem();
    e.c[idx] = coef;
    return e;
  }

  Element one() const { return monomial_elem(0, F_->one()); }

  Element gen_elem(Gen gen) const {
    switch (gen) {
      case Gen::g: return monomial_elem(char2() ? index_word(1, 0) : index(1, 0, 0), F_->one());
      case Gen::a: return monomial_elem(char2() ? index_word(0, 1) : index(0, 1, 0), F_->one());
      case Gen::b: return monomial_elem(char2() ? index_word(0, 2) : index(0, 0, 1), F_->one());
    }
    throw std::logic_error("bad generator");
  }

  // --- products -----------------------------------------------------------

  // dst = gen * src, both dense coefficient vectors.
  void apply_gen(Gen gen, const Scalar* src, Scalar* dst) const {
    std::memset(static_cast<void*>(dst), 0, dim_ * sizeof(Scalar));
    const auto& cols = lcols_[static_cast<int>(gen)];
    for (std::size_t m = 0; m < dim_; ++m) {
      Scalar cm = src[m];
      if (cm.v == 0) continue;
      for (const auto& t : cols[m]) dst[t.idx] = F_->add(dst[t.idx], F_->mul(cm, t.coef));
    }
  }

  void apply_gen_right(Gen gen, const Scalar* src, Scalar* dst) const {
    std::memset(static_cast<void*>(dst), 0, dim_ * sizeof(Scalar));
    const auto& cols = rcols_[static_cast<int>(gen)];
    for (std::size_t m = 0; m < dim_; ++m) {
      Scalar cm = src[m];
      if (cm.v == 0) continue;
      for (const auto& t : cols[m]) dst[t.idx] = F_->add(dst[t.idx], F_->mul(cm, t.coef));
    }
  }

  Element lmul(Gen gen, const Element& x) const {
    Element r = zero_elem();
    apply_gen(gen, x.c.data(), r.c.data());
    return r;
  }

  Element rmul(const Element& x, Gen gen) const {
    Element r = zero_elem();
    apply_gen_right(gen, x.c.data(), r.c.data());
    return r;
  }

  // Left multiplication by g^delta is an index shift.
  void g_shift(const Scalar* src, Scalar* dst, std::uint64_t delta) const {
    std::uint64_t d = delta % spec_.n;
    const std::size_t stride = char2() ? kWordCount : static_cast<std::size_t>(spec_.p) * spec_.p;
    for (std::uint64_t i = 0; i < spec_.n; ++i) {
      std::uint64_t ti = (i + d) % spec_.n;
      std::memcpy(static_cast<void*>(dst + ti * stride), src + i * stride,
                  stride * sizeof(Scalar));
    }
  }

  // (g^i a^j b^k) * y, resp. (g^i w) * y, by word application.
  std::vector<Scalar> monomial_apply(std::size_t idx, const std::vector<Scalar>& y) const {
    Mono m = decode(idx);
    std::vector<Scalar> cur = y, tmp(dim_);
    if (char2()) {
      const std::string& w = kWordStrings[m.word];
      for (std::size_t li = w.size(); li-- > 0;) {
        apply_gen(w[li] == 'a' ? Gen::a : Gen::b, cur.data(), tmp.data());
        cur.swap(tmp);
      }
    } else {
      for (std::uint32_t r = 0; r < m.bpow; ++r) {
        apply_gen(Gen::b, cur.data(), tmp.data());
        cur.swap(tmp);
      }
      for (std::uint32_t r = 0; r < m.apow; ++r) {
        apply_gen(Gen::a, cur.data(), tmp.data());
        cur.swap(tmp);
      }
    }
    if (m.gpow % spec_.n != 0) {
      g_shift(cur.data(), tmp.data(), m.gpow);
      cur.swap(tmp);
    }
    return cur;
  }

  Element monomial_times(std::size_t idx, const Element& y) const {
    return {shared_from_this(), monomial_apply(idx, y.c)};
  }

  // x * (g^i a^j b^k), resp. x * (g^i w), by right word application.
  std::vector<Scalar> monomial_apply_right(const std::vector<Scalar>& x, std::size_t idx) const {
    Mono m = decode(idx);
    std::vector<Scalar> cur = x, tmp(dim_);
    for (std::uint64_t r = 0; r < m.gpow; ++r) {
      apply_gen_right(Gen::g, cur.data(), tmp.data());
      cur.swap(tmp);
    }
    if (char2()) {
      const std::string& w = kWordStrings[m.word];
      for (char ch : w) {
        apply_gen_right(ch == 'a' ? Gen::a : Gen::b, cur.data(), tmp.data());
        cur.swap(tmp);
      }
    } else {
      for (std::uint32_t r = 0; r < m.apow; ++r) {
        apply_gen_right(Gen::a, cur.data(), tmp.data());
        cur.swap(tmp);
      }
      for (std::uint32_t r = 0; r < m.bpow; ++r) {
        apply_gen_right(Gen::b, cur.data(), tmp.data());
        cur.swap(tmp);
      }
    }
    return cur;
  }

  Element times_monomial(const Element& x, std::size_t idx) const {
    return {shared_from_this(), monomial_apply_right(x.c, idx)};
  }

  Element mul(const Element& x, const Element& y) const {
    if (x.alg.get() != this || y.alg.get() != this)
      throw std::invalid_argument("product of elements from different algebras");
    Element acc = zero_elem();
    for (std::size_t m = 0; m < dim_; ++m) {
      Scalar cm = x.c[m];
      if (cm.v == 0) continue;
      std::vector<Scalar> t = monomial_apply(m, y.c);
      for (std::size_t i = 0; i < dim_; ++i)
        if (t[i].v != 0) acc.c[i] = F_->add(acc.c[i], F_->mul(cm, t[i]));
    }
    return acc;
  }

  Element power(const Element& x, std::uint64_t e) const {
    Element acc = one();
    for (std::uint64_t i = 0; i < e; ++i) acc = mul(acc, x);
    return acc;
  }

  // Row m = (basis monomial m) * y. Built incrementally: every basis monomial
  // is gen * (a previous monomial) with coefficient 1.
  Matrix left_products_table(const Element& y) const {
    Matrix tab(F_, dim_, dim_);
    tab.set_row(0, y.c);
    for (std::size_t idx = 1; idx < dim_; ++idx) {
      auto [gen, prev] = lpred(idx);
      apply_gen_row(gen, tab.row_ptr(prev), tab.row_ptr(idx));
    }
    return tab;
  }

  // Row m = u * (basis monomial m), built from right predecessors.
  Matrix right_products_table(const Element& u) const {
    Matrix tab(F_, dim_, dim_);
    tab.set_row(0, u.c);
    for (std::size_t idx = 1; idx < dim_; ++idx) {
      auto [gen, prev] = rpred(idx);
      apply_gen_row_right(gen, tab.row_ptr(prev), tab.row_ptr(idx));
    }
    return tab;
  }

  // Dense matrix of left (or right) multiplication by a generator; column m
  // holds gen * e_m (resp. e_m * gen).
  Matrix gen_matrix(Gen gen, bool right = false) const {
    Matrix mat(F_, dim_, dim_);
    const auto& cols = (right ? rcols_ : lcols_)[static_cast<int>(gen)];
    for (std::size_t m = 0; m < dim_; ++m)
      for (const auto& t : cols[m]) mat.at(t.idx, m) = F_->add(mat.at(t.idx, m), t.coef);
    return mat;
  }

  // Dense matrix of left multiplication by an arbitrary element.
  Matrix lmul_matrix(const Element& u) const { return right_products_table(u).transpose(); }

  // --- commutation coefficient tables (odd p) ------------------------------

  // AB: a b^m = sum_i alpha_{m,i} b^{m-i} a^{i+1};
  // GB: g b^m = sum_i beta_{m,i} b^{m-i} g a^i.
  CoeffTable commutation_coeffs(CoeffKind kind, std::uint32_t m) const {
    if (char2()) throw std::domain_error("commutation tables are an odd-p construction");
    if (m < 1 || m > spec_.p - 1) throw std::out_of_range("commutation row out of range");
    std::vector<Scalar> cur;
    if (kind == CoeffKind::AB)
      cur = {F_->one(), F_->neg(half_)};
    else
      cur = {F_->one(), F_->neg(F_->one())};
    for (std::uint32_t row = 1; row < m; ++row) {
      std::vector<Scalar> next(row + 2);
      next[0] = cur[0];
      for (std::uint32_t i = 1; i <= row; ++i) {
        Scalar w = (kind == CoeffKind::AB) ? F_->mul(F_->from_int(i), half_)
                                           : F_->mul(F_->from_int(i + 1), half_);
        next[i] = F_->sub(cur[i], F_->mul(w, cur[i - 1]));
      }
      Scalar w = (kind == CoeffKind::AB) ? F_->mul(F_->from_int(row + 1), half_)
                                         : F_->mul(F_->from_int(row + 2), half_);
      next[row + 1] = F_->neg(F_->mul(w, cur[row]));
      cur = std::move(next);
    }
    return {kind, m, std::move(cur)};
  }

  // Predecessor structure: every nonzero basis index is gen * (smaller index)
  // with no reduction firing, and symmetrically (smaller index) * gen.
  std::pair<Gen, std::size_t> lpred(std::size_t idx) const {
    Mono m = decode(idx);
    if (char2()) {
      if (m.gpow > 0) return {Gen::g, idx - kWordCount};
      return {kWordStrings[m.word][0] == 'a' ? Gen::a : Gen::b, wfirst_pred_[m.word]};
    }
    if (m.gpow > 0) return {Gen::g, idx - static_cast<std::size_t>(spec_.p) * spec_.p};
    if (m.apow > 0) return {Gen::a, idx - spec_.p};
    return {Gen::b, idx - 1};
  }

  std::pair<Gen, std::size_t> rpred(std::size_t idx) const {
    Mono m = decode(idx);
    if (char2()) {
      if (m.word != 0)
        return {kWordStrings[m.word].back() == 'a' ? Gen::a : Gen::b,
                index_word(m.gpow, wlast_pred_[m.word])};
      return {Gen::g, idx - kWordCount};
    }
    if (m.bpow > 0) return {Gen::b, idx - 1};
    if (m.apow > 0) return {Gen::a, idx - spec_.p};
    return {Gen::g, idx - static_cast<std::size_t>(spec_.p) * spec_.p};
  }

  static const std::array<std::string, kWordCount> kWordStrings;
  static const std::array<std::string, kWordCount> kWordNames;

 private:
  explicit Algebra(const AlgebraSpec& spec) : spec_(spec), F_(spec.field) {
    dim_ = char2() ? static_cast<std::size_t>(spec_.n) * kWordCount
                   : static_cast<std::size_t>(spec_.n) * spec_.p * spec_.p;
    if (dim_ > (1u << 20)) throw std::invalid_argument("algebra dimension too large");
    if (!char2()) half_ = F_->inv(F_->from_int(2));
    if (char2()) build_word_tables();
    build_left_columns();
    verify_relations();
    build_right_columns();
  }

  void apply_gen_row(Gen gen, const Scalar* src, Scalar* dst) const { apply_gen(gen, src, dst); }
  void apply_gen_row_right(Gen gen, const Scalar* src, Scalar* dst) const {
    apply_gen_right(gen, src, dst);
  }

  // Char-2 rewriting: aa -> 0, bbbb -> 0, bba -> abb + aba, baba -> abab.
  // Degree-lexicographic with b > a decreases at every step.
  static std::set<std::string> reduce_word(const std::string& w) {
    std::set<std::string> done;
    std::vector<std::string> todo{w};
    std::size_t fuel = 1u << 20;
    while (!todo.empty()) {
      if (fuel-- == 0) throw RelationCheckFailed("char-2 rewriting did not terminate");
      std::string cur = std::move(todo.back());
      todo.pop_back();
      bool reduced = false;
      for (std::size_t pos = 0; pos < cur.size() && !reduced; ++pos) {
        auto is = [&](const char* pat, std::size_t len) {
          return cur.size() >= pos + len && cur.compare(pos, len, pat) == 0;
        };
        if (is("aa", 2) || is("bbbb", 4)) {
          reduced = true;  // term vanishes
        } else if (is("bba", 3)) {
          reduced = true;
          todo.push_back(cur.substr(0, pos) + "abb" + cur.substr(pos + 3));
          todo.push_back(cur.substr(0, pos) + "aba" + cur.substr(pos + 3));
        } else if (is("baba", 4)) {
          reduced = true;
          todo.push_back(cur.substr(0, pos) + "abab" + cur.substr(pos + 4));
        }
      }
      if (!reduced) {
        auto it = done.find(cur);
        if (it == done.end())
          done.insert(cur);
        else
          done.erase(it);  // coefficients live in GF(2)
      }
    }
    return done;
  }

  void build_word_tables() {
    std::map<std::string, std::uint32_t> windex;
    for (std::uint32_t w = 0; w < kWordCount; ++w) windex[kWordStrings[w]] = w;
    auto table_for = [&](char gen) {
      std::array<std::vector<std::uint32_t>, kWordCount> tab;
      for (std::uint32_t w = 0; w < kWordCount; ++w) {
        for (const auto& res : reduce_word(gen + kWordStrings[w])) {
          auto it = windex.find(res);
          if (it == windex.end())
            throw RelationCheckFailed("char-2 reduction escaped the declared basis: " + res);
          tab[w].push_back(it->second);
        }
      }
      return tab;
    };
    wa_tab_ = table_for('a');
    wb_tab_ = table_for('b');
    for (std::uint32_t w = 1; w < kWordCount; ++w) {
      wfirst_pred_[w] = windex.at(kWordStrings[w].substr(1));
      wlast_pred_[w] = windex.at(kWordStrings[w].substr(0, kWordStrings[w].size() - 1));
    }
  }

  void build_left_columns() {
    for (auto& cols : lcols_) cols.assign(dim_, {});
    const Scalar one = F_->one();
    if (char2()) {
      for (std::uint64_t i = 0; i < spec_.n; ++i) {
        for (std::uint32_t w = 0; w < kWordCount; ++w) {
          std::size_t idx = index_word(i, w);
          lcols_[0][idx].push_back({static_cast<std::uint32_t>(index_word((i + 1) % spec_.n, w)), one});
          for (auto w2 : wa_tab_[w])
            lcols_[1][idx].push_back({static_cast<std::uint32_t>(index_word(i, w2)), one});
          if (i & 1)  // bg^i = i g^i a + g^i b
            for (auto w2 : wa_tab_[w])
              lcols_[2][idx].push_back({static_cast<std::uint32_t>(index_word(i, w2)), one});
          for (auto w2 : wb_tab_[w])
            lcols_[2][idx].push_back({static_cast<std::uint32_t>(index_word(i, w2)), one});
        }
      }
      return;
    }
    const std::uint32_t p = spec_.p;
    const Scalar lam = spec_.lambda, mu = spec_.mu;
    for (std::uint64_t i = 0; i < spec_.n; ++i) {
      for (std::uint32_t j = 0; j < p; ++j) {
        for (std::uint32_t k = 0; k < p; ++k) {
          std::size_t idx = index(i, j, k);
          lcols_[0][idx].push_back(
              {static_cast<std::uint32_t>(index((i + 1) % spec_.n, j, k)), one});
          // a * g^i a^j b^k, reducing a^p = lambda(1 - g^p)
          auto push_a_step = [&](std::vector<GenTerm>& out, Scalar coef) {
            if (coef.v == 0) return;
            if (j + 1 < p) {
              out.push_back({static_cast<std::uint32_t>(index(i, j + 1, k)), coef});
            } else if (lam.v != 0) {
              out.push_back({static_cast<std::uint32_t>(index(i, 0, k)), F_->mul(coef, lam)});
              out.push_back({static_cast<std::uint32_t>(index((i + p) % spec_.n, 0, k)),
                             F_->neg(F_->mul(coef, lam))});
            }
          };
          push_a_step(lcols_[1][idx], one);
          // b * g^i a^j b^k = (i + j/2) g^i a^{j+1} b^k + g^i a^j b^{k+1}
          Scalar c1 = F_->add(F_->from_int(static_cast<long long>(i % p)),
                              F_->mul(F_->from_int(j), half_));
          push_a_step(lcols_[2][idx], c1);
          if (k + 1 < p) {
            lcols_[2][idx].push_back({static_cast<std::uint32_t>(index(i, j, k + 1)), one});
          } else if (mu.v != 0) {
            lcols_[2][idx].push_back({static_cast<std::uint32_t>(index(i, j, 0)), mu});
            lcols_[2][idx].push_back(
                {static_cast<std::uint32_t>(index((i + p) % spec_.n, j, 0)), F_->neg(mu)});
          }
        }
      }
    }
  }

  void build_right_columns() {
    // e_m * gen via left word application on the generator element.
    std::vector<Scalar> gvec(dim_), avec(dim_), bvec(dim_);
    gvec[char2() ? index_word(1, 0) : index(1, 0, 0)] = F_->one();
    avec[char2() ? index_word(0, 1) : index(0, 1, 0)] = F_->one();
    bvec[char2() ? index_word(0, 2) : index(0, 0, 1)] = F_->one();
    const std::vector<Scalar>* gens[3] = {&gvec, &avec, &bvec};
    for (int gi = 0; gi < 3; ++gi) {
      rcols_[gi].assign(dim_, {});
      for (std::size_t m = 0; m < dim_; ++m) {
        std::vector<Scalar> prod = monomial_apply(m, *gens[gi]);
        for (std::uint32_t i = 0; i < dim_; ++i)
          if (prod[i].v != 0) rcols_[gi][m].push_back({i, prod[i]});
      }
    }
  }

  void verify_relations() const {
    std::vector<Scalar> e(dim_), t1(dim_), t2(dim_), t3(dim_), t4(dim_);
    auto L = [&](Gen gen, const std::vector<Scalar>& src, std::vector<Scalar>& dst) {
      apply_gen(gen, src.data(), dst.data());
    };
    auto axpy = [&](std::vector<Scalar>& acc, Scalar f, const std::vector<Scalar>& x) {
      for (std::size_t i = 0; i < dim_; ++i)
        if (x[i].v != 0) acc[i] = F_->add(acc[i], F_->mul(f, x[i]));
    };
    auto fail = [&](const char* rel, std::size_t m) {
      throw RelationCheckFailed(std::string("relation ") + rel + " fails on basis element " +
                                monomial_name(m));
    };
    for (std::size_t m = 0; m < dim_; ++m) {
      std::fill(e.begin(), e.end(), Scalar{});
      e[m] = F_->one();
      // g^n = 1
      std::vector<Scalar> cur = e;
      for (std::uint64_t r = 0; r < spec_.n; ++r) {
        L(Gen::g, cur, t1);
        cur.swap(t1);
      }
      if (cur != e) fail("g^n = 1", m);
      // ag = ga
      L(Gen::g, e, t1);
      L(Gen::a, t1, t2);  // a(g e)
      L(Gen::a, e, t1);
      L(Gen::g, t1, t3);  // g(a e)
      if (t2 != t3) fail("ag = ga", m);
      // bg = ga + gb
      L(Gen::g, e, t1);
      L(Gen::b, t1, t2);  // b(g e)
      L(Gen::b, e, t1);
      L(Gen::g, t1, t4);  // g(b e)
      for (std::size_t i = 0; i < dim_; ++i) t3[i] = F_->add(t3[i], t4[i]);
      if (t2 != t3) fail("bg = ga + gb", m);
      if (char2()) {
        L(Gen::a, e, t1);
        L(Gen::a, t1, t2);
        for (auto& x : t2)
          if (x.v != 0) fail("a^2 = 0", m);
        cur = e;
        for (int r = 0; r < 4; ++r) {
          L(Gen::b, cur, t1);
          cur.swap(t1);
        }
        for (auto& x : cur)
          if (x.v != 0) fail("b^4 = 0", m);
        // baba = abab
        cur = e;
        const Gen w1[4] = {Gen::a, Gen::b, Gen::a, Gen::b};  // applied right-to-left: b,a,b,a
        for (int r = 3; r >= 0; --r) {
          L(w1[r], cur, t1);
          cur.swap(t1);
        }
        std::vector<Scalar> rhs = e;
        const Gen w2[4] = {Gen::b, Gen::a, Gen::b, Gen::a};
        for (int r = 3; r >= 0; --r) {
          L(w2[r], rhs, t1);
          rhs.swap(t1);
        }
        if (cur != rhs) fail("baba = abab", m);
        // b^2 a = ab^2 + aba
        L(Gen::a, e, t1);
        L(Gen::b, t1, t2);
        L(Gen::b, t2, t3);  // b b a e
        L(Gen::b, e, t1);
        L(Gen::b, t1, t2);
        L(Gen::a, t2, t4);  // a b b e
        L(Gen::a, e, t1);
        L(Gen::b, t1, t2);
        L(Gen::a, t2, t1);  // a b a e
        for (std::size_t i = 0; i < dim_; ++i) t4[i] = F_->add(t4[i], t1[i]);
        if (t3 != t4) fail("b^2 a = ab^2 + aba", m);
      } else {
        const std::uint32_t p = spec_.p;
        // a^p = lambda(1 - g^p)
        cur = e;
        for (std::uint32_t r = 0; r < p; ++r) {
          L(Gen::a, cur, t1);
          cur.swap(t1);
        }
        std::vector<Scalar> rhs(dim_);
        g_shift(e.data(), t1.data(), p);
        axpy(rhs, spec_.lambda, e);
        axpy(rhs, F_->neg(spec_.lambda), t1);
        if (cur != rhs) fail("a^p = lambda(1 - g^p)", m);
        // b^p = mu(1 - g^p)
        cur = e;
        for (std::uint32_t r = 0; r < p; ++r) {
          L(Gen::b, cur, t2);
          cur.swap(t2);
        }
        std::fill(rhs.begin(), rhs.end(), Scalar{});
        axpy(rhs, spec_.mu, e);
        axpy(rhs, F_->neg(spec_.mu), t1);
        if (cur != rhs) fail("b^p = mu(1 - g^p)", m);
        // ba = ab + (1/2) a^2
        L(Gen::a, e, t1);
        L(Gen::b, t1, t2);  // b a e
        L(Gen::b, e, t1);
        L(Gen::a, t1, t3);  // a b e
        L(Gen::a, e, t1);
        L(Gen::a, t1, t4);  // a a e
        axpy(t3, half_, t4);
        if (t2 != t3) fail("ba = ab + (1/2)a^2", m);
      }
    }
  }

  AlgebraSpec spec_;
  FieldPtr F_;
  std::size_t dim_ = 0;
  Scalar half_{};
  std::array<std::vector<std::vector<GenTerm>>, 3> lcols_, rcols_;
  std::array<std::vector<std::uint32_t>, kWordCount> wa_tab_, wb_tab_;
  std::array<std::uint32_t, kWordCount> wfirst_pred_{}, wlast_pred_{};
};

inline const std::array<std::string, Algebra::kWordCount> Algebra::kWordStrings = {
    "",     "a",    "b",    "ab",    "ba",    "bb",     "aba",   "abb",
    "bab",  "bbb",  "abab", "abbb",  "babb",  "ababb",  "babbb", "ababbb"};

inline const std::array<std::string, Algebra::kWordCount> Algebra::kWordNames = {
    "1",    "a",    "b",    "ab",     "ba",     "b^2",     "aba",    "ab^2",
    "bab",  "b^3",  "abab", "ab^3",   "bab^2",  "abab^2",  "bab^3",  "abab^3"};

// --- Element operator definitions ------------------------------------------

inline Element& Element::operator+=(const Element& o) {
  const auto& F = alg->field();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F->add(c[i], o.c[i]);
  return *this;
}

inline Element& Element::operator-=(const Element& o) {
  const auto& F = alg->field();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F->sub(c[i], o.c[i]);
  return *this;
}

inline Element operator*(const Element& x, const Element& y) { return x.alg->mul(x, y); }

inline Element Element::scaled(Scalar f) const {
  Element r = *this;
  const auto& F = alg->field();
  for (auto& x : r.c) x = F->mul(f, x);
  return r;
}

inline std::string Element::str() const {
  const auto& F = alg->field();
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].v == 0) continue;
    if (!out.empty()) out += " + ";
    std::string cs = F->str(c[i]);
    std::string mono = alg->monomial_name(i);
    if (F->is_one(c[i]) && mono != "1") {
      out += mono;
    } else {
      if (cs.find(',') != std::string::npos) cs = "(" + cs + ")";
      out += cs;
      if (mono != "1") out += " " + mono;
    }
  }
  return out.empty() ? "0" : out;
}

// --- identity and associativity oracles -------------------------------------

// Closed identities checked against the normal-form rewriting.
inline Report verify_identities(const AlgPtr& alg) {
  const auto& F = alg->field();
  const auto& sp = alg->spec();
  Report rep;
  Element g = alg->gen_elem(Gen::g), a = alg->gen_elem(Gen::a), b = alg->gen_elem(Gen::b);

  // b g^i = i g^i a + g^i b for all i < n
  {
    std::size_t bad = 0;
    for (std::uint64_t i = 0; i < sp.n; ++i) {
      std::size_t gia = alg->char2() ? alg->index_word(i, 1) : alg->index(i, 1, 0);
      std::size_t gib = alg->char2() ? alg->index_word(i, 2) : alg->index(i, 0, 1);
      std::size_t gi = alg->char2() ? alg->index_word(i, 0) : alg->index(i, 0, 0);
      Element lhs = alg->mul(b, alg->monomial_elem(gi, F->one()));
      Element rhs = alg->monomial_elem(gia, F->from_int(static_cast<long long>(i)));
      rhs += alg->monomial_elem(gib, F->one());
      if (lhs != rhs) ++bad;
    }
    rep.add("identities/b_g_power", bad == 0, "failures=" + std::to_string(bad), "failures=0",
            "b g^i = i g^i a + g^i b");
  }

  if (!alg->char2()) {
    // a b^m and g b^m expansions against the coefficient recursions
    std::size_t bad_ab = 0, bad_gb = 0;
    for (std::uint32_t m = 1; m <= sp.p - 1; ++m) {
      CoeffTable ab = alg->commutation_coeffs(CoeffKind::AB, m);
      Element lhs = alg->mul(a, alg->power(b, m));
      Element rhs = alg->zero_elem();
      for (std::uint32_t i = 0; i <= m; ++i)
        rhs += alg->mul(alg->power(b, m - i), alg->power(a, i + 1)).scaled(ab.coef[i]);
      if (lhs != rhs) ++bad_ab;
      CoeffTable gb = alg->commutation_coeffs(CoeffKind::GB, m);
      Element lhs2 = alg->mul(g, alg->power(b, m));
      Element rhs2 = alg->zero_elem();
      for (std::uint32_t i = 0; i <= m; ++i)
        rhs2 += alg->mul(alg->power(b, m - i), alg->mul(g, alg->power(a, i))).scaled(gb.coef[i]);
      if (lhs2 != rhs2) ++bad_gb;
    }
    rep.add("identities/a_b_power", bad_ab == 0, "failures=" + std::to_string(bad_ab),
            "failures=0", "a b^m = sum alpha_{m,i} b^{m-i} a^{i+1}");
    rep.add("identities/g_b_power", bad_gb == 0, "failures=" + std::to_string(bad_gb),
            "failures=0", "g b^m = sum beta_{m,i} b^{m-i} g a^i");
  }

  // g^p (resp. g^2) is central
  {
    Element z = alg->power(g, alg->char2() ? 2 : sp.p);
    std::size_t bad = 0;
    for (std::size_t m = 0; m < alg->dim(); ++m) {
      Element mz = alg->monomial_times(m, z);  // e_m * z
      Element zm = alg->times_monomial(z, m);  // z * e_m
      if (zm != mz) ++bad;
    }
    rep.add("identities/central_g_power", bad == 0, "failures=" + std::to_string(bad),
            "failures=0", alg->char2() ? "g^2 is central" : "g^p is central");
  }

  // b^m a b^{p-1} = (m!/2^m) a^{m+1} b^{p-1} in the (lambda, mu) = (1, 0) case
  if (!alg->char2() && F->is_one(sp.lambda) && F->is_zero(sp.mu)) {
    std::size_t bad = 0;
    Element bp1 = alg->power(b, sp.p - 1);
    for (std::uint32_t m = 0; m <= sp.p - 1; ++m) {
      Element lhs = alg->mul(alg->power(b, m), alg->mul(a, bp1));
      Scalar factorial = F->one();
      for (std::uint32_t i = 2; i <= m; ++i) factorial = F->mul(factorial, F->from_int(i));
      Scalar coef = F->mul(factorial, F->pow(alg->half(), m));
      Element rhs = alg->mul(alg->power(a, m + 1), bp1).scaled(coef);
      if (lhs != rhs) ++bad;
    }
    rep.add("identities/b_a_b_power", bad == 0, "failures=" + std::to_string(bad), "failures=0",
            "b^m a b^{p-1} = (m!/2^m) a^{m+1} b^{p-1}");
  }

  // b1^p = 0 with b1 = b + mu^{1/p}(g - 1), checked for p in {3,5} when mu != 0
  if (!alg->char2() && !F->is_zero(sp.mu) && (sp.p == 3 || sp.p == 5)) {
    Scalar root = F->pth_root(sp.mu);
    Element b1 = b + g.scaled(root) - alg->one().scaled(root);
    bool ok = alg->power(b1, sp.p).is_zero();
    rep.add("identities/b1_pth_power", ok, ok ? "0" : "nonzero", "0",
            "(b + mu^{1/p}(g-1))^p = 0");
  }

  return rep;
}

enum class AssocMode { full, sampled };

// Oracle that the rewriting system is consistent with the declared basis:
// (x y) z = x (y z) over basis triples, either exhaustively or sampled.
inline Report verify_associativity(const AlgPtr& alg, AssocMode mode, std::uint64_t seed = 1,
                                   std::size_t samples = 100000) {
  const auto& F = alg->field();
  const std::size_t dim = alg->dim();
  Report rep;
  std::size_t failures = 0;
  std::string first_bad;

  if (mode == AssocMode::full) {
    if (dim > 128)
      throw std::domain_error("full associativity scan is limited to dimension <= 128");
    // pair product table: tab[(x, z)] = x * z, filled along the predecessor order
    std::vector<Scalar> tab(dim * dim * dim);
    auto slot = [&](std::size_t x, std::size_t z) -> Scalar* {
      return tab.data() + (x * dim + z) * dim;
    };
    for (std::size_t z = 0; z < dim; ++z) slot(0, z)[z] = F->one();
    for (std::size_t x = 1; x < dim; ++x) {
      auto [gen, prev] = alg->lpred(x);
      for (std::size_t z = 0; z < dim; ++z) alg->apply_gen(gen, slot(prev, z), slot(x, z));
    }
    std::vector<std::vector<std::uint32_t>> supp(dim * dim);
    for (std::size_t x = 0; x < dim; ++x)
      for (std::size_t z = 0; z < dim; ++z) {
        const Scalar* row = slot(x, z);
        for (std::uint32_t i = 0; i < dim; ++i)
          if (row[i].v != 0) supp[x * dim + z].push_back(i);
      }
    std::vector<Scalar> lhs(dim), rhs(dim);
    for (std::size_t x = 0; x < dim && failures == 0; ++x) {
      for (std::size_t y = 0; y < dim && failures == 0; ++y) {
        const Scalar* xy = slot(x, y);
        const auto& sxy = supp[x * dim + y];
        for (std::size_t z = 0; z < dim; ++z) {
          std::fill(lhs.begin(), lhs.end(), Scalar{});
          for (auto m : sxy) {
            Scalar cm = xy[m];
            const Scalar* mz = slot(m, z);
            for (auto i : supp[m * dim + z]) lhs[i] = F->add(lhs[i], F->mul(cm, mz[i]));
          }
          std::fill(rhs.begin(), rhs.end(), Scalar{});
          const Scalar* yz = slot(y, z);
          for (auto m : supp[y * dim + z]) {
            Scalar cm = yz[m];
            const Scalar* xm = slot(x, m);
            for (auto i : supp[x * dim + m]) rhs[i] = F->add(rhs[i], F->mul(cm, xm[i]));
          }
          if (lhs != rhs) {
            ++failures;
            first_bad = "(" + alg->monomial_name(x) + ", " + alg->monomial_name(y) + ", " +
                        alg->monomial_name(z) + ")";
            break;
          }
        }
      }
    }
    std::uint64_t total = static_cast<std::uint64_t>(dim) * dim * dim;
    rep.add("associativity/full", failures == 0,
            "triples=" + std::to_string(total) + " failures=" + std::to_string(failures) +
                (first_bad.empty() ? "" : " first=" + first_bad),
            "failures=0", "(x y) z = x (y z) on all basis triples");
    return rep;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
  for (std::size_t it = 0; it < samples; ++it) {
    std::size_t x = pick(rng), y = pick(rng), z = pick(rng);
    Element ez = alg->monomial_elem(z, F->one());
    Element yz = alg->monomial_times(y, ez);
    Element lhs = alg->monomial_times(x, yz);
    Element ey = alg->monomial_elem(y, F->one());
    Element xy = alg->monomial_times(x, ey);
    Element rhs = alg->times_monomial(xy, z);
    if (lhs != rhs) {
      ++failures;
      if (first_bad.empty())
        first_bad = "(" + alg->monomial_name(x) + ", " + alg->monomial_name(y) + ", " +
                    alg->monomial_name(z) + ")";
    }
  }
  rep.add("associativity/sampled", failures == 0,
          "samples=" + std::to_string(samples) + " failures=" + std::to_string(failures) +
              (first_bad.empty() ? "" : " first=" + first_bad),
          "failures=0", "(x y) z = x (y z) on seeded random basis triples");
  return rep;
}

}  // namespace hopfrep
