#pragma once

// Exact arithmetic in GF(p^m).
//
// A FieldCtx owns the prime p, the extension degree m, the modulus polynomial
// and (for small fields) dense lookup tables. Elements are packed indices
// v = c0 + c1*p + ... + c_{m-1}*p^{m-1} into [0, p^m), so Scalar is a plain
// 4-byte value and all arithmetic is dispatched through the context.
//
// FieldCtx::make(p, t) builds the smallest field containing a primitive t-th
// root of unity: m = ord_t(p), the modulus is the lexicographically first
// monic irreducible polynomial of degree m, and xi is the first element of
// multiplicative order exactly t in index order. Everything is deterministic,
// so downstream reports are bit-reproducible.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfrep {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scalar {
  std::uint32_t v = 0;
  friend bool operator==(Scalar x, Scalar y) { return x.v == y.v; }
  friend bool operator!=(Scalar x, Scalar y) { return x.v != y.v; }
  friend bool operator<(Scalar x, Scalar y) { return x.v < y.v; }
};

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint32_t> prime_divisors_u32(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over Z_p, coefficients ascending, used only while
// constructing a field (modulus search, irreducibility).
using Poly = std::vector<std::uint32_t>;

inline void ptrim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly psub(const Poly& f, const Poly& g, std::uint32_t p) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint32_t a = i < f.size() ? f[i] : 0;
    std::uint32_t b = i < g.size() ? g[i] : 0;
    r[i] = (a + p - b) % p;
  }
  ptrim(r);
  return r;
}

inline Poly pmul(const Poly& f, const Poly& g, std::uint32_t p) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + static_cast<std::uint64_t>(f[i]) * g[j]) % p);
  }
  ptrim(r);
  return r;
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is prime and a != 0.
  std::uint64_t base = a % p, acc = 1, e = p - 2;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

inline Poly pmod(Poly f, const Poly& g, std::uint32_t p) {
  // g monic.
  ptrim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() >= g.size()) {
    std::uint32_t c = f.back();
    std::size_t shift = f.size() - 1 - dg;
    if (c != 0)
      for (std::size_t i = 0; i < g.size(); ++i)
        f[shift + i] = static_cast<std::uint32_t>(
            (f[shift + i] + static_cast<std::uint64_t>(p - c) * g[i] % p) % p);
    ptrim(f);
  }
  return f;
}

inline Poly pgcd(Poly f, Poly g, std::uint32_t p) {
  ptrim(f);
  ptrim(g);
  while (!g.empty()) {
    // make g monic before using it as divisor
    std::uint32_t lc = g.back();
    if (lc != 1) {
      std::uint32_t ilc = inv_mod_p(lc, p);
      for (auto& c : g) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * ilc % p);
    }
    Poly r = pmod(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  return f;
}

inline Poly ppowmod(Poly base, std::uint64_t e, const Poly& mod, std::uint32_t p) {
  Poly acc = {1};
  base = pmod(std::move(base), mod, p);
  while (e) {
    if (e & 1) acc = pmod(pmul(acc, base, p), mod, p);
    base = pmod(pmul(base, base, p), mod, p);
    e >>= 1;
  }
  return acc;
}

inline bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  // linear factors: evaluate at every residue
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0, xp = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      acc = (acc + f[i] * xp) % p;
      xp = xp * x % p;
    }
    if (acc == 0) return false;
  }
  if (m <= 3) return true;  // reducible deg 2/3 would have a root
  // factor of degree k exists iff gcd(x^{p^k} - x, f) != 1
  Poly h = {0, 1};
  for (std::size_t k = 1; k <= m / 2; ++k) {
    h = ppowmod(std::move(h), p, f, p);
    Poly g = pgcd(f, psub(h, Poly{0, 1}, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace detail

class FieldCtx {
 public:
  static constexpr std::uint32_t kMaxExtDegree = 8;
  static constexpr std::uint64_t kTableLimit = 1024;  // build q x q tables up to here

  // field_make(p, t): GF(p^m) with m = ord_t(p) and a primitive t-th root xi.
  static FieldPtr make(std::uint32_t p, std::uint32_t t) {
    if (!detail::is_prime_u32(p)) throw FieldError("field_make: p is not prime");
    if (t == 0) throw FieldError("field_make: t must be positive");
    if (t > 1 && t % p == 0) throw FieldError("field_make: p divides t");
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::weak_ptr<const FieldCtx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, t}];
    if (auto held = slot.lock()) return held;
    FieldPtr made(new FieldCtx(p, t));
    slot = made;
    return made;
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t ext_degree() const { return m_; }
  std::uint32_t t() const { return t_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Scalar xi() const { return xi_; }

  Scalar zero() const { return {0}; }
  Scalar one() const { return {1}; }
  bool is_zero(Scalar x) const { return x.v == 0; }
  bool is_one(Scalar x) const { return x.v == 1; }

  Scalar element(std::uint64_t index) const {
    if (index >= q_) throw FieldError("element index out of range");
    return {static_cast<std::uint32_t>(index)};
  }

  Scalar from_int(long long k) const {
    long long r = k % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
  }

  Scalar add(Scalar x, Scalar y) const {
    if (tables_) return {add_[static_cast<std::size_t>(x.v) * q_ + y.v]};
    return add_slow(x, y);
  }

  Scalar sub(Scalar x, Scalar y) const { return add(x, neg(y)); }

  Scalar neg(Scalar x) const {
    if (tables_) return {neg_[x.v]};
    Digits d = unpack(x);
    for (std::uint32_t i = 0; i < m_; ++i) d[i] = (p_ - d[i]) % p_;
    return pack(d);
  }

  Scalar mul(Scalar x, Scalar y) const {
    if (tables_) return {mul_[static_cast<std::size_t>(x.v) * q_ + y.v]};
    return mul_slow(x, y);
  }

  Scalar inv(Scalar x) const {
    if (x.v == 0) throw FieldError("inverse of zero");
    if (tables_) return {inv_[x.v]};
    return pow(x, q_ - 2);
  }

  Scalar div(Scalar x, Scalar y) const { return mul(x, inv(y)); }

  Scalar pow(Scalar x, std::uint64_t e) const {
    Scalar acc = one(), base = x;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  Scalar frobenius(Scalar x) const { return pow(x, p_); }

  // The unique y with y^p = x.
  Scalar pth_root(Scalar x) const {
    if (tables_) return {proot_[x.v]};
    Scalar y = x;
    for (std::uint32_t i = 0; i + 1 < m_; ++i) y = frobenius(y);
    return y;
  }

  std::uint64_t order(Scalar x) const {
    if (x.v == 0) throw FieldError("order of zero");
    Scalar acc = x;
    std::uint64_t k = 1;
    while (!is_one(acc)) {
      acc = mul(acc, x);
      ++k;
      if (k > q_) throw FieldError("order loop overran field size");
    }
    return k;
  }

  // Scalar literals: a bare integer for prime fields, "c0,c1,...,c{m-1}"
  // in the power basis of the modulus otherwise. A bare integer is also
  // accepted for extension fields and lands in the prime subfield.
  std::string str(Scalar x) const {
    Digits d = unpack(x);
    if (m_ == 1) return std::to_string(d[0]);
    std::string out;
    for (std::uint32_t i = 0; i < m_; ++i) {
      if (i) out += ',';
      out += std::to_string(d[i]);
    }
    return out;
  }

  Scalar parse(const std::string& text) const {
    std::vector<std::uint32_t> cs;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t pos = 0;
      long long val = 0;
      try {
        val = std::stoll(tok, &pos);
      } catch (const std::exception&) {
        throw FieldError("bad scalar literal: " + text);
      }
      if (pos != tok.size()) throw FieldError("bad scalar literal: " + text);
      long long r = val % static_cast<long long>(p_);
      if (r < 0) r += p_;
      cs.push_back(static_cast<std::uint32_t>(r));
    }
    if (cs.empty()) throw FieldError("empty scalar literal");
    if (cs.size() == 1) return {cs[0]};
    if (cs.size() != m_)
      throw FieldError("scalar literal has " + std::to_string(cs.size()) +
                       " coefficients, field has degree " + std::to_string(m_));
    Digits d{};
    for (std::uint32_t i = 0; i < m_; ++i) d[i] = cs[i];
    return pack(d);
  }

 private:
  using Digits = std::array<std::uint32_t, kMaxExtDegree>;

  FieldCtx(std::uint32_t p, std::uint32_t t) : p_(p), t_(t) {
    m_ = (t == 1) ? 1 : mult_order(p, t);
    if (m_ > kMaxExtDegree)
      throw FieldError("extension degree " + std::to_string(m_) + " exceeds supported limit");
    q_ = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
      q_ *= p;
      if (q_ > (1ull << 31)) throw FieldError("field too large");
    }
    if (t > 1 && (q_ - 1) % t != 0) throw FieldError("internal: t does not divide q-1");
    modulus_ = find_modulus();
    if (q_ <= kTableLimit) build_tables();
    xi_ = find_xi();
  }

  static std::uint32_t mult_order(std::uint32_t p, std::uint32_t t) {
    std::uint64_t acc = p % t;
    std::uint32_t k = 1;
    while (acc != 1 % t) {
      acc = acc * p % t;
      ++k;
      if (k > t) throw FieldError("internal: order search overran t");
    }
    return k;
  }

  std::vector<std::uint32_t> find_modulus() const {
    if (m_ == 1) return {0, 1};  // x; arithmetic is plain mod p
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m_; ++i) count *= p_;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<std::uint32_t> f(m_ + 1, 0);
      std::uint64_t rem = c;
      for (std::uint32_t i = 0; i < m_; ++i) {
        f[i] = static_cast<std::uint32_t>(rem % p_);
        rem /= p_;
      }
      f[m_] = 1;
      if (detail::poly_irreducible(f, p_)) return f;
    }
    throw FieldError("internal: no irreducible modulus found");
  }

  Digits unpack(Scalar x) const {
    Digits d{};
    std::uint64_t v = x.v;
    for (std::uint32_t i = 0; i < m_; ++i) {
      d[i] = static_cast<std::uint32_t>(v % p_);
      v /= p_;
    }
    return d;
  }

  Scalar pack(const Digits& d) const {
    std::uint64_t v = 0;
    for (std::uint32_t i = m_; i-- > 0;) v = v * p_ + d[i];
    return {static_cast<std::uint32_t>(v)};
  }

  Scalar add_slow(Scalar x, Scalar y) const {
    Digits a = unpack(x), b = unpack(y);
    for (std::uint32_t i = 0; i < m_; ++i) a[i] = (a[i] + b[i]) % p_;
    return pack(a);
  }

  Scalar mul_slow(Scalar x, Scalar y) const {
    Digits a = unpack(x), b = unpack(y);
    std::array<std::uint64_t, 2 * kMaxExtDegree> buf{};
    for (std::uint32_t i = 0; i < m_; ++i) {
      if (!a[i]) continue;
      for (std::uint32_t j = 0; j < m_; ++j)
        buf[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    }
    for (std::uint32_t d = 2 * m_ - 2; d >= m_ && d < 2 * kMaxExtDegree; --d) {
      std::uint64_t c = buf[d] % p_;
      if (c) {
        std::uint64_t mc = p_ - c;
        for (std::uint32_t i = 0; i <= m_; ++i)
          buf[d - m_ + i] += mc * modulus_[i];
      }
      buf[d] = 0;
      if (d == m_) break;
    }
    Digits r{};
    for (std::uint32_t i = 0; i < m_; ++i) r[i] = static_cast<std::uint32_t>(buf[i] % p_);
    return pack(r);
  }

  void build_tables() {
    const std::size_t q = static_cast<std::size_t>(q_);
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.resize(q);
    proot_.resize(q);
    for (std::size_t x = 0; x < q; ++x) {
      Scalar sx{static_cast<std::uint32_t>(x)};
      for (std::size_t y = 0; y < q; ++y) {
        Scalar sy{static_cast<std::uint32_t>(y)};
        add_[x * q + y] = add_slow(sx, sy).v;
        mul_[x * q + y] = mul_slow(sx, sy).v;
      }
    }
    for (std::size_t x = 0; x < q; ++x) {
      Scalar sx{static_cast<std::uint32_t>(x)};
      Digits d = unpack(sx);
      for (std::uint32_t i = 0; i < m_; ++i) d[i] = (p_ - d[i]) % p_;
      neg_[x] = pack(d).v;
    }
    tables_ = true;  // pow/inv below may now use add_/mul_
    for (std::size_t x = 1; x < q; ++x) inv_[x] = pow({static_cast<std::uint32_t>(x)}, q_ - 2).v;
    inv_[0] = 0;
    for (std::size_t x = 0; x < q; ++x) {
      Scalar y{static_cast<std::uint32_t>(x)};
      for (std::uint32_t i = 0; i + 1 < m_; ++i) y = frobenius(y);
      proot_[x] = y.v;
    }
  }

  Scalar find_xi() const {
    if (t_ == 1) return one();
    auto divisors = detail::prime_divisors_u32(t_);
    for (std::uint64_t idx = 1; idx < q_; ++idx) {
      Scalar e{static_cast<std::uint32_t>(idx)};
      if (!is_one(pow(e, t_))) continue;
      bool primitive = true;
      for (auto r : divisors)
        if (is_one(pow(e, t_ / r))) {
          primitive = false;
          break;
        }
      if (primitive) return e;
    }
    throw FieldError("internal: no primitive t-th root found");
  }

  std::uint32_t p_ = 0, m_ = 0, t_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Scalar xi_{};
  bool tables_ = false;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_, proot_;
};

}  // namespace hopfrep
