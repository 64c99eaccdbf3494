#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace atlaskit {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::cpp_rational_backend, mp::et_off>;

/// An algebra element as a flat vector of base-field scalars. Its meaning
/// (and width) is fixed by the Algebra it belongs to.
struct Element {
  std::vector<Rational> c;

  bool operator==(const Element& o) const { return c == o.c; }
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const {
    return std::lexicographical_compare(c.begin(), c.end(), o.c.begin(), o.c.end());
  }
};

inline std::ostream& operator<<(std::ostream& os, const Element& e) {
  if (e.c.size() == 1) return os << e.c[0];
  os << "[";
  for (std::size_t k = 0; k < e.c.size(); ++k) os << (k ? "," : "") << e.c[k];
  return os << "]";
}

inline std::string to_string(const Element& e) {
  std::ostringstream os;
  os << e;
  return os.str();
}

/// A point of A^n.
using Point = std::vector<Element>;

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << "(";
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p[k];
  return os << ")";
}

inline std::string to_string(const Point& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

/// Exact coordinate algebra: a prime field, the rationals, or a tower of
/// dual-number and Cayley–Dickson extensions over one of them. Values are
/// cheap to copy (shared immutable node).
///
/// Cayley–Dickson doubling uses (a,b)(c,d) = (ac − d̄b, da + bc̄) and
/// conj(a,b) = (ā, −b). Dual numbers multiply as (a+εb)(c+εd) = ac + ε(ad+bc).
class Algebra {
 public:
  enum class Kind { prime_field, rationals, dual, cayley_dickson };

  static Algebra prime_field(std::uint64_t p) {
    if (!is_prime(p)) throw InputError("Fp: " + std::to_string(p) + " is not prime");
    if (p > (std::uint64_t{1} << 31)) throw InputError("Fp: modulus too large");
    return Algebra(std::make_shared<const Node>(Node{Kind::prime_field, p, nullptr, 1, 0}));
  }

  static Algebra rationals() { return Algebra(std::make_shared<const Node>(Node{Kind::rationals, 0, nullptr, 1, 0})); }

  static Algebra dual(const Algebra& base) {
    return Algebra(std::make_shared<const Node>(Node{Kind::dual, base.node_->p, base.node_, 2 * base.width(), 0}));
  }

  static Algebra cayley_dickson(const Algebra& base, unsigned levels = 1) {
    Algebra a = base;
    for (unsigned k = 0; k < levels; ++k) {
      if (a.kind() == Kind::dual) throw InputError("cd: base must be a field or a Cayley-Dickson algebra");
      if (a.node_->p == 2) throw InputError("cd: characteristic 2 is not supported");
      a = Algebra(std::make_shared<const Node>(
          Node{Kind::cayley_dickson, a.node_->p, a.node_, 2 * a.width(), a.node_->cd_level + 1}));
    }
    return a;
  }

  /// Parses `Fp:<p>`, `Q`, `dual:<desc>`, `cd:<desc>:<levels>`.
  static Algebra parse(std::string_view desc) {
    auto fail = [&]() -> Algebra { throw InputError("bad algebra descriptor '" + std::string(desc) + "'"); };
    if (desc == "Q") return rationals();
    if (desc.rfind("Fp:", 0) == 0) {
      auto num = desc.substr(3);
      if (num.empty() || num.find_first_not_of("0123456789") != std::string_view::npos || num.size() > 10) return fail();
      return prime_field(std::stoull(std::string(num)));
    }
    if (desc.rfind("dual:", 0) == 0) return dual(parse(desc.substr(5)));
    if (desc.rfind("cd:", 0) == 0) {
      auto rest = desc.substr(3);
      auto colon = rest.rfind(':');
      if (colon == std::string_view::npos) return fail();
      auto lv = rest.substr(colon + 1);
      if (lv.empty() || lv.find_first_not_of("0123456789") != std::string_view::npos || lv.size() > 2) return fail();
      return cayley_dickson(parse(rest.substr(0, colon)), static_cast<unsigned>(std::stoul(std::string(lv))));
    }
    return fail();
  }

  std::string descriptor() const {
    switch (kind()) {
      case Kind::prime_field: return "Fp:" + std::to_string(node_->p);
      case Kind::rationals: return "Q";
      case Kind::dual: return "dual:" + base().descriptor();
      case Kind::cayley_dickson: {
        unsigned levels = 0;
        Algebra a = *this;
        while (a.kind() == Kind::cayley_dickson) {
          ++levels;
          a = a.base();
        }
        return "cd:" + a.descriptor() + ":" + std::to_string(levels);
      }
    }
    return {};
  }

  Kind kind() const { return node_->kind; }
  Algebra base() const {
    if (!node_->base) throw InputError("algebra has no base");
    return Algebra(node_->base);
  }
  /// Number of base-field scalars per element.
  std::size_t width() const { return node_->width; }
  /// Characteristic of the underlying field (0 for Q).
  std::uint64_t characteristic() const { return node_->p; }

  bool commutative() const {
    if (kind() == Kind::dual) return base().commutative();
    return node_->cd_level <= 1;
  }
  bool associative() const {
    if (kind() == Kind::dual) return base().associative();
    return node_->cd_level <= 2;
  }
  bool alternative() const {
    if (kind() == Kind::dual) return base().alternative();
    return node_->cd_level <= 3;
  }
  bool finite() const { return node_->p != 0; }

  std::optional<Integer> cardinality() const {
    if (!finite()) return std::nullopt;
    return mp::pow(Integer(node_->p), static_cast<unsigned>(width()));
  }

  Element zero() const { return Element{std::vector<Rational>(width(), Rational(0))}; }
  Element one() const {
    Element e = zero();
    e.c[0] = 1;
    return e;
  }
  Element from_integer(long long n) const {
    Element e = zero();
    e.c[0] = reduce(Rational(n));
    return e;
  }
  /// Element from explicit scalar components, reduced into the base field.
  Element make(const std::vector<Rational>& comps) const {
    if (comps.size() != width()) throw InputError("element width mismatch for " + descriptor());
    Element e;
    for (const auto& s : comps) e.c.push_back(reduce(s));
    return e;
  }

  /// True iff every component is a canonical base-field scalar.
  bool contains(const Element& e) const {
    if (e.c.size() != width()) return false;
    for (const auto& s : e.c) {
      if (!finite()) continue;
      if (denominator(s) != 1 || s < 0 || s >= Rational(node_->p)) return false;
    }
    return true;
  }

  Element add(const Element& a, const Element& b) const { return Element{add(a.c, b.c)}; }
  Element sub(const Element& a, const Element& b) const { return Element{sub(a.c, b.c)}; }
  Element neg(const Element& a) const { return Element{neg(a.c)}; }
  Element mul(const Element& a, const Element& b) const { return Element{mul(*node_, a.c, b.c)}; }
  Element conj(const Element& a) const { return Element{conj(*node_, a.c)}; }
  bool is_zero(const Element& a) const { return a == zero(); }

  bool is_invertible(const Element& a) const { return invertible(*node_, a.c); }

  Element inv(const Element& a) const {
    if (!is_invertible(a)) throw EvalError("element is not invertible", to_string(a));
    return Element{inverse(*node_, a.c)};
  }

  /// All elements in lexicographic order of their components.
  std::vector<Element> enumerate() const {
    if (!finite()) throw Unsupported("enumerate: " + descriptor() + " is infinite");
    const std::uint64_t p = node_->p;
    const std::size_t w = width();
    std::vector<Element> out;
    std::vector<std::uint64_t> digits(w, 0);
    while (true) {
      Element e;
      for (auto d : digits) e.c.emplace_back(static_cast<long long>(d));
      out.push_back(std::move(e));
      std::size_t k = w;
      while (k > 0) {
        --k;
        if (++digits[k] < p) break;
        digits[k] = 0;
        if (k == 0) return out;
      }
      if (w == 0) return out;
    }
  }

  /// Uniform element over a finite field tower; over Q each component is a
  /// rational with numerator in [-height, height] and denominator in [1, height].
  template <class Rng>
  Element random_element(Rng& rng, int height = 5) const {
    Element e;
    if (finite()) {
      std::uniform_int_distribution<std::uint64_t> d(0, node_->p - 1);
      for (std::size_t k = 0; k < width(); ++k) e.c.emplace_back(static_cast<long long>(d(rng)));
    } else {
      std::uniform_int_distribution<int> num(-height, height), den(1, height);
      for (std::size_t k = 0; k < width(); ++k) {
        const int n = num(rng);
        const int dd = den(rng);
        e.c.emplace_back(Rational(n) / Rational(dd));
      }
    }
    return e;
  }

  bool operator==(const Algebra& o) const { return descriptor() == o.descriptor(); }

 private:
  struct Node {
    Kind kind;
    std::uint64_t p;  // characteristic, 0 for Q
    std::shared_ptr<const Node> base;
    std::size_t width;
    unsigned cd_level;
  };
  using Vec = std::vector<Rational>;

  explicit Algebra(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  Rational reduce(const Rational& s) const { return reduce(node_->p, s); }

  static Rational reduce(std::uint64_t p, const Rational& s) {
    if (p == 0) return s;
    const Integer P(p);
    Integer num = numerator(s) % P;
    if (num < 0) num += P;
    Integer den = denominator(s) % P;
    if (den == 0) throw EvalError("denominator divisible by the characteristic", s.str());
    if (den != 1) num = (num * Integer(modinv(static_cast<std::uint64_t>(den), p))) % P;
    return Rational(num);
  }

  static std::uint64_t modinv(std::uint64_t a, std::uint64_t p) {
    long long t = 0, nt = 1, r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
    while (nr != 0) {
      const long long q = r / nr;
      t = t - q * nt;
      std::swap(t, nt);
      r = r - q * nr;
      std::swap(r, nr);
    }
    if (r != 1) throw EvalError("no modular inverse", std::to_string(a));
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<long long>(p) : t);
  }

  Vec add(const Vec& a, const Vec& b) const {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = reduce(a[k] + b[k]);
    return r;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = reduce(a[k] - b[k]);
    return r;
  }
  Vec neg(const Vec& a) const {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = reduce(-a[k]);
    return r;
  }

  static Vec vadd(std::uint64_t p, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = reduce(p, a[k] + b[k]);
    return r;
  }
  static Vec vsub(std::uint64_t p, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = reduce(p, a[k] - b[k]);
    return r;
  }
  static Vec vneg(std::uint64_t p, const Vec& a) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = reduce(p, -a[k]);
    return r;
  }
  static Vec scale(std::uint64_t p, const Vec& a, const Rational& s) {
    Vec r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = reduce(p, a[k] * s);
    return r;
  }
  static std::pair<Vec, Vec> halves(const Vec& a) {
    const auto h = a.size() / 2;
    return {Vec(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(h)), Vec(a.begin() + static_cast<std::ptrdiff_t>(h), a.end())};
  }
  static Vec join(Vec a, const Vec& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  static Vec mul(const Node& n, const Vec& a, const Vec& b) {
    switch (n.kind) {
      case Kind::prime_field:
      case Kind::rationals: return Vec{reduce(n.p, a[0] * b[0])};
      case Kind::dual: {
        auto [a1, a2] = halves(a);
        auto [b1, b2] = halves(b);
        const Node& base = *n.base;
        return join(mul(base, a1, b1), vadd(n.p, mul(base, a1, b2), mul(base, a2, b1)));
      }
      case Kind::cayley_dickson: {
        auto [x, y] = halves(a);
        auto [u, v] = halves(b);
        const Node& base = *n.base;
        Vec first = vsub(n.p, mul(base, x, u), mul(base, conj(base, v), y));
        Vec second = vadd(n.p, mul(base, v, x), mul(base, y, conj(base, u)));
        return join(std::move(first), second);
      }
    }
    return {};
  }

  static Vec conj(const Node& n, const Vec& a) {
    switch (n.kind) {
      case Kind::prime_field:
      case Kind::rationals: return a;
      case Kind::dual: {
        auto [a1, a2] = halves(a);
        return join(conj(*n.base, a1), conj(*n.base, a2));
      }
      case Kind::cayley_dickson: {
        auto [x, y] = halves(a);
        return join(conj(*n.base, x), vneg(n.p, y));
      }
    }
    return {};
  }

  /// x x̄ as a base-field scalar (Cayley–Dickson towers over a field only).
  static Rational norm(const Node& n, const Vec& a) {
    Rational s = 0;
    for (const auto& v : a) s += v * v;
    return reduce(n.p, s);
  }

  static bool invertible(const Node& n, const Vec& a) {
    switch (n.kind) {
      case Kind::prime_field:
      case Kind::rationals: return a[0] != 0;
      case Kind::dual: return invertible(*n.base, halves(a).first);
      case Kind::cayley_dickson: return norm(n, a) != 0;
    }
    return false;
  }

  static Vec inverse(const Node& n, const Vec& a) {
    switch (n.kind) {
      case Kind::prime_field: return Vec{Rational(static_cast<long long>(modinv(static_cast<std::uint64_t>(numerator(a[0])), n.p)))};
      case Kind::rationals: return Vec{1 / a[0]};
      case Kind::dual: {
        auto [a1, a2] = halves(a);
        const Node& base = *n.base;
        Vec ai = inverse(base, a1);
        return join(ai, vneg(n.p, mul(base, mul(base, ai, a2), ai)));
      }
      case Kind::cayley_dickson: {
        const Rational N = norm(n, a);
        Rational Ninv = n.p == 0 ? Rational(1) / N
                                 : Rational(static_cast<long long>(modinv(static_cast<std::uint64_t>(numerator(N)), n.p)));
        return scale(n.p, conj(n, a), Ninv);
      }
    }
    return {};
  }

  std::shared_ptr<const Node> node_;
};

/// Outcome of the identity battery (x⁻¹)⁻¹ = x, x(x⁻¹y) = y, (xy)⁻¹x = y⁻¹.
struct IdentityReport {
  std::uint64_t seed = 0;
  std::size_t samples_requested = 0;
  std::size_t samples_checked = 0;
  std::size_t double_inverse_failures = 0;
  std::size_t left_inverse_failures = 0;
  std::size_t product_inverse_failures = 0;
  std::size_t product_inverse_skipped = 0;  // xy not invertible
  struct Counterexample {
    std::string identity;
    Element x, y;
  };
  std::optional<Counterexample> counterexample;

  bool all_hold() const { return double_inverse_failures + left_inverse_failures + product_inverse_failures == 0; }

  std::string to_text() const {
    std::ostringstream os;
    os << "seed=" << seed << " samples=" << samples_checked << "/" << samples_requested
       << " double-inverse-failures=" << double_inverse_failures << " left-inverse-failures=" << left_inverse_failures
       << " product-inverse-failures=" << product_inverse_failures;
    if (counterexample)
      os << " counterexample: " << counterexample->identity << " x=" << counterexample->x << " y=" << counterexample->y;
    return os.str();
  }
};

/// Checks the three inverse identities on `samples` random pairs of
/// invertible elements drawn from mt19937_64(seed).
inline IdentityReport alternative_battery(const Algebra& A, std::size_t samples, std::uint64_t seed,
                                          bool stop_on_failure = false, int height = 5) {
  IdentityReport rep;
  rep.seed = seed;
  rep.samples_requested = samples;
  std::mt19937_64 rng(seed);
  auto draw = [&]() {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Element e = A.random_element(rng, height);
      if (A.is_invertible(e)) return e;
    }
    throw InputError("alternative_battery: could not draw an invertible element");
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const Element x = draw();
    const Element y = draw();
    ++rep.samples_checked;
    auto record = [&](const char* name, std::size_t& counter) {
      ++counter;
      if (!rep.counterexample) rep.counterexample = IdentityReport::Counterexample{name, x, y};
    };
    const Element xi = A.inv(x);
    if (A.inv(xi) != x) record("(x^-1)^-1 = x", rep.double_inverse_failures);
    if (A.mul(x, A.mul(xi, y)) != y) record("x(x^-1 y) = y", rep.left_inverse_failures);
    const Element xy = A.mul(x, y);
    if (!A.is_invertible(xy)) {
      ++rep.product_inverse_skipped;
    } else if (A.mul(A.inv(xy), x) != A.inv(y)) {
      record("(xy)^-1 x = y^-1", rep.product_inverse_failures);
    }
    if (stop_on_failure && rep.counterexample) break;
  }
  return rep;
}

}  // namespace atlaskit
