#pragma once

// Label algebras: the monoids, commutative monoids and rigs whose elements
// label edges ("polarities") and serve as homology coefficients.
//
// Two representations share one handle type:
//   * finite tables, verified exhaustively;
//   * exact infinite builtins (N, Z, Q under +, Q under *, the rig N),
//     carrying hand-written property flags and smoke-checked on samples.
//
// Every algebra exposes two views:
//   multiply()/one()  the monoid used for path grades (rig: multiplication);
//   add()/zero()      the commutative monoid used for sums (rig: addition,
//                     plain monoid: its single operation written additively).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mlgraph/error.hpp"

namespace mlgraph {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// An algebra element: a stable index for finite tables, an exact rational for
// builtins. Names are display-only and live in the algebra.
class Element {
 public:
  Element() : value_(std::size_t{0}) {}

  static Element index(std::size_t i) { return Element(i); }
  static Element number(Rational q) { return Element(std::move(q)); }
  static Element number(long long v) { return Element(Rational(v)); }

  bool is_index() const { return std::holds_alternative<std::size_t>(value_); }
  std::size_t idx() const { return std::get<std::size_t>(value_); }
  const Rational& num() const { return std::get<Rational>(value_); }

  friend bool operator==(const Element& a, const Element& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
  friend bool operator<(const Element& a, const Element& b) {
    if (a.is_index() != b.is_index()) return a.is_index();
    if (a.is_index()) return a.idx() < b.idx();
    return a.num() < b.num();
  }

 private:
  explicit Element(std::size_t i) : value_(i) {}
  explicit Element(Rational q) : value_(std::move(q)) {}

  std::variant<std::size_t, Rational> value_;
};

// Square operation table over element indices, row-major.
class Table {
 public:
  Table() = default;
  explicit Table(std::size_t n) : n_(n), cells_(n * n, 0) {}

  static Table from_rows(const std::vector<std::vector<std::size_t>>& rows) {
    Table t(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw Error(ErrorCode::structural, "operation table is not square (row " +
                                               std::to_string(i) + " has " +
                                               std::to_string(rows[i].size()) + " entries, expected " +
                                               std::to_string(rows.size()) + ")");
      }
      for (std::size_t j = 0; j < rows.size(); ++j) t.set(i, j, rows[i][j]);
    }
    return t;
  }

  std::size_t size() const { return n_; }
  std::size_t at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::size_t v) { cells_[i * n_ + j] = v; }

  std::vector<std::vector<std::size_t>> rows() const {
    std::vector<std::vector<std::size_t>> out(n_, std::vector<std::size_t>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = at(i, j);
    return out;
  }

  friend bool operator==(const Table& a, const Table& b) { return a.n_ == b.n_ && a.cells_ == b.cells_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> cells_;
};

enum class Builtin { none, nat_add, int_add, rat_add, nat_rig, rat_mul };

inline std::string_view builtin_name(Builtin b) {
  switch (b) {
    case Builtin::nat_add: return "NatAdd";
    case Builtin::int_add: return "IntAdd";
    case Builtin::rat_add: return "RatAdd";
    case Builtin::nat_rig: return "NatRig";
    case Builtin::rat_mul: return "RatMulMonoid";
    case Builtin::none: break;
  }
  return "";
}

struct AlgebraFlags {
  bool commutative = false;
  bool cancellative = false;

  friend bool operator==(const AlgebraFlags&, const AlgebraFlags&) = default;
};

struct Violation {
  std::string axiom;    // "associativity", "unit", "commutativity", ...
  std::string witness;  // human-readable instance, e.g. "(+,-)"
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> confirmed;  // declared properties that were verified

  bool ok() const { return violations.empty(); }

  bool has(std::string_view axiom) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.axiom == axiom; });
  }

  std::string summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) os << "; ";
      os << violations[i].axiom << " fails at " << violations[i].witness;
    }
    return os.str();
  }
};

class LabelAlgebra {
 public:
  LabelAlgebra() : LabelAlgebra(trivial_data()) {}

  // A finite monoid given by its multiplication table.
  static LabelAlgebra monoid(std::string name, std::vector<std::string> elements, Table mul, std::size_t unit,
                             AlgebraFlags declared) {
    auto d = std::make_shared<Data>();
    d->name = std::move(name);
    d->elements = std::move(elements);
    d->mul = std::move(mul);
    d->unit = unit;
    d->declared = declared;
    check_structure(*d);
    d->actual_commutative_mul = table_commutative(d->mul);
    d->actual_commutative_add = d->actual_commutative_mul;
    d->actual_cancellative = table_cancellative(d->mul);
    return LabelAlgebra(std::move(d));
  }

  // A finite rig given by addition and multiplication tables.
  static LabelAlgebra rig(std::string name, std::vector<std::string> elements, Table add, Table mul, std::size_t zero,
                          std::size_t unit, AlgebraFlags declared) {
    auto d = std::make_shared<Data>();
    d->name = std::move(name);
    d->elements = std::move(elements);
    d->mul = std::move(mul);
    d->add = std::move(add);
    d->is_rig = true;
    d->unit = unit;
    d->zero = zero;
    d->declared = declared;
    check_structure(*d);
    d->actual_commutative_mul = table_commutative(d->mul);
    d->actual_commutative_add = table_commutative(*d->add);
    d->actual_cancellative = table_cancellative(*d->add);
    return LabelAlgebra(std::move(d));
  }

  static LabelAlgebra builtin(Builtin b) {
    if (b == Builtin::none) throw Error(ErrorCode::unsupported, "no builtin algebra selected");
    auto d = std::make_shared<Data>();
    d->name = std::string(builtin_name(b));
    d->builtin = b;
    d->is_rig = (b == Builtin::nat_rig);
    d->declared = {true, b != Builtin::rat_mul};
    d->actual_commutative_mul = true;
    d->actual_commutative_add = true;
    d->actual_cancellative = d->declared.cancellative;
    return LabelAlgebra(std::move(d));
  }

  const std::string& name() const { return data_->name; }
  bool is_finite() const { return data_->builtin == Builtin::none; }
  bool is_rig() const { return data_->is_rig; }
  Builtin builtin_id() const { return data_->builtin; }
  AlgebraFlags declared_flags() const { return data_->declared; }

  // Verified properties (exhaustive on tables, known for builtins).
  bool commutative() const { return data_->actual_commutative_mul; }
  bool additive_commutative() const { return data_->actual_commutative_add; }
  bool additive_cancellative() const { return data_->actual_cancellative; }

  std::size_t size() const {
    require_finite("size");
    return data_->elements.size();
  }
  const std::vector<std::string>& element_names() const { return data_->elements; }
  const Table& mul_table() const {
    require_finite("mul_table");
    return data_->mul;
  }
  const Table& add_table() const {
    if (!data_->add) throw Error(ErrorCode::unsupported, name() + " has no addition table");
    return *data_->add;
  }
  std::size_t unit_index() const {
    require_finite("unit_index");
    return data_->unit;
  }
  std::size_t zero_index() const {
    require_finite("zero_index");
    return data_->is_rig ? data_->zero : data_->unit;
  }

  std::vector<Element> elements() const {
    require_finite("elements");
    std::vector<Element> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(Element::index(i));
    return out;
  }

  bool contains(const Element& x) const {
    if (is_finite()) return x.is_index() && x.idx() < data_->elements.size();
    if (x.is_index()) return false;
    const Rational& q = x.num();
    switch (data_->builtin) {
      case Builtin::nat_add:
      case Builtin::nat_rig: return denominator(q) == 1 && q >= 0;
      case Builtin::int_add: return denominator(q) == 1;
      default: return true;
    }
  }

  Element one() const {
    if (is_finite()) return Element::index(data_->unit);
    switch (data_->builtin) {
      case Builtin::nat_rig:
      case Builtin::rat_mul: return Element::number(1);
      default: return Element::number(0);
    }
  }

  Element multiply(const Element& a, const Element& b) const {
    check_member(a);
    check_member(b);
    if (is_finite()) return Element::index(data_->mul.at(a.idx(), b.idx()));
    switch (data_->builtin) {
      case Builtin::nat_rig:
      case Builtin::rat_mul: return Element::number(a.num() * b.num());
      default: return Element::number(a.num() + b.num());
    }
  }

  // Additive identity of the commutative-monoid view.
  Element zero() const {
    require_additive();
    if (is_finite()) return Element::index(zero_index());
    return data_->builtin == Builtin::rat_mul ? Element::number(1) : Element::number(0);
  }

  Element add(const Element& a, const Element& b) const {
    require_additive();
    check_member(a);
    check_member(b);
    if (is_finite()) {
      const Table& t = data_->add ? *data_->add : data_->mul;
      return Element::index(t.at(a.idx(), b.idx()));
    }
    if (data_->builtin == Builtin::rat_mul) return Element::number(a.num() * b.num());
    return Element::number(a.num() + b.num());
  }

  // n * x in the additive view, by doubling.
  Element scale(const Integer& n, const Element& x) const {
    if (n < 0) throw Error(ErrorCode::unsupported, "negative multiplicity");
    Element result = zero();
    Element base = x;
    Integer k = n;
    while (k > 0) {
      if ((k & 1) != 0) result = add(result, base);
      k >>= 1;
      if (k > 0) base = add(base, base);
    }
    return result;
  }

  std::string format(const Element& x) const {
    check_member(x);
    if (is_finite()) return data_->elements[x.idx()];
    return x.num().str();
  }

  std::optional<Element> find(std::string_view text) const {
    if (is_finite()) {
      for (std::size_t i = 0; i < data_->elements.size(); ++i)
        if (data_->elements[i] == text) return Element::index(i);
      return std::nullopt;
    }
    auto q = parse_rational(text);
    if (!q) return std::nullopt;
    Element e = Element::number(*q);
    if (!contains(e)) return std::nullopt;
    return e;
  }

  Element parse(std::string_view text) const {
    if (auto e = find(text)) return *e;
    throw Error(ErrorCode::unknown_element, "'" + std::string(text) + "' is not an element of " + name());
  }

  void check_member(const Element& x) const {
    if (!contains(x)) throw Error(ErrorCode::unknown_element, "value is not an element of " + name());
  }

  friend bool operator==(const LabelAlgebra& a, const LabelAlgebra& b) {
    if (a.data_ == b.data_) return true;
    const Data& x = *a.data_;
    const Data& y = *b.data_;
    return x.name == y.name && x.builtin == y.builtin && x.elements == y.elements && x.mul == y.mul &&
           x.is_rig == y.is_rig && x.unit == y.unit && x.zero == y.zero &&
           (x.add.has_value() == y.add.has_value()) && (!x.add || *x.add == *y.add);
  }
  friend bool operator!=(const LabelAlgebra& a, const LabelAlgebra& b) { return !(a == b); }

  // Plain decimal only. The cpp_int string constructor would read a leading
  // zero as an octal prefix and accept hex.
  static Integer parse_decimal(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      negative = s[0] == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("empty integer");
    Integer v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("not a decimal digit");
      v = v * 10 + (ch - '0');
    }
    return negative ? Integer(-v) : v;
  }

  static std::optional<Rational> parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) return std::nullopt;
    try {
      auto slash = s.find('/');
      if (slash != std::string::npos) {
        Integer num = parse_decimal(s.substr(0, slash));
        Integer den = parse_decimal(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rational(num, den);
      }
      auto dot = s.find('.');
      if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
        Integer num = parse_decimal(digits);
        Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(s.size() - dot - 1));
        return Rational(num, den);
      }
      return Rational(parse_decimal(s));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

 private:
  struct Data {
    std::string name;
    Builtin builtin = Builtin::none;
    std::vector<std::string> elements;
    Table mul;
    std::optional<Table> add;
    bool is_rig = false;
    std::size_t unit = 0;
    std::size_t zero = 0;
    AlgebraFlags declared;
    bool actual_commutative_mul = false;
    bool actual_commutative_add = false;
    bool actual_cancellative = false;
  };

  explicit LabelAlgebra(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  static std::shared_ptr<const Data> trivial_data() {
    static const auto d = [] {
      auto p = std::make_shared<Data>();
      p->name = "TrivialOne";
      p->elements = {"1"};
      p->mul = Table(1);
      p->declared = {true, true};
      p->actual_commutative_mul = p->actual_commutative_add = p->actual_cancellative = true;
      return p;
    }();
    return d;
  }

  void require_finite(const char* what) const {
    if (!is_finite()) throw Error(ErrorCode::unsupported, std::string(what) + " on builtin algebra " + name());
  }

  void require_additive() const {
    if (!data_->actual_commutative_add)
      throw Error(ErrorCode::not_commutative, name() + " has no commutative additive structure");
  }

  static void check_table(const Table& t, std::size_t n, const char* which) {
    if (t.size() != n)
      throw Error(ErrorCode::structural, std::string(which) + " table has dimension " + std::to_string(t.size()) +
                                             " but there are " + std::to_string(n) + " elements");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (t.at(i, j) >= n)
          throw Error(ErrorCode::structural, std::string(which) + " table entry (" + std::to_string(i) + "," +
                                                 std::to_string(j) + ") is out of range");
  }

  static void check_structure(const Data& d) {
    const std::size_t n = d.elements.size();
    if (n == 0) throw Error(ErrorCode::structural, "algebra has no elements");
    check_table(d.mul, n, "multiplication");
    if (d.add) check_table(*d.add, n, "addition");
    if (d.unit >= n) throw Error(ErrorCode::structural, "unit index out of range");
    if (d.is_rig && d.zero >= n) throw Error(ErrorCode::structural, "zero index out of range");
  }

  static bool table_commutative(const Table& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j)
        if (t.at(i, j) != t.at(j, i)) return false;
    return true;
  }

  static bool table_cancellative(const Table& t) {
    for (std::size_t e = 0; e < t.size(); ++e) {
      std::vector<bool> seen(t.size(), false);
      for (std::size_t c = 0; c < t.size(); ++c) {
        std::size_t r = t.at(c, e);
        if (seen[r]) return false;
        seen[r] = true;
      }
    }
    return true;
  }

  std::shared_ptr<const Data> data_;
};

// ---------------------------------------------------------------------------
// Shipped algebras

namespace algebras {

inline LabelAlgebra trivial_one() { return LabelAlgebra(); }

inline LabelAlgebra sign() {
  return LabelAlgebra::monoid("SIGN", {"+", "-"}, Table::from_rows({{0, 1}, {1, 0}}), 0, {true, true});
}

inline LabelAlgebra sign0() {
  // {+, 0, -}: multiplicative monoid of Z/3
  return LabelAlgebra::monoid("SIGN0", {"+", "0", "-"}, Table::from_rows({{0, 1, 2}, {1, 1, 1}, {2, 1, 0}}), 0,
                              {true, false});
}

inline LabelAlgebra sign_i() {
  return LabelAlgebra::monoid("SIGNI", {"I", "+", "-"}, Table::from_rows({{0, 1, 2}, {1, 1, 2}, {2, 2, 1}}), 0,
                              {true, false});
}

inline LabelAlgebra sign0_i() {
  return LabelAlgebra::monoid("SIGN0I", {"I", "+", "0", "-"},
                              Table::from_rows({{0, 1, 2, 3}, {1, 1, 2, 3}, {2, 2, 2, 2}, {3, 3, 2, 1}}), 0,
                              {true, false});
}

// ({0,1}, or, and)
inline LabelAlgebra boolean_rig() {
  return LabelAlgebra::rig("BOOL", {"0", "1"}, Table::from_rows({{0, 1}, {1, 1}}), Table::from_rows({{0, 0}, {0, 1}}),
                           0, 1, {true, false});
}

// ({0,1}, and, 1)
inline LabelAlgebra boolean_mul() {
  return LabelAlgebra::monoid("BOOLMUL", {"0", "1"}, Table::from_rows({{0, 0}, {0, 1}}), 1, {true, false});
}

// ({0,1}, or, 0) as a plain commutative monoid.
inline LabelAlgebra boolean_or() {
  return LabelAlgebra::monoid("BOOLOR", {"0", "1"}, Table::from_rows({{0, 1}, {1, 1}}), 0, {true, false});
}

// The four-element rig {1, 0, -1, i} of signs with an indeterminate element.
inline LabelAlgebra s_rig() {
  // index: 0 -> "1", 1 -> "0", 2 -> "-1", 3 -> "i"
  Table add = Table::from_rows({{0, 0, 3, 3}, {0, 1, 2, 3}, {3, 2, 2, 3}, {3, 3, 3, 3}});
  Table mul = Table::from_rows({{0, 1, 2, 3}, {1, 1, 1, 1}, {2, 1, 0, 3}, {3, 1, 3, 3}});
  return LabelAlgebra::rig("S", {"1", "0", "-1", "i"}, add, mul, 1, 0, {true, false});
}

// Z/n written additively, elements "0".."n-1".
inline LabelAlgebra cyclic(std::size_t n, std::string name = {}) {
  if (n == 0) throw Error(ErrorCode::structural, "Z/0 is not finite");
  std::vector<std::string> names;
  Table t(n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) t.set(i, j, (i + j) % n);
  }
  if (name.empty()) name = "Z" + std::to_string(n);
  return LabelAlgebra::monoid(std::move(name), std::move(names), std::move(t), 0, {true, true});
}

inline LabelAlgebra nat_add() { return LabelAlgebra::builtin(Builtin::nat_add); }
inline LabelAlgebra int_add() { return LabelAlgebra::builtin(Builtin::int_add); }
inline LabelAlgebra rat_add() { return LabelAlgebra::builtin(Builtin::rat_add); }
inline LabelAlgebra nat_rig() { return LabelAlgebra::builtin(Builtin::nat_rig); }
inline LabelAlgebra rat_mul() { return LabelAlgebra::builtin(Builtin::rat_mul); }

inline std::vector<std::string> names() {
  return {"TrivialOne", "SIGN",   "SIGN0",  "SIGNI",  "SIGN0I", "BOOL",   "BOOLMUL", "BOOLOR", "S",
          "Z2",         "Z3",     "NatAdd", "IntAdd", "RatAdd", "NatRig", "RatMulMonoid"};
}

inline std::optional<LabelAlgebra> by_name(std::string_view name) {
  if (name == "TrivialOne") return trivial_one();
  if (name == "SIGN") return sign();
  if (name == "SIGN0") return sign0();
  if (name == "SIGNI") return sign_i();
  if (name == "SIGN0I") return sign0_i();
  if (name == "BOOL") return boolean_rig();
  if (name == "BOOLMUL") return boolean_mul();
  if (name == "BOOLOR") return boolean_or();
  if (name == "S") return s_rig();
  if (name == "Z2") return cyclic(2);
  if (name == "Z3") return cyclic(3);
  if (name == "NatAdd") return nat_add();
  if (name == "IntAdd") return int_add();
  if (name == "RatAdd") return rat_add();
  if (name == "NatRig") return nat_rig();
  if (name == "RatMulMonoid") return rat_mul();
  return std::nullopt;
}

}  // namespace algebras

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline std::string triple(const LabelAlgebra& a, std::size_t x, std::size_t y, std::size_t z) {
  const auto& n = a.element_names();
  return "(" + n[x] + "," + n[y] + "," + n[z] + ")";
}

inline std::string pair(const LabelAlgebra& a, std::size_t x, std::size_t y) {
  const auto& n = a.element_names();
  return "(" + n[x] + "," + n[y] + ")";
}

inline void check_monoid_table(const LabelAlgebra& a, const Table& t, std::size_t unit, const std::string& tag,
                               ValidationReport& report) {
  const std::size_t n = t.size();
  bool assoc = true;
  for (std::size_t x = 0; x < n && assoc; ++x)
    for (std::size_t y = 0; y < n && assoc; ++y)
      for (std::size_t z = 0; z < n && assoc; ++z)
        if (t.at(t.at(x, y), z) != t.at(x, t.at(y, z))) {
          report.violations.push_back({tag + "associativity", triple(a, x, y, z)});
          assoc = false;
        }
  for (std::size_t x = 0; x < n; ++x)
    if (t.at(unit, x) != x || t.at(x, unit) != x) {
      report.violations.push_back({tag + "unit", "(" + a.element_names()[unit] + "," + a.element_names()[x] + ")"});
      break;
    }
}

inline std::optional<std::pair<std::size_t, std::size_t>> asymmetric_pair(const Table& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t.at(i, j) != t.at(j, i)) return std::pair{i, j};
  return std::nullopt;
}

// Fixed-seed exact samples for smoke-checking infinite builtins.
inline std::vector<Element> builtin_samples(const LabelAlgebra& a, std::size_t count = 24) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long long> num(-40, 40);
  std::uniform_int_distribution<long long> den(1, 9);
  std::vector<Element> out{a.one(), Element::number(0), Element::number(1)};
  while (out.size() < count) {
    Rational q;
    switch (a.builtin_id()) {
      case Builtin::nat_add:
      case Builtin::nat_rig: q = Rational(std::abs(num(rng))); break;
      case Builtin::int_add: q = Rational(num(rng)); break;
      default: q = Rational(num(rng), den(rng)); break;
    }
    out.push_back(Element::number(q));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [&](const Element& e) { return !a.contains(e); }), out.end());
  return out;
}

}  // namespace detail

// Checks monoid (and rig) axioms plus every declared flag. Finite tables are
// checked exhaustively; builtins on a fixed sample.
inline ValidationReport validate_algebra(const LabelAlgebra& a) {
  ValidationReport report;
  if (!a.is_finite()) {
    auto xs = detail::builtin_samples(a);
    auto show = [&](const Element& e) { return a.format(e); };
    for (const auto& x : xs) {
      if (a.multiply(a.one(), x) != x || a.multiply(x, a.one()) != x)
        report.violations.push_back({"unit", show(x)});
      for (const auto& y : xs) {
        if (a.multiply(x, y) != a.multiply(y, x)) report.violations.push_back({"commutativity", show(x) + "," + show(y)});
        for (const auto& z : xs) {
          if (a.multiply(a.multiply(x, y), z) != a.multiply(x, a.multiply(y, z)))
            report.violations.push_back({"associativity", show(x) + "," + show(y) + "," + show(z)});
          if (a.is_rig()) {
            if (a.multiply(x, a.add(y, z)) != a.add(a.multiply(x, y), a.multiply(x, z)))
              report.violations.push_back({"left distributivity", show(x) + "," + show(y) + "," + show(z)});
            if (a.multiply(a.add(x, y), z) != a.add(a.multiply(x, z), a.multiply(y, z)))
              report.violations.push_back({"right distributivity", show(x) + "," + show(y) + "," + show(z)});
          }
        }
      }
    }
    if (report.ok()) {
      report.confirmed.emplace_back("commutative");
      if (a.declared_flags().cancellative) report.confirmed.emplace_back("cancellative");
    }
    return report;
  }

  const Table& mul = a.mul_table();
  detail::check_monoid_table(a, mul, a.unit_index(), "", report);
  const AlgebraFlags flags = a.declared_flags();
  const Table& additive = a.is_rig() ? a.add_table() : mul;

  if (flags.commutative) {
    if (auto p = detail::asymmetric_pair(mul))
      report.violations.push_back({"commutativity", detail::pair(a, p->first, p->second)});
    else
      report.confirmed.emplace_back("commutative");
  }

  if (a.is_rig()) {
    const Table& add = a.add_table();
    const std::size_t zero = a.zero_index();
    detail::check_monoid_table(a, add, zero, "additive ", report);
    if (auto p = detail::asymmetric_pair(add))
      report.violations.push_back({"additive commutativity", detail::pair(a, p->first, p->second)});
    const std::size_t n = add.size();
    bool left = true, right = true;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
          if (left && mul.at(r, add.at(s, t)) != add.at(mul.at(r, s), mul.at(r, t))) {
            report.violations.push_back({"left distributivity", detail::triple(a, r, s, t)});
            left = false;
          }
          if (right && mul.at(add.at(r, s), t) != add.at(mul.at(r, t), mul.at(s, t))) {
            report.violations.push_back({"right distributivity", detail::triple(a, r, s, t)});
            right = false;
          }
        }
    for (std::size_t r = 0; r < n; ++r)
      if (mul.at(zero, r) != zero || mul.at(r, zero) != zero) {
        report.violations.push_back({"absorption", detail::pair(a, zero, r)});
        break;
      }
  }

  if (flags.cancellative) {
    bool canc = true;
    const std::size_t n = additive.size();
    for (std::size_t c = 0; c < n && canc; ++c)
      for (std::size_t d = 0; d < n && canc; ++d)
        for (std::size_t e = 0; e < n && canc; ++e)
          if (c != d && additive.at(c, e) == additive.at(d, e)) {
            report.violations.push_back({"cancellativity", detail::triple(a, c, d, e)});
            canc = false;
          }
    if (canc) report.confirmed.emplace_back("cancellative");
  }
  return report;
}

struct CancellationWitness {
  Element c, d, e;  // c != d but c + e == d + e
};

struct CancellativeResult {
  bool cancellative = true;
  std::optional<CancellationWitness> witness;
};

// Cancellativity of the additive (commutative monoid) view.
inline CancellativeResult is_cancellative(const LabelAlgebra& a) {
  if (!a.additive_commutative())
    throw Error(ErrorCode::not_commutative, a.name() + " is not a commutative monoid");
  if (!a.is_finite()) {
    if (a.builtin_id() == Builtin::rat_mul)
      return {false, CancellationWitness{Element::number(1), Element::number(2), Element::number(0)}};
    return {true, std::nullopt};
  }
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t e = 0; e < n; ++e) {
        if (c == d) continue;
        auto ce = a.add(Element::index(c), Element::index(e));
        if (ce == a.add(Element::index(d), Element::index(e)))
          return {false, CancellationWitness{Element::index(c), Element::index(d), Element::index(e)}};
      }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Constructions

namespace detail {

inline std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "'";
  return base;
}

inline void require_finite_monoid(const LabelAlgebra& m, const char* op) {
  if (!m.is_finite()) throw Error(ErrorCode::unsupported, std::string(op) + " needs a finite table, got " + m.name());
}

}  // namespace detail

// M u {0} with a new absorbing element appended after the old ones.
inline LabelAlgebra adjoin_zero(const LabelAlgebra& m) {
  detail::require_finite_monoid(m, "adjoin_zero");
  const std::size_t n = m.size();
  auto names = m.element_names();
  names.push_back(detail::fresh_name(names, "0"));
  Table t(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) t.set(i, j, (i == n || j == n) ? n : m.mul_table().at(i, j));
  AlgebraFlags f{m.declared_flags().commutative, false};
  return LabelAlgebra::monoid(m.name() + "+0", std::move(names), std::move(t), m.unit_index(), f);
}

// M u {I} with a new identity element appended after the old ones.
inline LabelAlgebra adjoin_identity(const LabelAlgebra& m) {
  detail::require_finite_monoid(m, "adjoin_identity");
  const std::size_t n = m.size();
  auto names = m.element_names();
  names.push_back(detail::fresh_name(names, "I"));
  Table t(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) {
      if (i == n) t.set(i, j, j);
      else if (j == n) t.set(i, j, i);
      else t.set(i, j, m.mul_table().at(i, j));
    }
  AlgebraFlags f{m.declared_flags().commutative, false};
  return LabelAlgebra::monoid(m.name() + "+I", std::move(names), std::move(t), n, f);
}

// Componentwise product; element (a,b) has index a * |m2| + b. Two rigs give
// the product rig, otherwise the product of the multiplicative monoids.
inline LabelAlgebra product_algebra(const LabelAlgebra& m1, const LabelAlgebra& m2) {
  detail::require_finite_monoid(m1, "product_algebra");
  detail::require_finite_monoid(m2, "product_algebra");
  const std::size_t n1 = m1.size(), n2 = m2.size(), n = n1 * n2;
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b) names.push_back("(" + m1.element_names()[a] + "," + m2.element_names()[b] + ")");
  auto build = [&](const Table& t1, const Table& t2) {
    Table t(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        t.set(x, y, t1.at(x / n2, y / n2) * n2 + t2.at(x % n2, y % n2));
    return t;
  };
  AlgebraFlags f{m1.declared_flags().commutative && m2.declared_flags().commutative,
                 m1.declared_flags().cancellative && m2.declared_flags().cancellative};
  const std::string name = m1.name() + "x" + m2.name();
  const std::size_t unit = m1.unit_index() * n2 + m2.unit_index();
  if (m1.is_rig() && m2.is_rig()) {
    return LabelAlgebra::rig(name, std::move(names), build(m1.add_table(), m2.add_table()),
                             build(m1.mul_table(), m2.mul_table()), m1.zero_index() * n2 + m2.zero_index(), unit, f);
  }
  return LabelAlgebra::monoid(name, std::move(names), build(m1.mul_table(), m2.mul_table()), unit, f);
}

inline constexpr std::size_t kPowerRigMaxBase = 5;

// The rig of subsets of a finite monoid: union as addition and
// X * Y = { xy }. Subset with bitmask k has index k, so {} is index 0.
inline LabelAlgebra power_rig(const LabelAlgebra& m) {
  detail::require_finite_monoid(m, "power_rig");
  const std::size_t base = m.size();
  if (base > kPowerRigMaxBase)
    throw Error(ErrorCode::guard_exceeded, "power_rig needs at most " + std::to_string(kPowerRigMaxBase) +
                                               " elements, got " + std::to_string(base));
  const std::size_t n = std::size_t{1} << base;
  std::vector<std::string> names;
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < base; ++i)
      if (mask & (std::size_t{1} << i)) {
        if (!first) s += ",";
        s += m.element_names()[i];
        first = false;
      }
    names.push_back(s + "}");
  }
  Table add(n), mul(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      add.set(x, y, x | y);
      std::size_t prod = 0;
      for (std::size_t i = 0; i < base; ++i)
        for (std::size_t j = 0; j < base; ++j)
          if ((x >> i & 1) && (y >> j & 1)) prod |= std::size_t{1} << m.mul_table().at(i, j);
      mul.set(x, y, prod);
    }
  AlgebraFlags f{m.declared_flags().commutative, false};
  return LabelAlgebra::rig("P(" + m.name() + ")", std::move(names), std::move(add), std::move(mul), 0,
                           std::size_t{1} << m.unit_index(), f);
}

// True iff `map` (index in a -> index in b) is a bijection preserving the
// unit and every table (multiplication, and for rigs addition and zero).
inline bool is_isomorphism(const LabelAlgebra& a, const LabelAlgebra& b, const std::vector<std::size_t>& map) {
  if (!a.is_finite() || !b.is_finite() || a.size() != b.size() || map.size() != a.size()) return false;
  if (a.is_rig() != b.is_rig()) return false;
  std::vector<bool> hit(b.size(), false);
  for (auto v : map) {
    if (v >= b.size() || hit[v]) return false;
    hit[v] = true;
  }
  if (map[a.unit_index()] != b.unit_index()) return false;
  const std::size_t n = a.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (map[a.mul_table().at(x, y)] != b.mul_table().at(map[x], map[y])) return false;
  if (a.is_rig()) {
    if (map[a.zero_index()] != b.zero_index()) return false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (map[a.add_table().at(x, y)] != b.add_table().at(map[x], map[y])) return false;
  }
  return true;
}

// Brute-force search over permutations; meant for small tables (<= 8).
inline std::optional<std::vector<std::size_t>> find_isomorphism(const LabelAlgebra& a, const LabelAlgebra& b) {
  if (!a.is_finite() || !b.is_finite() || a.size() != b.size()) return std::nullopt;
  if (a.size() > 8) throw Error(ErrorCode::guard_exceeded, "find_isomorphism is limited to 8 elements");
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (is_isomorphism(a, b, perm)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Homomorphisms

enum class HomKind {
  multiplicative,  // preserves multiply()/one()
  additive,        // preserves add()/zero()
  rig,             // both
};

class MonoidHom {
 public:
  using Fn = std::function<Element(const Element&)>;

  MonoidHom(std::string name, LabelAlgebra source, LabelAlgebra target, Fn fn, HomKind kind = HomKind::multiplicative)
      : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)), fn_(std::move(fn)), kind_(kind) {}

  // Finite source given by an index table.
  static MonoidHom from_table(std::string name, LabelAlgebra source, LabelAlgebra target, std::vector<std::size_t> table,
                              HomKind kind = HomKind::multiplicative) {
    if (!source.is_finite() || table.size() != source.size())
      throw Error(ErrorCode::structural, "hom table must have one entry per source element");
    for (auto v : table) target.check_member(Element::index(v));
    return MonoidHom(std::move(name), std::move(source), std::move(target),
                     [table = std::move(table)](const Element& x) { return Element::index(table[x.idx()]); }, kind);
  }

  static MonoidHom identity(const LabelAlgebra& a) {
    return MonoidHom("id", a, a, [](const Element& x) { return x; }, a.is_rig() ? HomKind::rig : HomKind::multiplicative);
  }

  // The unique map to the one-element monoid.
  static MonoidHom collapse(const LabelAlgebra& source) {
    return MonoidHom("collapse", source, algebras::trivial_one(), [](const Element&) { return Element::index(0); });
  }

  // RatMulMonoid -> SIGN0: positive to +, negative to -, 0 to 0.
  static MonoidHom sign() {
    return MonoidHom("sign", algebras::rat_mul(), algebras::sign0(), [](const Element& x) {
      const Rational& q = x.num();
      return Element::index(q > 0 ? 0 : (q == 0 ? 1 : 2));
    });
  }

  // SIGN0 -> RatMulMonoid: + to 1, 0 to 0, - to -1. A right inverse of sign().
  static MonoidHom sign_embedding() {
    return MonoidHom("sign-embedding", algebras::sign0(), algebras::rat_mul(), [](const Element& x) {
      static const long long values[] = {1, 0, -1};
      return Element::number(values[x.idx()]);
    });
  }

  const std::string& name() const { return name_; }
  const LabelAlgebra& source() const { return source_; }
  const LabelAlgebra& target() const { return target_; }
  HomKind kind() const { return kind_; }

  Element operator()(const Element& x) const {
    source_.check_member(x);
    return fn_(x);
  }

  // (g . f)(x) = g(f(x))
  friend MonoidHom compose(const MonoidHom& g, const MonoidHom& f) {
    if (f.target_ != g.source_)
      throw Error(ErrorCode::algebra_mismatch, "cannot compose " + g.name_ + " after " + f.name_);
    HomKind kind = f.kind_ == g.kind_ ? f.kind_ : HomKind::multiplicative;
    return MonoidHom(g.name_ + "." + f.name_, f.source_, g.target_,
                     [fo = f.fn_, go = g.fn_](const Element& x) { return go(fo(x)); }, kind);
  }

 private:
  std::string name_;
  LabelAlgebra source_;
  LabelAlgebra target_;
  Fn fn_;
  HomKind kind_;
};

inline Element apply_hom(const MonoidHom& h, const Element& x) { return h(x); }

// Homomorphism laws, exhaustively on finite sources, on samples otherwise.
inline ValidationReport validate_hom(const MonoidHom& h) {
  ValidationReport report;
  const LabelAlgebra& s = h.source();
  const LabelAlgebra& t = h.target();
  std::vector<Element> xs = s.is_finite() ? s.elements() : detail::builtin_samples(s);
  auto show = [&](const Element& x) { return s.format(x); };
  for (const auto& x : xs)
    if (!t.contains(h(x))) report.violations.push_back({"codomain", show(x)});
  if (!report.ok()) return report;

  const bool mul = h.kind() != HomKind::additive;
  const bool add = h.kind() != HomKind::multiplicative;
  if (mul && h(s.one()) != t.one()) report.violations.push_back({"unit", show(s.one())});
  if (add && h(s.zero()) != t.zero()) report.violations.push_back({"zero", show(s.zero())});
  for (const auto& x : xs)
    for (const auto& y : xs) {
      if (mul && h(s.multiply(x, y)) != t.multiply(h(x), h(y))) {
        report.violations.push_back({"multiplicativity", "(" + show(x) + "," + show(y) + ")"});
        return report;
      }
      if (add && h(s.add(x, y)) != t.add(h(x), h(y))) {
        report.violations.push_back({"additivity", "(" + show(x) + "," + show(y) + ")"});
        return report;
      }
    }
  return report;
}

}  // namespace mlgraph
