#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace atlaskit {

/// Interned identifier: an index into the owning structure's element list.
/// The numeric order is the stable total order used for all enumeration.
using Id = std::uint32_t;

/// Binary relation R ⊆ A × B stored as a dense bitset, one row per a ∈ A.
/// contains(a, b) reads "(a, b) ∈ R". Relational composition follows the
/// usual convention R ∘ S = {(c, a) : ∃ b, (c, b) ∈ R, (b, a) ∈ S}.
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), bits_(rows * words_per_row_, 0) {}

  static Relation identity(std::size_t n) {
    Relation r(n, n);
    for (Id i = 0; i < n; ++i) r.insert(i, i);
    return r;
  }

  static Relation full(std::size_t rows, std::size_t cols) {
    Relation r(rows, cols);
    for (Id a = 0; a < rows; ++a)
      for (Id b = 0; b < cols; ++b) r.insert(a, b);
    return r;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool contains(Id a, Id b) const {
    check(a, b);
    return (bits_[a * words_per_row_ + b / 64] >> (b % 64)) & 1U;
  }

  void insert(Id a, Id b) {
    check(a, b);
    bits_[a * words_per_row_ + b / 64] |= (std::uint64_t{1} << (b % 64));
  }

  void erase(Id a, Id b) {
    check(a, b);
    bits_[a * words_per_row_ + b / 64] &= ~(std::uint64_t{1} << (b % 64));
  }

  void set(Id a, Id b, bool value) { value ? insert(a, b) : erase(a, b); }

  void flip(Id a, Id b) { set(a, b, !contains(a, b)); }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool empty() const { return size() == 0; }

  /// Elements b with (a, b) ∈ R, ascending.
  std::vector<Id> row(Id a) const {
    std::vector<Id> out;
    for (Id b = 0; b < cols_; ++b)
      if (contains(a, b)) out.push_back(b);
    return out;
  }

  /// Elements a with (a, b) ∈ R, ascending.
  std::vector<Id> column(Id b) const {
    std::vector<Id> out;
    for (Id a = 0; a < rows_; ++a)
      if (contains(a, b)) out.push_back(a);
    return out;
  }

  std::vector<std::pair<Id, Id>> pairs() const {
    std::vector<std::pair<Id, Id>> out;
    for (Id a = 0; a < rows_; ++a)
      for (Id b = 0; b < cols_; ++b)
        if (contains(a, b)) out.emplace_back(a, b);
    return out;
  }

  Relation transpose() const {
    Relation t(cols_, rows_);
    for (Id a = 0; a < rows_; ++a)
      for (Id b = 0; b < cols_; ++b)
        if (contains(a, b)) t.insert(b, a);
    return t;
  }

  /// this ∘ other.
  Relation compose(const Relation& other) const {
    if (cols_ != other.rows_) throw InputError("relation composition: inner dimensions differ");
    Relation out(rows_, other.cols_);
    for (Id c = 0; c < rows_; ++c) {
      std::uint64_t* dst = &out.bits_[c * out.words_per_row_];
      for (Id b = 0; b < cols_; ++b) {
        if (!contains(c, b)) continue;
        const std::uint64_t* src = &other.bits_[b * other.words_per_row_];
        for (std::size_t w = 0; w < out.words_per_row_; ++w) dst[w] |= src[w];
      }
    }
    return out;
  }

  bool subset_of(const Relation& other) const {
    same_shape(other);
    for (std::size_t w = 0; w < bits_.size(); ++w)
      if (bits_[w] & ~other.bits_[w]) return false;
    return true;
  }

  Relation unite(const Relation& other) const {
    same_shape(other);
    Relation out = *this;
    for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] |= other.bits_[w];
    return out;
  }

  Relation intersect(const Relation& other) const {
    same_shape(other);
    Relation out = *this;
    for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] &= other.bits_[w];
    return out;
  }

  /// Reflexive-transitive closure of an endorelation (Warshall).
  Relation reflexive_transitive_closure() const {
    require_square();
    Relation out = *this;
    for (Id i = 0; i < rows_; ++i) out.insert(i, i);
    for (Id k = 0; k < rows_; ++k) {
      const std::size_t krow = k * words_per_row_;
      for (Id i = 0; i < rows_; ++i) {
        if (!out.contains(i, k)) continue;
        std::uint64_t* dst = &out.bits_[i * words_per_row_];
        for (std::size_t w = 0; w < words_per_row_; ++w) dst[w] |= out.bits_[krow + w];
      }
    }
    return out;
  }

  /// Smallest equivalence relation containing this endorelation.
  Relation equivalence_closure() const { return unite(transpose()).reflexive_transitive_closure(); }

  /// Covering pairs (a, b), a ≠ b, of a partial order with no c strictly between.
  Relation hasse_covers() const {
    require_square();
    Relation out(rows_, cols_);
    for (Id a = 0; a < rows_; ++a)
      for (Id b = 0; b < cols_; ++b) {
        if (a == b || !contains(a, b)) continue;
        bool cover = true;
        for (Id c = 0; c < rows_ && cover; ++c)
          if (c != a && c != b && contains(a, c) && contains(c, b)) cover = false;
        if (cover) out.insert(a, b);
      }
    return out;
  }

  /// Sub-relation on the kept ids, renumbered in ascending order.
  Relation restrict_to(const std::vector<Id>& keep) const {
    require_square();
    Relation out(keep.size(), keep.size());
    for (Id a = 0; a < keep.size(); ++a)
      for (Id b = 0; b < keep.size(); ++b)
        if (contains(keep[a], keep[b])) out.insert(a, b);
    return out;
  }

  bool operator==(const Relation& other) const = default;

 private:
  void check(Id a, Id b) const {
    if (a >= rows_ || b >= cols_) throw InputError("relation index out of range");
  }
  void same_shape(const Relation& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("relation shapes differ");
  }
  void require_square() const {
    if (rows_ != cols_) throw InputError("operation needs an endorelation");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Name table for interned ids.
class Interner {
 public:
  Interner() = default;
  explicit Interner(std::vector<std::string> names) : names_(std::move(names)) {}

  Id intern(const std::string& name) {
    if (auto id = find(name)) return *id;
    names_.push_back(name);
    return static_cast<Id>(names_.size() - 1);
  }

  std::optional<Id> find(const std::string& name) const {
    for (Id i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  Id at(const std::string& name) const {
    if (auto id = find(name)) return *id;
    throw InputError("unknown name '" + name + "'");
  }

  const std::string& name(Id id) const {
    if (id >= names_.size()) throw InputError("id out of range");
    return names_[id];
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const Interner&) const = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace atlaskit
