#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toytheory {

using Scalar = std::int64_t;

class Modulus {
 public:
  explicit Modulus(Scalar d);

  Scalar value() const noexcept { return d_; }
  Scalar reduce(Scalar x) const noexcept {
    Scalar r = x % d_;
    return r < 0 ? r + d_ : r;
  }
  Scalar add(Scalar a, Scalar b) const noexcept { return reduce(a + b); }
  Scalar sub(Scalar a, Scalar b) const noexcept { return reduce(a - b); }
  Scalar mul(Scalar a, Scalar b) const noexcept;
  Scalar neg(Scalar a) const noexcept { return reduce(-a); }
  bool is_prime() const noexcept;

  friend bool operator==(const Modulus&, const Modulus&) = default;
  friend auto operator<=>(const Modulus&, const Modulus&) = default;

 private:
  Scalar d_;
};

// Entries are kept in [0, d); the modulus lives with the caller, not the vector.
class ModVector {
 public:
  ModVector() = default;
  explicit ModVector(std::size_t length) : entries_(length, 0) {}
  ModVector(std::vector<Scalar> entries, Modulus d);
  ModVector(std::initializer_list<Scalar> entries, Modulus d)
      : ModVector(std::vector<Scalar>(entries), d) {}

  std::size_t size() const noexcept { return entries_.size(); }
  Scalar operator[](std::size_t i) const { return entries_[i]; }
  Scalar& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Scalar>& entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  bool is_zero() const noexcept;

  friend bool operator==(const ModVector&, const ModVector&) = default;
  friend auto operator<=>(const ModVector&, const ModVector&) = default;

 private:
  std::vector<Scalar> entries_;
};

std::string to_string(const ModVector& v);

ModVector add(const ModVector& a, const ModVector& b, Modulus d);
ModVector sub(const ModVector& a, const ModVector& b, Modulus d);
ModVector scale(Scalar c, const ModVector& a, Modulus d);
ModVector negate(const ModVector& a, Modulus d);
Scalar dot(const ModVector& a, const ModVector& b, Modulus d);
ModVector unit_vector(std::size_t length, std::size_t index);

class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t rows, std::size_t cols);
  ModMatrix(std::vector<ModVector> rows, std::size_t cols);

  static ModMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const ModVector& row(std::size_t i) const { return rows_[i]; }
  Scalar at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Scalar& at(std::size_t i, std::size_t j) { return rows_[i][j]; }
  const std::vector<ModVector>& row_vectors() const noexcept { return rows_; }

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

 private:
  std::vector<ModVector> rows_;
  std::size_t cols_ = 0;
};

ModMatrix transpose(const ModMatrix& m);
ModMatrix multiply(const ModMatrix& a, const ModMatrix& b, Modulus d);
ModVector apply(const ModMatrix& m, const ModVector& x, Modulus d);

// A submodule of Z_d^ambient held by its Howell basis, so equality of
// submodules is equality of bases.
class Submodule {
 public:
  static Submodule zero(Modulus d, std::size_t ambient);
  static Submodule full(Modulus d, std::size_t ambient);

  Modulus modulus() const noexcept { return d_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  const std::vector<ModVector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  bool is_zero() const noexcept { return basis_.empty(); }

  // Lexicographically smallest element of x + span.
  ModVector reduce(const ModVector& x) const;
  bool contains(const ModVector& x) const;
  std::uint64_t cardinality() const;
  std::vector<ModVector> elements(std::uint64_t limit = 1u << 22) const;

  friend bool operator==(const Submodule&, const Submodule&) = default;
  friend auto operator<=>(const Submodule&, const Submodule&) = default;

 private:
  friend Submodule howell_form(std::span<const ModVector> rows, Modulus d,
                               std::size_t ambient);
  Submodule(Modulus d, std::size_t ambient) : d_(d), ambient_(ambient) {}

  Modulus d_;
  std::size_t ambient_;
  std::vector<ModVector> basis_;
  std::vector<std::size_t> pivots_;
};

Submodule howell_form(std::span<const ModVector> rows, Modulus d, std::size_t ambient);
Submodule howell_form(const ModMatrix& rows, Modulus d);

// {x : M x = 0}
Submodule kernel(const ModMatrix& m, Modulus d);
Submodule orthogonal_complement(const Submodule& v);
Submodule sum(const Submodule& v, const Submodule& w);
Submodule intersect(const Submodule& v, const Submodule& w);
bool is_subset(const Submodule& v, const Submodule& w);

// Coefficients c with sum_i c_i rows[i] = target, if any.
std::optional<std::vector<Scalar>> solve(std::span<const ModVector> rows,
                                         const ModVector& target, Modulus d);

std::uint64_t cardinality(const Submodule& v);

class AffineCoset {
 public:
  AffineCoset(Submodule direction, const ModVector& offset);

  const Submodule& direction() const noexcept { return direction_; }
  // Always the canonical (lexicographically smallest) member.
  const ModVector& offset() const noexcept { return offset_; }
  bool contains(const ModVector& x) const;
  std::uint64_t cardinality() const { return direction_.cardinality(); }
  std::vector<ModVector> elements(std::uint64_t limit = 1u << 22) const;

  friend bool operator==(const AffineCoset&, const AffineCoset&) = default;

 private:
  Submodule direction_;
  ModVector offset_;
};

std::optional<AffineCoset> coset_intersect(const AffineCoset& a, const AffineCoset& b);

struct Bezout {
  Scalar g;
  Scalar s;
  Scalar t;
};
// s*a + t*b = g = gcd(a, b) for a, b >= 0.
Bezout extended_gcd(Scalar a, Scalar b);

// All vectors of Z_d^length in lexicographic order (last coordinate fastest).
std::vector<ModVector> all_vectors(Modulus d, std::size_t length,
                                   std::uint64_t limit = 1u << 22);
std::uint64_t checked_pow(Scalar base, std::size_t exponent);

}  // namespace toytheory
