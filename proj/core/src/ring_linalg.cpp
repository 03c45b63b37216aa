#include "toytheory/ring_linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "toytheory/errors.hpp"

namespace toytheory {

Modulus::Modulus(Scalar d) : d_(d) {
  if (d < 2 || d > (Scalar{1} << 31)) {
    fail(ErrorCode::InvalidArgument, "modulus must lie in [2, 2^31], got " + std::to_string(d));
  }
}

__extension__ using Wide = __int128;

Scalar Modulus::mul(Scalar a, Scalar b) const noexcept {
  return static_cast<Scalar>((static_cast<Wide>(a) * b) % d_ + d_) % d_;
}

bool Modulus::is_prime() const noexcept {
  for (Scalar p = 2; p * p <= d_; ++p) {
    if (d_ % p == 0) return false;
  }
  return true;
}

ModVector::ModVector(std::vector<Scalar> entries, Modulus d) : entries_(std::move(entries)) {
  for (auto& e : entries_) e = d.reduce(e);
}

bool ModVector::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Scalar e) { return e == 0; });
}

std::string to_string(const ModVector& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  out << ')';
  return out.str();
}

namespace {

void require_same_length(const ModVector& a, const ModVector& b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::DimensionMismatch, "vector lengths differ: " + std::to_string(a.size()) +
                                           " vs " + std::to_string(b.size()));
  }
}

// x <- x - c * y, restricted to positions >= from.
void axpy_sub(ModVector& x, Scalar c, const ModVector& y, Modulus d, std::size_t from = 0) {
  if (c == 0) return;
  for (std::size_t i = from; i < x.size(); ++i) {
    if (y[i] != 0) x[i] = d.sub(x[i], d.mul(c, y[i]));
  }
}

}  // namespace

ModVector add(const ModVector& a, const ModVector& b, Modulus d) {
  require_same_length(a, b);
  ModVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = d.add(a[i], b[i]);
  return out;
}

ModVector sub(const ModVector& a, const ModVector& b, Modulus d) {
  require_same_length(a, b);
  ModVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = d.sub(a[i], b[i]);
  return out;
}

ModVector scale(Scalar c, const ModVector& a, Modulus d) {
  ModVector out(a.size());
  Scalar cr = d.reduce(c);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = d.mul(cr, a[i]);
  return out;
}

ModVector negate(const ModVector& a, Modulus d) { return scale(-1, a, d); }

Scalar dot(const ModVector& a, const ModVector& b, Modulus d) {
  require_same_length(a, b);
  Scalar acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = d.add(acc, d.mul(a[i], b[i]));
  return acc;
}

ModVector unit_vector(std::size_t length, std::size_t index) {
  ModVector e(length);
  e[index] = 1;
  return e;
}

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows, ModVector(cols)), cols_(cols) {}

ModMatrix::ModMatrix(std::vector<ModVector> rows, std::size_t cols)
    : rows_(std::move(rows)), cols_(cols) {
  for (const auto& r : rows_) {
    if (r.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged matrix rows");
  }
}

ModMatrix ModMatrix::identity(std::size_t n) {
  ModMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ModMatrix transpose(const ModMatrix& m) {
  ModMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

ModMatrix multiply(const ModMatrix& a, const ModMatrix& b, Modulus d) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  ModMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Scalar aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.at(i, j) = d.add(out.at(i, j), d.mul(aik, b.at(k, j)));
    }
  return out;
}

ModVector apply(const ModMatrix& m, const ModVector& x, Modulus d) {
  if (m.cols() != x.size()) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  ModVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), x, d);
  return out;
}

Bezout extended_gcd(Scalar a, Scalar b) {
  Scalar old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Scalar q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  return {old_r, old_s, old_t};
}

namespace {

// A unit u of Z_d with u * a = gcd(a, d) mod d.
Scalar normalizing_unit(Scalar a, Modulus d) {
  const Scalar dv = d.value();
  const Scalar g = std::gcd(a, dv);
  const Scalar quotient = dv / g;
  Scalar u0 = 1;
  if (quotient > 1) {
    auto bz = extended_gcd((a / g) % quotient, quotient);
    u0 = ((bz.s % quotient) + quotient) % quotient;
  }
  for (Scalar u = u0; u < dv + quotient; u += quotient) {
    if (std::gcd(u, dv) == 1) return d.reduce(u);
  }
  return 1;
}

}  // namespace

Submodule howell_form(std::span<const ModVector> rows, Modulus d, std::size_t ambient) {
  Submodule out(d, ambient);
  std::vector<ModVector> work;
  work.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != ambient) {
      fail(ErrorCode::DimensionMismatch, "row length " + std::to_string(r.size()) +
                                             " differs from ambient " + std::to_string(ambient));
    }
    ModVector reduced(r.entries(), d);
    if (!reduced.is_zero()) work.push_back(std::move(reduced));
  }

  for (std::size_t col = 0; col < ambient && !work.empty(); ++col) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i][col] == 0) continue;
      if (!pivot) {
        pivot = i;
        continue;
      }
      // Unimodular 2x2 step clearing column col of work[i].
      ModVector& p = work[*pivot];
      ModVector& r = work[i];
      const Scalar a = p[col], b = r[col];
      const auto bz = extended_gcd(a, b);
      const Scalar ag = a / bz.g, bg = b / bz.g;
      ModVector np(ambient), nr(ambient);
      for (std::size_t j = col; j < ambient; ++j) {
        np[j] = d.add(d.mul(d.reduce(bz.s), p[j]), d.mul(d.reduce(bz.t), r[j]));
        nr[j] = d.sub(d.mul(bg, p[j]), d.mul(ag, r[j]));
      }
      p = std::move(np);
      r = std::move(nr);
    }
    if (!pivot) continue;

    ModVector row = std::move(work[*pivot]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(*pivot));
    row = scale(normalizing_unit(row[col], d), row, d);
    const Scalar annihilator = d.value() / row[col];
    if (annihilator != d.value()) {
      ModVector extra = scale(annihilator, row, d);
      if (!extra.is_zero()) work.push_back(std::move(extra));
    }
    std::erase_if(work, [](const ModVector& v) { return v.is_zero(); });
    out.basis_.push_back(std::move(row));
    out.pivots_.push_back(col);
  }

  // Reduce entries above each pivot into [0, pivot).
  for (std::size_t i = 0; i < out.basis_.size(); ++i) {
    const std::size_t c = out.pivots_[i];
    const Scalar pv = out.basis_[i][c];
    for (std::size_t j = 0; j < i; ++j) {
      axpy_sub(out.basis_[j], out.basis_[j][c] / pv, out.basis_[i], d, c);
    }
  }
  return out;
}

Submodule howell_form(const ModMatrix& rows, Modulus d) {
  return howell_form(rows.row_vectors(), d, rows.cols());
}

Submodule Submodule::zero(Modulus d, std::size_t ambient) { return Submodule(d, ambient); }

Submodule Submodule::full(Modulus d, std::size_t ambient) {
  return howell_form(ModMatrix::identity(ambient), d);
}

ModVector Submodule::reduce(const ModVector& x) const {
  if (x.size() != ambient_) fail(ErrorCode::DimensionMismatch, "vector outside ambient space");
  ModVector r(x.entries(), d_);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::size_t c = pivots_[i];
    axpy_sub(r, r[c] / basis_[i][c], basis_[i], d_, c);
  }
  return r;
}

bool Submodule::contains(const ModVector& x) const { return reduce(x).is_zero(); }

std::uint64_t Submodule::cardinality() const {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto factor = static_cast<std::uint64_t>(d_.value() / basis_[i][pivots_[i]]);
    if (total > std::numeric_limits<std::uint64_t>::max() / factor) {
      fail(ErrorCode::Overflow, "submodule cardinality exceeds 64 bits");
    }
    total *= factor;
  }
  return total;
}

std::uint64_t cardinality(const Submodule& v) { return v.cardinality(); }

std::vector<ModVector> Submodule::elements(std::uint64_t limit) const {
  const std::uint64_t count = cardinality();
  if (count > limit) fail(ErrorCode::TooLarge, "submodule has " + std::to_string(count) + " elements");
  std::vector<ModVector> out{ModVector(ambient_)};
  out.reserve(count);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Scalar order = d_.value() / basis_[i][pivots_[i]];
    const std::size_t existing = out.size();
    for (Scalar c = 1; c < order; ++c) {
      const ModVector step = scale(c, basis_[i], d_);
      for (std::size_t k = 0; k < existing; ++k) out.push_back(add(out[k], step, d_));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Submodule kernel(const ModMatrix& m, Modulus d) {
  const std::size_t k = m.rows(), width = m.cols();
  // Howell form of [M^T | I]; rows vanishing on the first block give the kernel.
  std::vector<ModVector> aug;
  aug.reserve(width);
  for (std::size_t j = 0; j < width; ++j) {
    ModVector row(k + width);
    for (std::size_t i = 0; i < k; ++i) row[i] = d.reduce(m.at(i, j));
    row[k + j] = 1;
    aug.push_back(std::move(row));
  }
  const Submodule h = howell_form(aug, d, k + width);
  std::vector<ModVector> ker;
  for (std::size_t i = 0; i < h.basis().size(); ++i) {
    if (h.pivots()[i] < k) continue;
    const auto& row = h.basis()[i];
    ker.emplace_back(std::vector<Scalar>(row.begin() + static_cast<std::ptrdiff_t>(k), row.end()), d);
  }
  return howell_form(ker, d, width);
}

Submodule orthogonal_complement(const Submodule& v) {
  return kernel(ModMatrix(v.basis(), v.ambient_dim()), v.modulus());
}

namespace {

void require_compatible(const Submodule& v, const Submodule& w) {
  if (v.modulus() != w.modulus() || v.ambient_dim() != w.ambient_dim()) {
    fail(ErrorCode::DimensionMismatch, "submodules live in different ambient spaces");
  }
}

}  // namespace

Submodule sum(const Submodule& v, const Submodule& w) {
  require_compatible(v, w);
  std::vector<ModVector> rows = v.basis();
  rows.insert(rows.end(), w.basis().begin(), w.basis().end());
  return howell_form(rows, v.modulus(), v.ambient_dim());
}

Submodule intersect(const Submodule& v, const Submodule& w) {
  require_compatible(v, w);
  return orthogonal_complement(sum(orthogonal_complement(v), orthogonal_complement(w)));
}

bool is_subset(const Submodule& v, const Submodule& w) {
  require_compatible(v, w);
  return std::all_of(v.basis().begin(), v.basis().end(),
                     [&](const ModVector& b) { return w.contains(b); });
}

std::optional<std::vector<Scalar>> solve(std::span<const ModVector> rows, const ModVector& target,
                                         Modulus d) {
  const std::size_t width = target.size(), k = rows.size();
  std::vector<ModVector> aug;
  aug.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (rows[i].size() != width) fail(ErrorCode::DimensionMismatch, "solve: ragged system");
    ModVector row(width + k);
    for (std::size_t j = 0; j < width; ++j) row[j] = d.reduce(rows[i][j]);
    row[width + i] = 1;
    aug.push_back(std::move(row));
  }
  const Submodule h = howell_form(aug, d, width + k);
  ModVector x(width + k);
  for (std::size_t j = 0; j < width; ++j) x[j] = d.reduce(target[j]);
  for (std::size_t i = 0; i < h.basis().size(); ++i) {
    const std::size_t c = h.pivots()[i];
    if (c >= width) break;
    const Scalar pv = h.basis()[i][c];
    if (x[c] % pv != 0) return std::nullopt;
    axpy_sub(x, x[c] / pv, h.basis()[i], d);
  }
  for (std::size_t j = 0; j < width; ++j) {
    if (x[j] != 0) return std::nullopt;
  }
  // Each Howell row is (c^T G | c^T); x = (t, 0) - (t, c^T) after reduction.
  std::vector<Scalar> coeffs(k);
  for (std::size_t i = 0; i < k; ++i) coeffs[i] = d.neg(x[width + i]);
  return coeffs;
}

AffineCoset::AffineCoset(Submodule direction, const ModVector& offset)
    : direction_(std::move(direction)), offset_(direction_.reduce(offset)) {}

bool AffineCoset::contains(const ModVector& x) const {
  return direction_.contains(sub(x, offset_, direction_.modulus()));
}

std::vector<ModVector> AffineCoset::elements(std::uint64_t limit) const {
  auto pts = direction_.elements(limit);
  for (auto& p : pts) p = add(p, offset_, direction_.modulus());
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::optional<AffineCoset> coset_intersect(const AffineCoset& a, const AffineCoset& b) {
  const Submodule& da = a.direction();
  const Submodule& db = b.direction();
  require_compatible(da, db);
  const Modulus d = da.modulus();
  std::vector<ModVector> rows = da.basis();
  rows.insert(rows.end(), db.basis().begin(), db.basis().end());
  const ModVector delta = sub(b.offset(), a.offset(), d);
  const auto coeffs = solve(rows, delta, d);
  if (!coeffs) return std::nullopt;
  ModVector common = a.offset();
  for (std::size_t i = 0; i < da.basis().size(); ++i) {
    common = add(common, scale((*coeffs)[i], da.basis()[i], d), d);
  }
  return AffineCoset(intersect(da, db), common);
}

std::uint64_t checked_pow(Scalar base, std::size_t exponent) {
  std::uint64_t total = 1;
  const auto b = static_cast<std::uint64_t>(base);
  for (std::size_t i = 0; i < exponent; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / b) {
      fail(ErrorCode::Overflow, "power exceeds 64 bits");
    }
    total *= b;
  }
  return total;
}

std::vector<ModVector> all_vectors(Modulus d, std::size_t length, std::uint64_t limit) {
  const std::uint64_t count = checked_pow(d.value(), length);
  if (count > limit) fail(ErrorCode::TooLarge, "space has " + std::to_string(count) + " points");
  std::vector<ModVector> out;
  out.reserve(count);
  ModVector cur(length);
  for (std::uint64_t k = 0; k < count; ++k) {
    out.push_back(cur);
    for (std::size_t i = length; i-- > 0;) {
      if (++cur[i] < d.value()) break;
      cur[i] = 0;
    }
  }
  return out;
}

}  // namespace toytheory
