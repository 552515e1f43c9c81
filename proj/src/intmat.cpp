#include "preord/intmat.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace preord {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVec> rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVec> IntMatrix::row_list() const {
  std::vector<IntVec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

void IntMatrix::set_row(std::size_t i, const IntVec& v) {
  if (v.size() != cols_) {
    throw DimensionError("row of length " + std::to_string(v.size()) +
                         " in a matrix with " + std::to_string(cols_) +
                         " columns");
  }
  std::copy(v.begin(), v.end(),
            data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::vstack(const IntMatrix& below) const {
  if (rows_ == 0) {
    IntMatrix copy = below;
    if (copy.rows_ == 0) copy.cols_ = std::max(cols_, below.cols_);
    return copy;
  }
  if (below.rows_ == 0) return *this;
  if (below.cols_ != cols_) throw DimensionError("vstack column mismatch");
  IntMatrix m(rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(),
            m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return m;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) m.set_row(k, row(idx[k]));
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Int& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("cannot multiply " + std::to_string(a.rows_) + "x" +
                         std::to_string(a.cols_) + " by " +
                         std::to_string(b.rows_) + "x" +
                         std::to_string(b.cols_));
  }
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) swap((*this)(i, a), (*this)(i, b));
}

// ---------------------------------------------------------------------------
// vectors

IntVec make_vec(std::initializer_list<long> xs) {
  IntVec v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

IntVec zero_vec(std::size_t n) { return IntVec(n); }

IntVec unit_vec(std::size_t n, std::size_t i) {
  IntVec v(n);
  v[i] = 1;
  return v;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

IntVec operator+(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DimensionError("vector length mismatch");
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

IntVec operator-(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DimensionError("vector length mismatch");
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

IntVec operator-(const IntVec& a) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

IntVec operator*(const Int& s, const IntVec& v) {
  IntVec c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = s * v[i];
  return c;
}

IntVec row_times(const IntVec& x, const IntMatrix& m) {
  if (x.size() != m.rows()) {
    throw DimensionError("vector of length " + std::to_string(x.size()) +
                         " against matrix with " + std::to_string(m.rows()) +
                         " rows");
  }
  IntVec y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
  }
  return y;
}

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? "," : "") << to_string(m.row(i));
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// determinant

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  Int d = determinant(m);
  return d == 1 || d == -1;
}

// ---------------------------------------------------------------------------
// Hermite normal form

namespace {

// Replaces rows (r, i) by a unimodular combination that puts gcd(m(r,c),
// m(i,c)) in row r and zero in row i at column c.
void combine_rows(IntMatrix& m, IntMatrix& u, std::size_t r, std::size_t i,
                  std::size_t c) {
  Int a = m(r, c);
  Int b = m(i, c);
  Int g, s, t;
  if (b % a == 0) {
    // plain elimination keeps the pivot line in place
    g = a;
    s = 1;
    t = 0;
  } else {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
  }
  Int ag = a / g;
  Int bg = b / g;
  auto apply = [&](IntMatrix& x) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      Int xr = x(r, j);
      Int xi = x(i, j);
      x(r, j) = s * xr + t * xi;
      x(i, j) = ag * xi - bg * xr;
    }
  };
  apply(m);
  apply(u);
}

void combine_cols(IntMatrix& m, IntMatrix& v, std::size_t c, std::size_t j,
                  std::size_t r) {
  Int a = m(r, c);
  Int b = m(r, j);
  Int g, s, t;
  if (b % a == 0) {
    // plain elimination keeps the pivot line in place
    g = a;
    s = 1;
    t = 0;
  } else {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
  }
  Int ag = a / g;
  Int bg = b / g;
  auto apply = [&](IntMatrix& x) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      Int xc = x(i, c);
      Int xj = x(i, j);
      x(i, c) = s * xc + t * xj;
      x(i, j) = ag * xj - bg * xc;
    }
  };
  apply(m);
  apply(v);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src,
                      const Int& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows()), {}};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    std::size_t p = r;
    while (p < h.rows() && h(p, c) == 0) ++p;
    if (p == h.rows()) continue;
    h.swap_rows(r, p);
    u.swap_rows(r, p);
    for (std::size_t i = r + 1; i < h.rows(); ++i)
      if (h(i, c) != 0) combine_rows(h, u, r, i, c);
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      if (h(k, c) == 0) continue;
      Int q = floor_div(h(k, c), h(r, c));
      if (q == 0) continue;
      add_row_multiple(h, k, r, -q);
      add_row_multiple(u, k, r, -q);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
    out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = out.d;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
          if (d(i, j) == 0) continue;
          if (!best || abs(d(i, j)) < abs(d(best->first, best->second)))
            best = {i, j};
        }
      if (!best) return out;
      d.swap_rows(t, best->first);
      u.swap_rows(t, best->first);
      d.swap_cols(t, best->second);
      v.swap_cols(t, best->second);

      for (std::size_t i = t + 1; i < d.rows(); ++i)
        if (d(i, t) != 0) combine_rows(d, u, t, i, t);
      for (std::size_t j = t + 1; j < d.cols(); ++j)
        if (d(t, j) != 0) combine_cols(d, v, t, j, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows() && clean; ++i)
        if (d(i, t) != 0) clean = false;
      if (!clean) continue;

      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < d.rows() && !bad_row; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row) {
        add_row_multiple(d, t, *bad_row, 1);
        add_row_multiple(u, t, *bad_row, 1);
        continue;
      }
      break;
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// solving

std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b) {
  if (b.size() != a.cols()) {
    throw DimensionError("right-hand side of length " + std::to_string(b.size()) +
                         " for a system with " + std::to_string(a.cols()) +
                         " columns");
  }
  HermiteForm hf = hermite_normal_form(a);
  IntVec y(a.rows());
  IntVec residual = b;
  for (std::size_t k = 0; k < hf.rank(); ++k) {
    std::size_t c = hf.pivots[k];
    const Int& piv = hf.h(k, c);
    if (residual[c] % piv != 0) return std::nullopt;
    y[k] = residual[c] / piv;
    for (std::size_t j = 0; j < a.cols(); ++j) residual[j] -= y[k] * hf.h(k, j);
  }
  if (!is_zero(residual)) return std::nullopt;
  IntVec x = row_times(y, hf.u);
  assert(row_times(x, a) == b);
  return x;
}

IntMatrix left_kernel(const IntMatrix& m) {
  HermiteForm hf = hermite_normal_form(m);
  std::vector<std::size_t> idx;
  for (std::size_t i = hf.rank(); i < m.rows(); ++i) idx.push_back(i);
  return hf.u.select_rows(idx);
}

bool lattice_membership(std::span<const IntVec> gens, const IntVec& x) {
  for (const auto& g : gens)
    if (g.size() != x.size()) throw DimensionError("generator length mismatch");
  if (gens.empty()) return is_zero(x);
  return solve_integer(IntMatrix::from_rows(gens, x.size()), x).has_value();
}

// ---------------------------------------------------------------------------
// LatticeQuotient

LatticeQuotient::LatticeQuotient(std::span<const IntVec> relations,
                                 std::size_t dim)
    : dim_(dim), relations_(relations.begin(), relations.end()) {
  for (const auto& r : relations_)
    if (r.size() != dim) throw DimensionError("relation length mismatch");
  SmithForm sf = smith_normal_form(IntMatrix::from_rows(relations_, dim));
  std::vector<Int> diag = sf.diagonal();
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < dim; ++j) {
    Int mod = j < diag.size() ? diag[j] : Int(0);
    if (mod == 1) continue;
    kept.push_back(j);
    moduli_.push_back(mod);
  }
  transform_ = IntMatrix(dim, kept.size());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < kept.size(); ++k) transform_(i, k) = sf.v(i, kept[k]);
}

IntVec LatticeQuotient::coordinates(const IntVec& x) const {
  if (x.size() != dim_) throw DimensionError("element length mismatch");
  IntVec y = row_times(x, transform_);
  for (std::size_t k = 0; k < y.size(); ++k)
    if (moduli_[k] != 0) mpz_fdiv_r(y[k].get_mpz_t(), y[k].get_mpz_t(), moduli_[k].get_mpz_t());
  return y;
}

bool LatticeQuotient::is_zero(const IntVec& x) const {
  return preord::is_zero(coordinates(x));
}

// ---------------------------------------------------------------------------
// Contejean-Devie

namespace {

bool dominates(const IntVec& q, const IntVec& b) {
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] < b[i]) return false;
  return true;
}

bool dominated_by_any(const IntVec& q, const std::vector<IntVec>& basis) {
  return std::any_of(basis.begin(), basis.end(),
                     [&](const IntVec& b) { return dominates(q, b); });
}

Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct CdOutcome {
  std::vector<IntVec> basis;
  std::optional<IntVec> hit;
};

// With `target` set, only solutions whose target coordinate is at most 1 are
// explored and the search stops at the first one equal to 1. Every minimal
// solution is reached along a chain of points bounded by it, so the restriction
// keeps the search complete for that slice.
CdOutcome contejean_devie(const IntMatrix& a, std::optional<std::size_t> target,
                          std::size_t cap) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  std::vector<IntVec> columns(n, IntVec(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) columns[j][i] = a(i, j);

  CdOutcome out;
  std::map<IntVec, IntVec> frontier;  // point -> A * point
  for (std::size_t j = 0; j < n; ++j) frontier.emplace(unit_vec(n, j), columns[j]);

  while (!frontier.empty()) {
    if (frontier.size() > cap) {
      throw ResourceError("Hilbert basis frontier exceeded " +
                          std::to_string(cap) + " states");
    }
    for (const auto& [p, ap] : frontier) {
      if (!is_zero(ap)) continue;
      if (target && p[*target] == 1) {
        out.hit = p;
        return out;
      }
      if (!dominated_by_any(p, out.basis)) out.basis.push_back(p);
    }
    std::map<IntVec, IntVec> next;
    for (const auto& [p, ap] : frontier) {
      if (is_zero(ap)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (dot(ap, columns[j]) >= 0) continue;
        if (target && j == *target && p[j] >= 1) continue;
        IntVec q = p;
        q[j] += 1;
        if (next.count(q) || dominated_by_any(q, out.basis)) continue;
        next.emplace(std::move(q), ap + columns[j]);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Columns: one per image, then (+d, -d) per torsion coordinate.
IntMatrix reduced_system(std::span<const IntVec> images,
                         const LatticeQuotient& q, std::size_t extra_cols) {
  const auto& mods = q.moduli();
  std::size_t torsion = 0;
  for (const auto& d : mods)
    if (d != 0) ++torsion;
  IntMatrix a(mods.size(), images.size() + 2 * torsion + extra_cols);
  for (std::size_t i = 0; i < images.size(); ++i) {
    IntVec y = q.coordinates(images[i]);
    for (std::size_t k = 0; k < y.size(); ++k) a(k, i) = y[k];
  }
  std::size_t col = images.size();
  for (std::size_t k = 0; k < mods.size(); ++k) {
    if (mods[k] == 0) continue;
    a(k, col) = mods[k];
    a(k, col + 1) = -mods[k];
    col += 2;
  }
  return a;
}

}  // namespace

HilbertBasis hilbert_basis(const IntMatrix& a, std::size_t frontier_cap) {
  CdOutcome r = contejean_devie(a, std::nullopt, frontier_cap);
  std::sort(r.basis.begin(), r.basis.end());
  return HilbertBasis{a, std::move(r.basis)};
}

std::optional<NonnegSolution> nonneg_feasible(std::span<const IntVec> gens,
                                              std::span<const IntVec> modulus,
                                              const IntVec& x) {
  for (const auto& r : modulus)
    if (r.size() != x.size()) throw DimensionError("modulus length mismatch");
  return nonneg_feasible(gens, LatticeQuotient(modulus, x.size()), x);
}

std::optional<NonnegSolution> nonneg_feasible(std::span<const IntVec> gens,
                                              const LatticeQuotient& modulus,
                                              const IntVec& x) {
  if (x.size() != modulus.dim()) throw DimensionError("target length mismatch");
  for (const auto& g : gens)
    if (g.size() != x.size()) throw DimensionError("generator length mismatch");

  IntVec coeffs(gens.size());
  if (!modulus.is_zero(x)) {
    IntMatrix a = reduced_system(gens, modulus, 1);
    const std::size_t slack = a.cols() - 1;
    IntVec yx = modulus.coordinates(x);
    for (std::size_t k = 0; k < yx.size(); ++k) a(k, slack) = -yx[k];
    CdOutcome r = contejean_devie(a, slack, kDefaultFrontierCap);
    if (!r.hit) return std::nullopt;
    std::copy_n(r.hit->begin(), gens.size(), coeffs.begin());
  }

  IntVec residual = x;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (coeffs[i] != 0) residual = residual - coeffs[i] * gens[i];
  IntVec t(modulus.relations().size());
  if (!modulus.relations().empty()) {
    auto sol = solve_integer(IntMatrix::from_rows(modulus.relations(), x.size()), residual);
    if (!sol) throw std::logic_error("nonneg_feasible: certificate failed back-substitution");
    t = std::move(*sol);
  } else if (!is_zero(residual)) {
    throw std::logic_error("nonneg_feasible: certificate failed back-substitution");
  }
  return NonnegSolution{std::move(coeffs), std::move(t)};
}

std::vector<IntVec> nonneg_zero_combinations(std::span<const IntVec> images,
                                             const LatticeQuotient& modulus) {
  for (const auto& g : images)
    if (g.size() != modulus.dim()) throw DimensionError("image length mismatch");
  IntMatrix a = reduced_system(images, modulus, 0);
  HilbertBasis hb = hilbert_basis(a);
  std::set<IntVec> out;
  for (const auto& b : hb.basis) {
    IntVec proj(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(images.size()));
    if (!is_zero(proj)) out.insert(std::move(proj));
  }
  return {out.begin(), out.end()};
}

}  // namespace preord
