#pragma once

// Exact integer linear algebra: normal forms, integer solving, lattice
// membership, Hilbert bases and nonnegative feasibility.
//
// Convention: vectors are rows and act on the left, so a matrix m with
// r rows and c columns maps Z^r -> Z^c by x |-> x * m.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace preord {

using Int = mpz_class;
using IntVec = std::vector<Int>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a search exceeds its configured state budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Stacks `rows` (each of length `cols`) into a matrix.
  static IntMatrix from_rows(std::span<const IntVec> rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVec row(std::size_t i) const;
  std::vector<IntVec> row_list() const;
  void set_row(std::size_t i, const IntVec& v);

  IntMatrix transpose() const;
  IntMatrix vstack(const IntMatrix& below) const;
  IntMatrix select_rows(std::span<const std::size_t> idx) const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntVec make_vec(std::initializer_list<long> xs);
IntVec zero_vec(std::size_t n);
IntVec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const IntVec& v);
IntVec operator+(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a);
IntVec operator*(const Int& s, const IntVec& v);
/// x * m (row vector times matrix).
IntVec row_times(const IntVec& x, const IntMatrix& m);
std::string to_string(const IntVec& v);
std::string to_string(const IntMatrix& m);

/// Bareiss fraction-free determinant of a square matrix.
Int determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

/// u * m = h, u unimodular, h in row-style Hermite normal form: nonzero rows
/// first, strictly increasing pivot columns, positive pivots, entries above
/// each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};
HermiteForm hermite_normal_form(const IntMatrix& m);

/// u * m * v = d with d diagonal, nonnegative, d_1 | d_2 | ... (zeros last).
struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  std::vector<Int> diagonal() const;
};
SmithForm smith_normal_form(const IntMatrix& m);

/// Some x with x * a = b, or nullopt when no integer solution exists.
std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b);

/// Rows spanning the integer left kernel {y : y * m = 0}.
IntMatrix left_kernel(const IntMatrix& m);

/// Whether x lies in the integer row span of gens. dim is the ambient length
/// (used when gens is empty).
bool lattice_membership(std::span<const IntVec> gens, const IntVec& x);

/// Z^n modulo a sublattice, in Smith coordinates: y = x * v where
/// coordinate j is taken modulo moduli()[j] (0 meaning a free coordinate).
/// Coordinates with modulus 1 are dropped.
class LatticeQuotient {
 public:
  LatticeQuotient() = default;
  LatticeQuotient(std::span<const IntVec> relations, std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<Int>& moduli() const { return moduli_; }
  /// Reduced coordinates; torsion entries lie in [0, modulus).
  IntVec coordinates(const IntVec& x) const;
  bool is_zero(const IntVec& x) const;
  const std::vector<IntVec>& relations() const { return relations_; }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVec> relations_;
  IntMatrix transform_;          // dim x kept, columns of v that survive
  std::vector<Int> moduli_;      // per kept coordinate
};

struct HilbertBasis {
  IntMatrix system;
  std::vector<IntVec> basis;
};

inline constexpr std::size_t kDefaultFrontierCap = 1'000'000;

/// Minimal nonnegative solutions of A * x = 0 (x a column vector), by the
/// Contejean-Devie completion procedure.
HilbertBasis hilbert_basis(const IntMatrix& a,
                           std::size_t frontier_cap = kDefaultFrontierCap);

struct NonnegSolution {
  IntVec coefficients;          // a >= 0, one per generator
  IntVec modulus_coefficients;  // t, one per modulus row
};

/// Finds a >= 0 and integer t with x = sum a_i gens_i + sum t_j modulus_j.
std::optional<NonnegSolution> nonneg_feasible(std::span<const IntVec> gens,
                                              std::span<const IntVec> modulus,
                                              const IntVec& x);
/// Same, with the modulus lattice already reduced.
std::optional<NonnegSolution> nonneg_feasible(std::span<const IntVec> gens,
                                              const LatticeQuotient& modulus,
                                              const IntVec& x);

/// Generators (as coefficient vectors a >= 0) of the monoid
/// {a >= 0 : sum a_i images_i == 0 modulo the quotient lattice}.
std::vector<IntVec> nonneg_zero_combinations(std::span<const IntVec> images,
                                             const LatticeQuotient& modulus);

}  // namespace preord
