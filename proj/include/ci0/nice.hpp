#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ci0/artin.hpp"

namespace ci0 {

using Row = std::vector<AlgElement>;

/// Rectangular matrix over an Artin algebra. The row x acts on the left:
/// (x * phi)_j = sum_i x_i phi_ij.
class AlgMatrix {
 public:
  AlgMatrix() = default;
  AlgMatrix(AlgebraPtr alg, std::size_t rows, std::size_t cols);
  static AlgMatrix identity(const AlgebraPtr& alg, std::size_t n);
  static AlgMatrix diagonal(const Row& d);
  static AlgMatrix from_columns(const AlgebraPtr& alg, std::size_t rows, const std::vector<Row>& cols);
  static AlgMatrix parse(const AlgebraPtr& alg, const std::vector<std::vector<std::string>>& entries);

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  AlgElement& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const AlgElement& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  Row column(std::size_t j) const;
  void set_column(std::size_t j, const Row& c);
  /// Submatrix with row r and column c removed.
  AlgMatrix minor_matrix(std::size_t r, std::size_t c) const;
  std::vector<std::vector<std::string>> to_strings() const;
  std::string to_string() const;
  bool is_zero() const;

  AlgMatrix operator+(const AlgMatrix& o) const;
  AlgMatrix operator-(const AlgMatrix& o) const;
  AlgMatrix operator*(const AlgMatrix& o) const;
  AlgMatrix scaled(const AlgElement& a) const;
  friend bool operator==(const AlgMatrix& a, const AlgMatrix& b);
  friend bool operator!=(const AlgMatrix& a, const AlgMatrix& b) { return !(a == b); }

 private:
  AlgebraPtr alg_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<AlgElement> e_;
};

using SquareMatrixA = AlgMatrix;

constexpr std::size_t kMaxDetSize = 6;

AlgElement det(const AlgMatrix& m);
AlgMatrix adjugate(const AlgMatrix& m);
struct DetAdj {
  AlgElement det;
  AlgMatrix adj;
};
/// Verifies m * adj = adj * m = det * 1.
DetAdj det_adj(const AlgMatrix& m);
bool is_invertible(const AlgMatrix& m);
AlgMatrix inverse(const AlgMatrix& m);

/// x * phi for a generating row x.
Row row_times(const Row& x, const AlgMatrix& phi);
Row variables_row(const AlgebraPtr& alg);
AlgMatrix project(const Quotient& q, const AlgMatrix& m);
AlgMatrix lift(const Quotient& q, const AlgMatrix& m);
Row project(const Quotient& q, const Row& r);
Row lift(const Quotient& q, const Row& r);

struct NiceCheck {
  bool nice = false;
  IdealSubspace ideal;  // J(x * phi)
  AlgElement det;
};

/// phi is x-nice when det(phi) is outside J(x * phi). When nice, the socle
/// identity J : M = J + det A is verified and InvariantViolation is thrown on
/// failure. `row` defaults to the variables.
NiceCheck is_x_nice(const AlgMatrix& phi, const Row* row = nullptr);
/// x * psi = 0 and det(psi) != 0; when true, verifies socle = det(psi) A.
bool is_wiebe(const AlgMatrix& psi, const Row* row = nullptr);

struct SyzygySet {
  std::vector<Row> columns;
  bool minimized = false;
  std::size_t kernel_dim = 0;
};

/// K-basis of ker(A^n -> A, v -> sum row_i v_i), optionally reduced to a
/// minimal A-module generating set.
SyzygySet syzygies(const Row& row, bool minimize);

/// Enumerates k-subsets of {0..m-1} lazily in lexicographic order after an
/// optional seeded shuffle of the indices. The callback returns true to stop.
/// Returns the number of subsets visited; throws Inconclusive past `cap`.
std::size_t enumerate_subsets(std::size_t m, std::size_t k, std::uint64_t seed, std::size_t cap,
                              const std::function<bool(const std::vector<std::size_t>&)>& visit);

constexpr std::size_t kDefaultMinorCap = 1000000;

struct FittingResult {
  IdealSubspace ideal;
  std::size_t generators = 0;
  std::size_t minors = 0;
  bool early_exit = false;
};

/// Initial Fitting ideal of the cyclic-presented module J(row) = A^n / Syz.
FittingResult fitting_delta0_detail(const Row& row, bool minimized = true, std::size_t cap = kDefaultMinorCap);
IdealSubspace fitting_delta0(const Row& row, bool minimized = true, std::size_t cap = kDefaultMinorCap);

struct Ci0Verdict {
  bool is_ci0 = false;
  std::optional<AlgMatrix> certificate;
  std::size_t syzygy_generators = 0;
  std::size_t minors_examined = 0;
  std::string refutation;
};

/// Decides whether I is a C.I.0 ideal; certificates satisfy J(x*phi) = I.
Ci0Verdict ci0_test(const IdealSubspace& I, std::uint64_t seed = 0, std::size_t cap = kDefaultMinorCap);
/// Decides whether 0 : bA is a C.I.0 ideal.
Ci0Verdict ann_ci0_test(const AlgElement& b, std::uint64_t seed = 0, std::size_t cap = kDefaultMinorCap);

/// n x n(n-1)/2 matrix whose column for i<j is x_j e_i - x_i e_j.
AlgMatrix koszul_boundary(const AlgebraPtr& alg);
/// K-basis (flattened, slot-major) of im(delta) in A^n.
Echelon koszul_image(const AlgebraPtr& alg);
Vec flatten(const Row& column);
Row unflatten(const AlgebraPtr& alg, const Vec& v, std::size_t n);
bool in_koszul_image(const Row& column);
bool in_koszul_ideal(const AlgMatrix& alpha);

/// Both inputs must be x-nice; equivalent iff they belong to the same ideal.
bool nice_equivalent(const AlgMatrix& phi1, const AlgMatrix& phi2);

struct TranslateResult {
  bool solvable = false;
  std::optional<AlgMatrix> theta;  // invertible, when found
  std::optional<AlgMatrix> alpha;  // phi1 - phi2 * theta, in N
  std::size_t attempts = 0;
};

/// Solves phi1 - phi2 * theta in N_{x,A}, searching for invertible theta.
TranslateResult membership_in_translate(const AlgMatrix& phi1, const AlgMatrix& phi2, std::uint64_t seed = 0,
                                        std::size_t attempts = 64);
/// gamma with phi * gamma = psi, if any.
std::optional<AlgMatrix> right_factor(const AlgMatrix& phi, const AlgMatrix& psi);
AlgMatrix perturb_by_koszul(const AlgMatrix& phi, const AlgMatrix& alpha);

struct Diagonalization {
  AlgMatrix theta1, theta2;
  AlgElement d;
};

/// For det(gamma) in M \ M^2: theta1 * gamma * theta2 = diag(d, 1, ..., 1).
Diagonalization diagonalize_unit_pivot(const AlgMatrix& gamma);

struct FirstRowNormalForm {
  AlgMatrix phi1;
  unsigned r1 = 0;
  unsigned r1_formula = 0;
};

/// Equivalent x-nice matrix with first row (x_1^r1, 0, ..., 0).
FirstRowNormalForm normalize_first_row(const AlgMatrix& phi);
/// max{i : x_1^i not in H + J} with H = (x_2, ..., x_n).
unsigned first_row_exponent_formula(const IdealSubspace& J);

AlgElement random_element(const AlgebraPtr& alg, std::mt19937_64& rng, bool in_maximal, long range = 3);
AlgMatrix random_matrix(const AlgebraPtr& alg, std::size_t n, std::mt19937_64& rng, long range = 3);

}  // namespace ci0
