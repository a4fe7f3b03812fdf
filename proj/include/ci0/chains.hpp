#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ci0/nice.hpp"

namespace ci0 {

/// One step I_{i-1} ⊂ I_i of a chain.
struct ChainLink {
  AlgElement witness;      // det(eta_i), a_i or d_i
  bool strict = false;     // I_{i-1} != I_i
  bool factor_unit = false;
  bool ci0 = false;        // verdict on I_i
  bool gorenstein = false; // A/I_i Gorenstein
  unsigned quotient_exponent = 0;  // exponent(A/I_i)
};

struct ChainReport {
  std::vector<IdealSubspace> ideals;  // I_0 ⊆ ... ⊆ I_t = M
  std::vector<AlgMatrix> matrix_factors;
  std::vector<AlgElement> element_factors;
  std::vector<ChainLink> links;  // links[i-1] describes I_{i-1} ⊂ I_i
  std::size_t length() const;    // number of strict links
};

/// factors = (eta_t, ..., eta_1), so psi = factors[0] * ... * factors[t-1].
/// I_i = J(x * eta_t ... eta_{i+1}).
ChainReport chain_from_matrix_factorization(const std::vector<AlgMatrix>& factors);
/// factors = (a_r, ..., a_1) with product generating the socle; I_i = 0 : a_i ... a_1.
ChainReport gorenstein_chain_from_socle_factorization(const std::vector<AlgElement>& factors);

/// gamma with phi1 * gamma x-nice and J(x * phi1 * gamma) = I0.
AlgMatrix refine_pair(const IdealSubspace& I0, const IdealSubspace& I1, const AlgMatrix& phi1, std::uint64_t seed = 0,
                      std::size_t cap = kDefaultMinorCap);

struct MinGenProfile {
  AlgElement y;
  bool ann_is_ci0 = false;
  bool ann_is_principal = false;
  bool yA_is_ci0 = false;
  bool block_wiebe_found = false;
  std::optional<AlgElement> z;       // 0 : yA = zA
  std::optional<AlgMatrix> phi1;     // x-nice, belongs to 0 : yA
  std::optional<AlgMatrix> psi;      // phi1 * diag(y, 1, ..., 1), x-Wiebe
  bool via_refinement = false;       // psi came from refine_pair + diagonalization
  bool all_true() const { return ann_is_ci0 && ann_is_principal && yA_is_ci0 && block_wiebe_found; }
  bool all_false() const { return !ann_is_ci0 && !ann_is_principal && !yA_is_ci0 && !block_wiebe_found; }
};

/// Evaluates the four equivalent conditions for a minimal generator y and
/// throws InvariantViolation if they disagree.
MinGenProfile min_generator_profile(const AlgElement& y);

/// Throws PreconditionError unless the zero ideal is C.I.0.
void require_ci0_algebra(const AlgebraPtr& alg);
/// y in M \ M^2.
bool is_minimal_generator(const AlgElement& y);

struct ZeroDivisorPairReport {
  bool ann_y_is_zA = false;
  bool ann_z_is_yA = false;
  bool yA_ci0 = false;
  bool zA_ci0 = false;
  std::optional<bool> exponent_drop;  // graded homogeneous inputs only
  bool holds() const { return ann_y_is_zA && ann_z_is_yA && yA_ci0 && zA_ci0 && exponent_drop.value_or(true); }
};

ZeroDivisorPairReport zero_divisor_pair_check(const AlgElement& y, const AlgElement& z);

/// Chain I_i = (z_1, ..., z_i)A from an upper triangular z-Wiebe matrix.
ChainReport triangular_chain(const Row& z, const AlgMatrix& psi);
/// Upper triangular z-Wiebe matrix for the chain (z_1, ..., z_i)A, if the
/// links admit principal colon generators.
std::optional<AlgMatrix> triangular_from_chain(const Row& z);

struct GeneratorCheck {
  AlgElement y;
  Row sequence;                     // minimal generating sequence starting at y
  bool c5t = false;                 // 0 : yA not inside (x_2, ..., x_n)
  bool pimi = false;                // 0 : yA not inside M^2
  std::optional<AlgElement> z;      // z in M \ M^2 with yz = 0
  bool square_in_rest = false;      // y^2 in (x_2, ..., x_n)
  bool bof = false;                 // some minimal sequence from y satisfies c5t
  bool yA_ci0 = false;
};

struct MinimalExponentReport {
  unsigned exponent = 0;
  std::size_t embedding_dimension = 0;
  bool minimal_exponent = false;
  std::vector<GeneratorCheck> checks;
};

/// Minimal generating sequence (y, x_{i_2}, ..., x_{i_n}) completed greedily from the variables.
Row complete_to_minimal_sequence(const AlgElement& y);

/// Runs the minimal-exponent checks for every variable and each extra element.
MinimalExponentReport minimal_exponent_checks(const AlgebraPtr& alg, const std::vector<AlgElement>& extra = {});

enum class DecompositionStatus { Decomposed, IndecomposableCertified, Inconclusive };
enum class SearchMode { Exhaustive, Bounded };

std::string to_string(DecompositionStatus s);

/// Univariate reduction of the degree-one constraints for one normal-form pattern.
struct UnivariateConstraint {
  std::string pattern;
  std::string variable;
  std::vector<Scalar> coefficients;  // ascending powers
  std::string polynomial;
  std::vector<Scalar> roots;         // rational or GF(p) roots
};

struct DecompositionResult {
  DecompositionStatus status = DecompositionStatus::Inconclusive;
  std::optional<std::pair<AlgElement, AlgElement>> element_witness;
  std::optional<std::pair<AlgMatrix, AlgMatrix>> matrix_witness;
  std::string search_space;
  std::vector<std::string> constraints;
  std::vector<UnivariateConstraint> univariate;
  std::size_t candidates = 0;
};

DecompositionResult decompose_search(const AlgElement& v, SearchMode mode = SearchMode::Exhaustive,
                                     std::uint64_t seed = 0, std::size_t budget = 20000);
DecompositionResult decompose_search(const AlgMatrix& psi, SearchMode mode = SearchMode::Exhaustive,
                                     std::uint64_t seed = 0, std::size_t budget = 20000);

/// Rational roots of sum_k c_k t^k by the rational root test; all roots for GF(p).
std::vector<Scalar> polynomial_roots(const std::vector<Scalar>& coefficients);

struct MaxChainReport {
  std::size_t best_length = 0;
  std::size_t upper_bound = 0;  // exponent - 1
  std::vector<IdealSubspace> best_chain;
  bool bequi_witness = false;
  std::optional<AlgElement> bequi_generator;
  std::size_t explored = 0;
  bool budget_exhausted = false;
};

/// Heuristic search for long strict chains of C.I.0 ideals; not a decision procedure.
/// With `start`, chains are forced through 0 ⊂ start.
MaxChainReport max_length_chain_probe(const AlgebraPtr& alg, std::uint64_t seed = 0, std::size_t budget = 400,
                                      const std::optional<IdealSubspace>& start = std::nullopt);

struct SplitRealization {
  std::vector<Polynomial> generators;  // (y' z', a'_2, ..., a'_n)
  Polynomial y_lift, z_lift;
  std::vector<std::vector<Polynomial>> lifted_matrix;
  // Equality with the defining ideal at the origin: the generators plus
  // M^exponent have the same Groebner basis as Q.
  bool regenerates = false;
  bool global = false;  // the generators alone already give Q
};

SplitRealization realize_split_generators(const AlgElement& y);

}  // namespace ci0
