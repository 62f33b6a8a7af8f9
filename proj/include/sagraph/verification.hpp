#pragma once

// Finite-instance checks of the identities and inequalities behind the
// criteria, plus seed-driven randomized suites built on them.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sagraph/graph.hpp"
#include "sagraph/metrics.hpp"
#include "sagraph/operators.hpp"

namespace sagraph {

inline constexpr double kIdentityRelTol = 1e-9;
inline constexpr double kIdentityAbsTol = 1e-12;
inline constexpr double kInequalitySlack = 1e-9;

struct IdentityCheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool passes = false;
  /// False when a precondition failed; the check then says nothing.
  bool applicable = true;
  std::string note;

  /// lhs == rhs within kIdentityRelTol relative or kIdentityAbsTol absolute.
  static IdentityCheckResult equality(double lhs, double rhs);
  /// lhs <= rhs + kInequalitySlack * max(1, |rhs|).
  static IdentityCheckResult at_most(double lhs, double rhs);
  /// lhs <= bound exactly; the bound already carries its tolerance.
  static IdentityCheckResult bounded_by(double lhs, double bound);
};

/// Ground-state form of the localization identity: with (lambda_0, v_0) the
/// lowest eigenpair of H,
/// (f v_0, (H - lambda_0)(f v_0)) = 1/2 sum_x sum_{y~x} b Re[e^{-i theta} v_0(x) conj v_0(y)] (f(x)-f(y))^2.
IdentityCheckResult verify_lemma21(const GraphBundle& bundle, std::span<const double> f);

/// I^2 = 4 (phi^2 H u, u) - 4 (phi^2 W u, u)
///       + sum_{x,y} b (e^{i theta} u(y) - u(x)) (e^{-i theta} conj u(y) + conj u(x)) (phi(x)^2 - phi(y)^2).
/// Fails as well when the right-hand side has an imaginary part above 1e-10 relative.
IdentityCheckResult verify_prop41_identity(const GraphBundle& bundle, const MuVector& u,
                                           std::span<const double> phi);

/// T_u^2 <= 4 (||Hu|| ||u|| + (K^2 + 1) ||u||^2) with K the Lipschitz
/// constant of q^{-1/2} for sigma. Not applicable unless sigma is strongly
/// intrinsic, q >= 1 and W >= -q.
IdentityCheckResult verify_prop41_bound(const GraphBundle& bundle, const EdgeLengthAssignment& sigma,
                                        std::span<const double> q, const MuVector& u);

/// The piecewise affine cutoff F_eps with parameters 0 < eps < rho < 1/2 and R > 1.
double cutoff_F(double eps, double rho, double R, double s);

/// Samples F_eps: range [0,1], the values of each piece, continuity at the
/// break points and the slope bound rho / (rho - eps). lhs is the largest
/// sampled slope, rhs the bound. Throws InputError on misordered parameters.
IdentityCheckResult verify_cutoff_F(double eps, double rho, double R, int samples,
                                    std::uint64_t seed = 1);

/// chi_n(x) = min(max((2n - d(x_0, x)) / n, 0), 1).
double cutoff_chi(double distance, double n);

/// Properties (i), (ii) and the edge bound |chi_n(x) - chi_n(y)| <= sigma(x,y)/n
/// on a graph whose frontier lies outside the ball of radius 2n. lhs is the
/// largest n |chi_n(x) - chi_n(y)| / sigma(x,y), rhs is 1. Throws
/// InputError("enlarge truncation") otherwise.
IdentityCheckResult verify_chi_n(const GraphBundle& bundle, const EdgeLengthAssignment& len,
                                 VertexIndex x0, double n);

/// Random connected bundle: 2..20 vertices, Erdos-Renyi edges with rejection
/// until connected, b and mu in (0.1, 10), theta uniform, W in (-5, 5).
GraphBundle random_bundle(std::uint64_t seed);

/// Seed of instance i of a suite.
std::uint64_t instance_seed(std::uint64_t suite_seed, std::uint64_t index);

struct SuiteSummary {
  std::string suite;
  int instances = 0;
  int passed = 0;
  int failed = 0;
  double worst_rel_err = 0.0;
  std::vector<std::string> failures;
};

/// Known suites: lemma21, prop41 (identity and bound), cutoffs, covering-bound,
/// quadratic-form, hermiticity, gauge, nonnegativity.
std::vector<std::string> suite_names();

/// Runs one suite ("all" runs every suite and merges the counts). Each
/// instance draws its own seed; instances run in parallel and are reduced
/// in index order.
SuiteSummary run_suite(const std::string& suite, std::uint64_t seed, int instances);

}  // namespace sagraph
