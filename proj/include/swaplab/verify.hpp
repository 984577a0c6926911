#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swaplab/io.hpp"
#include "swaplab/reduce.hpp"
#include "swaplab/search.hpp"

namespace swaplab {

enum class CheckStatus { Pass, Fail, Skipped };

std::string to_string(CheckStatus status);

/// Outcome of one check. A failure carries a counterexample holding the
/// solution(s) and costs needed to replay the violated inequality.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  /// Number of solutions, pairs, arcs or samples examined.
  std::uint64_t evaluated = 0;
  Json counterexample;

  bool passed() const { return status == CheckStatus::Pass; }
  Json to_json() const;
};

struct VerificationReport {
  std::string instance_id;
  std::vector<CheckResult> checks;

  /// True iff no check failed. Skipped checks do not count as failures.
  bool passed() const;
  Json to_json() const;
};

struct VerifyOptions {
  std::uint64_t guard = kDefaultNodeGuard;
  /// Sample count for the membership bound when |O| = N exceeds the guard.
  std::uint64_t membership_samples = 10000;
  std::uint64_t seed = 1;
  /// Report GuardExceeded as a skipped check instead of rethrowing.
  bool skip_over_guard = false;
  /// Relative tolerance for the floating-point closed-form cross-check.
  double float_rel_tol = 1e-9;
};

/// Every local optimum of the target is reasonable.
CheckResult check_local_optima_reasonable(const ReductionArtifact& art, const VerifyOptions& opts = {});
/// Instance form: skipped when the instance carries no literal labels.
CheckResult check_local_optima_reasonable(const ExactInstance& inst, const VerifyOptions& opts = {});

/// Over all ordered pairs of reasonable O, O': w(T_O) < w(T_O') iff cost(O) > cost(O'),
/// and equal weights iff equal costs.
CheckResult check_cost_order_equivalence(const ReductionArtifact& art, const VerifyOptions& opts = {});

/// closed_form_cost(Psi(O)) equals the direct cost of every reasonable O,
/// exactly; DFKM additionally agrees in double precision within float_rel_tol.
CheckResult check_closed_forms(const ReductionArtifact& art, const VerifyOptions& opts = {});

/// No improving arc leads from a reasonable to a non-reasonable solution.
CheckResult check_no_escape_from_reasonable(const ReductionArtifact& art, const VerifyOptions& opts = {});

/// Every improving path between reasonable solutions whose inner vertices are
/// non-reasonable is a single arc, and projects under Psi to an improving flip
/// or to equal assignments.
CheckResult check_tightness_paths(const ReductionArtifact& art, const VerifyOptions& opts = {});

/// Psi maps every local optimum of the target to a Flip local optimum of the source.
CheckResult check_psi_correspondence(const ReductionArtifact& art, const VerifyOptions& opts = {});

/// DFKM: for all (or sampled) O with |O| = N, c not in O, o in O: r(c,o) > 1/(2N).
CheckResult check_membership_bound(const ReductionArtifact& art, const VerifyOptions& opts = {});

/// MUFL/DKM: every non-reasonable solution has a constructed improving move.
/// MUFL closes one of x_n, ~x_n when both are open and opens x_n when neither
/// is. DKM moves an open clause point onto an uncovered variable, or, with no
/// clause point open, moves a doubly covered literal onto an uncovered variable.
/// Passes iff each constructed move strictly improves. Skipped for DFKM.
CheckResult check_single_step_lemmas(const ReductionArtifact& art, const VerifyOptions& opts = {});

/// Constants rederived from (kind, N, M, max weight, c), the source hash, and
/// the target rebuilt from the source all match the artifact.
CheckResult check_constants(const ReductionArtifact& art);

/// MUFL targets satisfy the triangle inequality.
CheckResult check_metric(const ReductionArtifact& art);

/// DKM/DFKM distance matrices pass the Schoenberg test.
CheckResult check_embeddable(const ReductionArtifact& art, double tol = 1e-9);

/// Samples N in [n_min, n_max], M in [m_min, m_max], eps in (0, 1/(4N+2M)] and
/// c in (1, 2), and checks that the gamma gap is positive and equals its
/// factored form. Both are evaluated exactly from the sampled doubles.
CheckResult check_gamma_positivity(int n_min, int n_max, int m_min, int m_max, std::uint64_t samples,
                                   std::uint64_t seed);

/// All checks applicable to the artifact's kind, sharing one transition graph.
VerificationReport verify_artifact(const ReductionArtifact& art, const VerifyOptions& opts = {},
                                   std::string instance_id = {});

}  // namespace swaplab
