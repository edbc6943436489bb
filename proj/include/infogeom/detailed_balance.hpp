#pragma once

#include <map>
#include <optional>

#include "infogeom/fisher.hpp"
#include "infogeom/lindblad.hpp"
#include "infogeom/linalg.hpp"
#include "infogeom/monotone.hpp"

namespace infogeom {

// Adjoint with respect to K^o_pi(A, B) = Tr[A B pi]: J_pi^{-1} o O^dag o J_pi
// with J_pi the right multiplication by pi.
SuperOperator alicki_adjoint(const SuperOperator& o, const DensityMatrix& pi);
// Adjoint with respect to K_{f,pi}: J_f o O^dag o J_f^{-1}.
SuperOperator fisher_adjoint(const SuperOperator& o, const DensityMatrix& pi,
                             const StandardMonotone& f);

// || [G, L_pi R_pi^{-1}] ||_F
double modular_commutator_norm(const SuperOperator& g, const DensityMatrix& pi);

struct AlickiVerdict {
  bool pass = false;
  double normality_residual = 0;   // [L^dag, adjoint(L^dag)]
  double skew_residual = 0;        // Hamiltonian part
  double dissipator_residual = 0;  // self-adjointness of the dissipator
  double max_residual() const {
    return std::max({normality_residual, skew_residual, dissipator_residual});
  }
};
AlickiVerdict is_alicki_db(const SuperOperator& g, const Mat& hamiltonian,
                           const DensityMatrix& pi);
AlickiVerdict is_alicki_db(const Lindbladian& lind, const DensityMatrix& pi,
                           double t = 0.0);

struct FisherVerdict {
  bool pass = false;
  double offsector_residual = 0;     // elements outside omega1 = +-omega2
  double rate_relation_residual = 0; // the paired matrix-element identities
  double hamiltonian_residual = 0;   // ||[H, pi]||
  double normality_residual = 0;     // ||[U, L_D]||
  std::map<std::string, double> per_f_residual;  // sampled adjoint residuals
  double max_residual() const;
};
// The authoritative test is the exact selection rule on matrix elements in
// the pi eigenbasis; the sampled monotones corroborate it.
FisherVerdict is_fisher_db(const SuperOperator& g, const Mat& hamiltonian,
                           const DensityMatrix& pi,
                           const std::vector<StandardMonotone>& samples = {});
FisherVerdict is_fisher_db(const Lindbladian& lind, const DensityMatrix& pi,
                           const std::vector<StandardMonotone>& samples = {},
                           double t = 0.0);

std::vector<StandardMonotone> default_db_samples();

// ------------------------------------------------------------- builders

// Jump |i><j| between eigenlevels of pi (indices in ascending-eigenvalue
// order) with the given rate; the reversed jump with rate e^{-omega} * rate
// is added automatically.
struct JumpSpec {
  Eigen::Index to = 0;
  Eigen::Index from = 0;
  double rate = 0;
};

Lindbladian build_db_lindbladian(const DensityMatrix& pi,
                                 const std::vector<JumpSpec>& jumps,
                                 const Mat* hamiltonian = nullptr);

// Adds the transpose term sum_ab m_ab F_a rho^T F_b^dag over the diagonal
// modular sector (F_a = |a><a| in the pi eigenbasis, transpose in the same
// basis). m must be Hermitian with zero diagonal, which enforces the zero-sum
// constraint on its eigenvalues.
SuperOperator build_fisher_db_extra(const DensityMatrix& pi,
                                    const std::vector<JumpSpec>& jumps,
                                    const Mat& mu_coefficients,
                                    const Mat* hamiltonian = nullptr);

// ------------------------------------------------------------- decomposition

struct SectorTerm {
  double omega = 0;
  double weight = 0;  // lambda (jump terms) or mu (transpose terms)
  Mat op;             // modular eigenoperator
};

struct StructuralDecomposition {
  Mat hamiltonian;
  std::vector<SectorTerm> jump_terms;
  std::vector<SectorTerm> transpose_terms;
  double offsector_residual = 0;     // weight on forbidden matrix elements
  double resynthesis_residual = 0;   // || rebuilt - input ||_F
  double min_jump_rate = 0;
  double mu_sum_residual = 0;        // max_omega |sum_i mu_i^omega|
};

// Requires a Fisher-detailed-balanced generator and a non-degenerate pi.
StructuralDecomposition structural_decompose(const SuperOperator& g,
                                             const DensityMatrix& pi);

// Rebuilds the generator from a decomposition (transpose taken in the pi
// eigenbasis).
SuperOperator synthesize_generator(const StructuralDecomposition& dec,
                                   const DensityMatrix& pi);

// ------------------------------------------------------------- report

struct DBReport {
  AlickiVerdict alicki;
  FisherVerdict fisher;
  double modular_commutator = 0;
  std::optional<StructuralDecomposition> structural;
};

DBReport db_report(const SuperOperator& g, const Mat& hamiltonian,
                   const DensityMatrix& pi, bool decompose = false);

}  // namespace infogeom
