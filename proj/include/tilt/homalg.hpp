#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tilt/repmod.hpp"

namespace tilt {

/// Minimal projective resolution ... -> P_1 -> P_0 -> M -> 0, truncated at
/// the first zero syzygy or at the requested bound.
struct ProjResolution {
  Representation module;
  std::vector<Representation> terms;  // P_0 .. P_len
  std::vector<RepMap> diffs;          // diffs[k]: P_{k+1} -> P_k
  RepMap augment;                     // P_0 -> M
  std::vector<std::vector<std::size_t>> multiplicities;  // per term, per vertex
  bool complete = false;  // last syzygy is zero

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
  bool is_exact() const;
  bool is_minimal() const;
};

ProjResolution min_resolution(const Representation& m, std::size_t lmax);

struct ExtResult {
  std::size_t dim = 0;
  std::vector<RepMap> cocycles;  // maps P_k -> N representing a basis
};

/// H^k of Hom(P_.(M), N).
ExtResult ext(const Representation& m, const Representation& n, std::size_t k);
ExtResult ext_from(const ProjResolution& res, const Representation& n, std::size_t k);

/// Max projective dimension over the simples; nullopt = "exceeds bound".
std::optional<std::size_t> global_dimension(const FDAlgebra& alg, std::size_t bound);

/// Ext^k_A(M, A) as a right A^op-module: the coefficient side carries the
/// left regular action, which is strict on cochains (no homotopy lifts).
/// Keeps enough state to push morphisms through (contravariantly).
class CoefExt {
 public:
  CoefExt(const FDAlgebra& alg, const FDAlgebra& opalg, const Representation& m, std::size_t k);

  const Representation& module() const { return module_; }
  const ProjResolution& resolution() const { return res_; }

  /// For g: M' -> M, the induced map Ext^k(M, A) -> Ext^k(M', A).
  static RepMap induced(const CoefExt& ext_m, const CoefExt& ext_mprime, const RepMap& g);

 private:
  friend struct CoefExtDetail;
  struct Impl;
  std::shared_ptr<Impl> impl_;
  Representation module_;
  ProjResolution res_;
};

/// tau_n^-(X) with enough state to act on morphisms.
struct TauInvObject {
  Representation dual_input;  // DX over the opposite algebra
  std::shared_ptr<CoefExt> ext;
  const Representation& module() const { return ext->module(); }
};

/// Cohomology of one application of nu_n^- = RHom(DLambda, -)[n]:
/// h[t] = dim H^t(Hom(P_.(DLambda), X)), t = 0..n. Concentration means
/// everything vanishes except possibly t = n.
struct NuStep {
  std::vector<std::size_t> h;
  bool concentrated = false;
};

struct BoundedCertificate {
  bool pass = false;
  std::size_t depth = 0;
  std::size_t failed_step = 0;  // 1-based step index when pass == false
  std::string reason;
};

/// The nu / tau engine over a fixed algebra with gl.dim <= n (verified at
/// construction). Holds the resolution of DLambda and both algebras.
class NuEngine {
 public:
  NuEngine(const FDAlgebra& alg, const FDAlgebra& opalg, std::size_t n);

  const FDAlgebra& algebra() const { return *alg_; }
  const FDAlgebra& op_algebra() const { return *op_; }
  std::size_t n() const { return n_; }
  std::size_t global_dim() const { return gldim_; }
  const Representation& d_lambda() const { return dlambda_; }
  const ProjResolution& d_lambda_resolution() const { return res_dl_; }

  /// Derived route: cohomology of RHom(DLambda, x).
  NuStep nu_inverse_cohomology(const Representation& x) const;

  /// Module route: tau_n^-(X) = Ext^n_{op}(DX, op-regular).
  TauInvObject tau_inverse_obj(const Representation& x) const;
  Representation tau_inverse(const Representation& x) const;
  RepMap tau_inverse_map(const TauInvObject& tx, const TauInvObject& ty, const RepMap& g) const;

  /// tau_n(M) = D Ext^n(M, Lambda), with its functorial action.
  Representation tau(const Representation& m) const;

  /// Iterates nu_n^- while cohomology stays concentrated; modules are
  /// produced by the independent tau_inverse route.
  struct NuIteration {
    std::vector<NuStep> steps;
    std::vector<Representation> modules;  // X_0 .. X_last while concentrated
    bool ok = true;
    std::size_t failed_step = 0;  // 1-based
  };
  NuIteration nakayama_nu_inverse(const Representation& x, std::size_t steps) const;

  /// Bounded certificate for X in N^- (depth applications of nu_n^-).
  BoundedCertificate in_N_minus(const Representation& x, std::size_t depth) const;

  /// dim Hom_D(X, Y[k]) == dim Hom_D(Y, nu(X)[-k]), both sides computed
  /// independently (Ext vs hypercohomology of the dualized Hom complex).
  bool serre_duality_check(const Representation& x, const Representation& y,
                           std::size_t k) const;
  std::pair<std::size_t, std::size_t> serre_duality_dims(const Representation& x,
                                                         const Representation& y,
                                                         std::size_t k) const;

 private:
  const FDAlgebra* alg_;
  const FDAlgebra* op_;
  std::size_t n_;
  std::size_t gldim_;
  Representation dlambda_;
  ProjResolution res_dl_;
};

/// X in N^+ over Lambda checked as DX in N^- over the opposite algebra;
/// engine_op must be the NuEngine built over the opposite algebra.
BoundedCertificate in_N_plus(const NuEngine& engine_op, const Representation& x,
                             std::size_t depth);

}  // namespace tilt
