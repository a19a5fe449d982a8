#pragma once

#include "tilt/homalg.hpp"

namespace tilt {

struct AprCertificate {
  bool pass = false;
  std::vector<std::size_t> ext_dims;  // dim Ext^i(D(Lambda), S) for 0 <= i < n
  std::string reason;
};

/// S = P_vertex must be simple projective with Ext^i(D(Lambda), S) = 0 for
/// all 0 <= i < n.
AprCertificate apr_admissible(const NuEngine& eng, std::size_t vertex);

/// The m-APR tilt at a simple projective S: the exact sequence
/// 0 -> S -> P_1 -> ... -> P_n -> tau_n^-(S) -> 0 with each P_i in add Q,
/// its images K_0 = S, ..., K_n = tau_n^-(S), and T = Q (+) K_m.
struct AprContext {
  std::size_t vertex = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  Representation s;
  Representation tau_inv_s;
  ProjResolution res;                  // minimal resolution of tau_n^-(S)
  std::vector<Representation> syzygy;  // K_0 .. K_n
  std::vector<Representation> t_parts; // per vertex w: P_w, except K_m at `vertex`
  Representation t;
};

AprContext build_apr(const NuEngine& eng, std::size_t vertex, std::size_t m);

struct TiltingReport {
  bool t1 = false, t2 = false, t3 = false;
  bool pass = false;
  std::size_t proj_dim = 0;
  std::string first_failure;
  std::vector<std::string> coresolution;  // dim vectors of the add-T terms
};

/// (T1) pd T = m, (T2) Ext^i(T,T) = 0 for 1 <= i <= gldim, (T3) an add-T
/// coresolution of Lambda built from universal left approximations.
TiltingReport verify_tilting(const Representation& t, std::size_t m, std::size_t gldim);

/// Quiver-with-relations presentation of End(T_1 (+) ... (+) T_r) for
/// pairwise nonisomorphic indecomposable parts; vertex i of the quiver is
/// part i, and an arrow i -> j is a rad/rad^2 class of Hom(T_j, T_i),
/// matching Lambda = End(Lambda) under Hom(P_j, P_i) = e_i Lambda e_j.
/// Relations are extracted degreewise and the result is certified by
/// dim(presented algebra) == dim End; throws Error when the certificate
/// fails (no silent wrong answers).
struct EndoPresentation {
  Presentation pres;
  FDAlgebra algebra;
  std::size_t end_dim = 0;  // dim End of the direct sum
  Representation sum;       // the direct sum of the parts
  std::vector<RepMap> idempotents;  // per part, as endomorphisms of sum
  std::vector<RepMap> arrow_maps;   // per quiver arrow, endomorphisms of sum
};

EndoPresentation endomorphism_presentation(const std::vector<const Representation*>& parts);

struct NriReport {
  bool gldim_ok = false;
  std::size_t gldim = 0;
  bool nminus_ok = false;
  BoundedCertificate cert;
  std::vector<std::size_t> hat_dims;  // dim Lambda-hat_i, i <= depth, when pass
  bool pass = false;
};

/// Theorem check: gl.dim(Gamma) <= n and Gamma in N^- to the given depth.
NriReport theorem_check_nri(const FDAlgebra& gamma, const FDAlgebra& gamma_op, std::size_t n,
                            std::size_t depth);

}  // namespace tilt
