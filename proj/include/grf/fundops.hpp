#pragma once

#include <functional>
#include <string>
#include <vector>

#include "grf/funcat.hpp"

namespace grf {

// Functors between the categories of functors on E, E_surj, E_inj, E_Gr,
// E_Gr_tilde and E x E_surj. Precomposition functors keep the largest full
// subsite whose objects land in the input's site, so sigma-type entries shrink
// the range; sum-type entries (omega, varpi, ...) keep it.

// ------------------------------------------------------------------ catalog

// (iota F)(V, W) = F(V), (kappa F)(V, W) = F(V / W), on E_Gr with base
// dimensions in I (empty I means all).
FunctorPtr iota(const FunctorPtr& F, const std::vector<int>& I = {});
FunctorPtr kappa(const FunctorPtr& F, const std::vector<int>& I = {});
// (rho A)(V, W) = A(W) for A on E_surj.
FunctorPtr rho(const FunctorPtr& A, const std::vector<int>& I = {});
// (epsilon X)(V) = X(V, V) on E_surj (dimensions in the site's I).
FunctorPtr epsilon(const FunctorPtr& X);
// (xi F)(V, W) = F(V, W), (theta F)(V, W) = F(V / W, W) for F on E x E_surj.
FunctorPtr xi(const FunctorPtr& F);
FunctorPtr theta(const FunctorPtr& F);
// (sigma X)(A, B) = X(B + A, B), defined where a + b <= nmax.
FunctorPtr sigma(const FunctorPtr& X);
// (omega X)(V) = sum over W in Gr(V) with dim W in I of X(V, W). I must be an
// interval; a gap makes the component rule non-functorial (HypothesisViolated).
FunctorPtr omega(const FunctorPtr& X);
// (varpi F)(V) = sum over W of F(W) for F on E_surj.
FunctorPtr varpi(const FunctorPtr& F);
// Restriction of F on E to surjections, resp. injections.
FunctorPtr o_surj(const FunctorPtr& F);
FunctorPtr o_inj(const FunctorPtr& F);
// (varpi_inj X)(V) = sum over W of X(V / W); component W -> W' iff W = f^{-1}(W').
FunctorPtr varpi_inj(const FunctorPtr& X);
// J X on E_Gr_tilde: (J X)(V, B) = sum over W in Gr(B) of X(V, W).
FunctorPtr frak_J(const FunctorPtr& X);
// Restriction from E_Gr_tilde to E_Gr.
FunctorPtr frak_N(const FunctorPtr& Y);
// I X = N J X.
FunctorPtr cal_I(const FunctorPtr& X);
// (cal_J X)(V, B) = sum over W in Gr(B) of X(V / W, B / W); component iff f(W) = W'.
FunctorPtr cal_J(const FunctorPtr& X);
// F(V / B) on E_Gr_tilde.
FunctorPtr kappa_tilde(const FunctorPtr& F);
// On E_Gr_tilde: sum over B of Y(V, B), components for B' = f(B) (omega_tilde)
// or for B = f^{-1}(B') (omega_tilde_prime).
FunctorPtr omega_tilde(const FunctorPtr& Y);
FunctorPtr omega_tilde_prime(const FunctorPtr& Y);
// (F [x] G)(A, B) = F(A) (x) G(B) on E x E_surj, for F on E and G on E_surj.
FunctorPtr boxtimes(const FunctorPtr& F, const FunctorPtr& G);
// eta X = coker m_X on E x E_surj, defined where 2b + a <= nmax.
FunctorPtr eta(const FunctorPtr& X);

// Every catalog entry also acts on natural transformations.
struct Fundamental {
    std::string name;
    std::function<FunctorPtr(const FunctorPtr&)> on_functor;
    std::function<NatTrans(const NatTrans&, const FunctorPtr&, const FunctorPtr&)> on_nat;

    FunctorPtr operator()(const FunctorPtr& F) const { return on_functor(F); }
    NatTrans operator()(const NatTrans& t) const;  // builds source and target
    NatTrans operator()(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt) const {
        return on_nat(t, src, tgt);
    }
};

struct FundamentalFunctorId {
    std::string name;    // iota, kappa, rho, epsilon, xi, theta, sigma, omega, varpi,
                         // o, o_inj, varpi_inj, eta, frak_J, frak_N, cal_I, cal_J,
                         // kappa_tilde, omega_tilde, omega_tilde_prime
    std::vector<int> I;  // used by iota, kappa, rho
};
// Throws ConfigError for an unknown name.
Fundamental fundamental(const FundamentalFunctorId& id);
FunctorPtr apply_fundamental(const FundamentalFunctorId& id, const FunctorPtr& F);
std::vector<std::string> fundamental_names();

// ------------------------------------------------------------------ adjunctions

struct AdjunctionReport {
    std::string name;
    bool unit_natural = true, counit_natural = true;
    bool triangle_left = true, triangle_right = true;
    bool hom_dims_equal = true;
    long long checked = 0;
    std::string witness;
    bool ok() const {
        return unit_natural && counit_natural && triangle_left && triangle_right && hom_dims_equal;
    }
};

// Unit and counit of each adjoint pair L -| R.
NatTrans unit_omega_iota(const FunctorPtr& X);        // X -> iota omega X
NatTrans counit_omega_iota(const FunctorPtr& F);      // omega iota F -> F (augmentation)
NatTrans unit_varpi_o(const FunctorPtr& A);           // A -> o varpi A
NatTrans counit_varpi_o(const FunctorPtr& F);         // varpi o F -> F
NatTrans unit_oinj_varpiinj(const FunctorPtr& F);     // F -> varpi_inj o_inj F
NatTrans counit_oinj_varpiinj(const FunctorPtr& X);   // o_inj varpi_inj X -> X
NatTrans unit_rho_epsilon(const FunctorPtr& A);       // A -> epsilon rho A
NatTrans counit_rho_epsilon(const FunctorPtr& X);     // rho epsilon X -> X
NatTrans unit_xi_sigma(const FunctorPtr& F);          // F -> sigma xi F
NatTrans counit_xi_sigma(const FunctorPtr& X);        // xi sigma X -> X
NatTrans unit_eta_theta(const FunctorPtr& X);         // X -> theta eta X
NatTrans counit_eta_theta(const FunctorPtr& F);       // eta theta F -> F
NatTrans unit_J_N(const FunctorPtr& X);               // X -> N J X
NatTrans counit_J_N(const FunctorPtr& Y);             // J N Y -> Y

// pair: omega_iota, varpi_o, oinj_varpiinj, rho_epsilon, xi_sigma, eta_theta, J_N.
// lefts are objects of the left adjoint's source, rights of the right
// adjoint's source; every hom dimension pair is compared.
AdjunctionReport adjunction_check(const std::string& pair, const std::vector<FunctorPtr>& lefts,
                                  const std::vector<FunctorPtr>& rights);

// ------------------------------------------------------------------ monad on E x E_surj

struct MonadData {
    FunctorPtr F;          // the input
    FunctorPtr T;          // T F (a, b) = F(b + a, b)
    FunctorPtr TT;         // T T F
    NatTrans unit;         // F -> T F
    NatTrans mult;         // T T F -> T F
    NatTrans split;        // p : T F -> F
    SubResult delta;       // Delta_surj F = ker p, as a subfunctor of T F
};
// All values are restricted to the common range of F, T F and T T F.
MonadData monad_build(const FunctorPtr& F);

struct MonadReport {
    bool unit_split = true;   // p after u is the identity
    bool left_unit = true;    // mu after u_T is the identity
    bool right_unit = true;   // mu after T(u) is the identity
    bool assoc = true;        // mu after T(mu) equals mu after mu_T
    bool module = true;       // (F, p) is a module
    long long checked = 0;
    std::string witness;
    bool ok() const { return unit_split && left_unit && right_unit && assoc && module; }
};
MonadReport monad_check(const FunctorPtr& F);

// m~_X : T sigma X -> sigma X and m_X = m~_X restricted to Delta_surj sigma X.
struct ModuleData {
    FunctorPtr sX;        // sigma X on the common range
    FunctorPtr TsX;       // T sigma X
    NatTrans mtilde;
    SubResult delta;      // Delta_surj sigma X
    NatTrans m;           // delta -> sigma X
};
ModuleData module_structure(const FunctorPtr& X);

struct ThetaModuleReport {
    bool m_zero = true;
    bool sequence_exact = true;       // F(A+B, B) -> F(A, B) -> F(A/B, B) -> 0
    bool pi_surjective = true;
    long long checked = 0;
    std::string witness;
    bool ok() const { return m_zero && sequence_exact && pi_surjective; }
};
ThetaModuleReport theta_as_module_check(const FunctorPtr& F);

// Canonical resolution R_n = xi Delta_surj^n sigma X with the twisted face as
// differential and the counit as augmentation.
struct Resolution {
    std::vector<FunctorPtr> terms;    // R_0 .. R_len, each on E_Gr objects in range
    std::vector<NatTrans> diffs;      // diffs[n] : R_{n+1} -> R_n (partial; site of R_{n+1})
    NatTrans augmentation;            // R_0 -> X
    std::vector<int> zero_from;       // per object of R_0: least computed n with R_n zero there, or -1
};
// Terms R_0 .. R_k with k < max_terms, stopping early when the range runs out.
Resolution resolution_terms(const FunctorPtr& X, int max_terms = 4);
struct ResolutionReport {
    bool complex = true;        // d d = 0 and augmentation after d_0 is zero
    bool exact = true;          // exact at every object where the next term is defined
    int length = -1;            // largest n with R_n nonzero somewhere in range
    bool length_bounded = true; // length <= deg X + 1 when the degree is known
    std::optional<int> degree;
    long long checked = 0;
    std::string witness;
    bool ok() const { return complex && exact && length_bounded; }
};
ResolutionReport canonical_resolution(const FunctorPtr& X, int max_terms = 4);

// eta(X (x) Y) = eta X (x) eta Y, compared through the quotient of
// sigma X (x) sigma Y.
IsoReport eta_tensor_check(const FunctorPtr& X, const FunctorPtr& Y);

// ------------------------------------------------------------------ isomorphisms

// omega(P^Gr_(V, W)) = P_V from hom_E(V, A) = coproduct over B of hom_Gr((V,W),(A,B)).
IsoReport iso_check_projective_omega(const SitePtr& gr, SiteObject vw);
// iota(I_V) = sum over W in Gr(V) of I^Gr_(V, W).
IsoReport iso_check_injective_iota(const SitePtr& gr, int v);
// omega(X (x)~ Y) = omega X (x) omega Y from pairs of subspaces with sum W.
IsoReport iso_check_omega_monoidal(const FunctorPtr& X, const FunctorPtr& Y);
// u_X : omega_tilde X -> omega_tilde_prime X, components along inclusions W in B.
IsoReport omega_tilde_iso_check(const FunctorPtr& X);
// varpi_inj o_inj F = omega kappa F: both sides are reindexed forms of
// omega_tilde kappa_tilde F and omega_tilde_prime kappa_tilde F.
struct Prop134Report {
    bool left_identified = true;   // varpi_inj o_inj F equals omega_tilde_prime kappa_tilde F
    bool right_identified = true;  // omega kappa F equals omega_tilde kappa_tilde F
    IsoReport iso;
    std::string witness;
    bool ok() const { return left_identified && right_identified && iso.ok(); }
};
Prop134Report check_varpi_inj_omega_kappa(const FunctorPtr& F);
// omega kappa omega X = omega cal_J X through pairs W in B.
IsoReport iso_check_omega_kappa_omega(const FunctorPtr& X);

// Delta_V omega X = sum over W in Gr(V) of omega(X : I^Gr_(V, W)).
struct DeltaOmegaReport {
    IsoReport iso;                 // explicit block iso onto the formula functors
    bool division_matches = true;  // funcat.division agrees with the formula dims
    long long division_checked = 0;
    int range = 0;
    std::string witness;
    bool ok() const { return iso.ok() && division_matches; }
};
DeltaOmegaReport delta_omega_splitting(const FunctorPtr& X, int v);
// The formula functor (A, B) -> sum over C in Gr(W, B) of X(V + A, C).
FunctorPtr division_by_gr_injective(const FunctorPtr& X, int v, const Subspace& W);

// tau_A X (E) = X(A_V + E, A_W).
FunctorPtr tau(const FunctorPtr& X, SiteObject A);
struct TauReport {
    int lhs = 0, rhs = 0;  // dim Hom(iota F, X)(A), dim hom(F, tau_A X)
    bool ok() const { return lhs == rhs; }
};
TauReport tau_A_check(const FunctorPtr& F, const FunctorPtr& X, SiteObject A);

// Extension 0 -> varpi Y -> varpi Z -> varpi X -> 0 built from Z on E_surj
// with Z(E_n) = N, Z(E_{n+1}) = M, trivial linear group actions and u : M -> N.
struct EssentialReport {
    bool non_split = true;          // no section of varpi Z -> varpi X
    bool coefficient_zero = true;   // Card(W \ B) = q^n (q - 1) vanishes in k
    long long card = 0;
    bool partial = true;            // essentiality itself is not verified
    std::string witness;
    bool ok() const { return non_split && coefficient_zero; }
};
// Throws HypothesisViolated when u is not injective.
EssentialReport essential_extension_probe(const Field& F, int n, const Matrix& u, int nmax);

}  // namespace grf
