#pragma once

#include <string>
#include <utility>
#include <vector>

#include "grf/funcat.hpp"
#include "grf/report.hpp"

namespace grf {

// k[Gr] on E up to nmax together with its reduced quotient k[Gr]/k[0]. The
// basis of k[Gr](E_n) is the Grassmannian of E_n in its cached order, so [0]
// comes first; the reduced functor drops it.
struct GrAlgebra {
    Field field;
    int nmax = 0;
    SitePtr site;
    FunctorPtr kgr;
    FunctorPtr reduced;
    FunctorPtr unit;  // the constant functor k

    int obj(int n) const;
};

GrAlgebra gr_algebra(const Field& F, int nmax);

// ------------------------------------------------------------------ Boole bialgebra

// [W] -> [W] (x) [W] and [W] -> 1.
NatTrans coproduct(const GrAlgebra& A);
NatTrans counit(const GrAlgebra& A);
// [W1] (x) [W2] -> [W1 + W2] and 1 -> [0].
NatTrans hopf_product(const GrAlgebra& A);
NatTrans hopf_unit(const GrAlgebra& A);

// Coassociativity, cocommutativity and counit laws on every generator, plus
// naturality of both maps.
SuiteReport coalgebra_check(const GrAlgebra& A);
// Associativity, commutativity, unit, the bialgebra laws and naturality. The
// antipode equation is solved per level and its solvability is a finding:
// [W] is an idempotent group-like element, so no antipode exists once n >= 1.
SuiteReport bialgebra_check(const GrAlgebra& A);

// ------------------------------------------------------------------ self-duality

// b([W], [H]) = 1 when H lies in the annihilator of W, with E_n^* identified
// with E_n by the dual basis. B[n](W, H) in Grassmannian order.
struct DualityForm {
    std::vector<Matrix> B;
    NatTrans map;  // k[Gr] -> D k[Gr]
};
DualityForm duality_form(const GrAlgebra& A);
// Invertibility and symmetry of every B_n, naturality of the induced map.
SuiteReport duality_check(const GrAlgebra& A);

// ------------------------------------------------------------------ invariants

// s_i^n = sum of [B] over dim B = i, with the GL_n-invariant subspace of
// k[Gr](E_n) solved from g x = x over generators of GL_n.
struct InvariantBasis {
    int n = 0;
    std::vector<std::vector<Elem>> s;
    int invariant_dim = 0;
    bool spans = false;
};
// Throws TruncationExceeded when n > nmax.
InvariantBasis invariants_basis(const GrAlgebra& A, int n);
// Matrix of the projection E_{n+1} -> E_n (first coordinates) in the bases
// s^{n+1} and s^n, column i holding the image of s_i^{n+1}.
Matrix invariant_transition(const GrAlgebra& A, int n);
// Invariant spans, transitions s_i -> s_{i-1} and s_0 -> s_0, and class
// sizes q^i in the cancellation argument.
SuiteReport invariants_check(const GrAlgebra& A);

// ------------------------------------------------------------------ endomorphisms

// t_0..t_nmax. Entry n is the [0]-coefficient of u([E_n]).
using EndoCoeffSeq = std::vector<Elem>;

// Coefficient of s_i(W), 1 <= i <= m = dim W, in the image of [W]. With
// Difference it is t_{m-i} - t_{m-i+1}, which is what the inverse limit along
// the projections forces. Displayed uses t_{m-i} + t_{m-i+1}; the two agree in
// characteristic 2 and only Difference is natural otherwise.
enum class CoefficientSign { Difference, Displayed };

// [W] -> t_m [0] + sum_i c_i s_i(W), s_i(W) the sum of the dim-i subspaces of W.
NatTrans endo_from_sequence(const GrAlgebra& A, const EndoCoeffSeq& t,
                            CoefficientSign sign = CoefficientSign::Difference);
// Throws NotNatural when u is not an endomorphism of k[Gr].
EndoCoeffSeq sequence_from_endo(const GrAlgebra& A, const NatTrans& u);

// The reduced algebra sits in A_Gr as the endomorphisms killing [0] and landing
// in the kernel of the counit. lift uses [W] -> [W] - [0] as the section.
NatTrans lift_reduced(const GrAlgebra& A, const NatTrans& ubar);
NatTrans reduce(const GrAlgebra& A, const NatTrans& u);
// Entries 1..nmax of the lifted sequence; entry 0 is always 0 and is dropped.
// No naturality sweep: ubar is trusted to be an endomorphism.
std::vector<Elem> reduced_sequence(const GrAlgebra& A, const NatTrans& ubar);
NatTrans reduced_endo_from_sequence(const GrAlgebra& A, const std::vector<Elem>& f);

// [W] -> sum of [B] over the hyperplanes B of W, on the reduced functor.
NatTrans tau(const GrAlgebra& A);

// Dimension of End(k[Gr]) at truncation, round trips on a basis of it and on
// every delta sequence, and the verdict on the Displayed coefficients.
SuiteReport endo_check(const GrAlgebra& A);

// ------------------------------------------------------------------ products on sequences

// (f * g)(n) = sum_{i+j=n} f(i) g(j) + sum_{i+j=n+1, i,j>0} f(i) g(j).
EndoCoeffSeq star_formula(const Field& F, const EndoCoeffSeq& f, const EndoCoeffSeq& g);
// Sequence of endo(g) o endo(f), read back from the composed matrices.
EndoCoeffSeq star_composed(const GrAlgebra& A, const EndoCoeffSeq& f, const EndoCoeffSeq& g);

struct StarEntry {
    int a = 0, b = 0;  // delta_a * delta_b
    EndoCoeffSeq composed, composed_reversed, formula;
    bool matches() const { return composed == formula; }
};
struct StarTable {
    std::vector<StarEntry> entries;
    bool formula_holds = true;
};
StarTable star_table(const GrAlgebra& A);
// The composition oracle must be internally consistent (round trips,
// commutativity, associativity on delta triples). Agreement with the formula
// is required in characteristic 2 and recorded otherwise.
SuiteReport product_formula_check(const GrAlgebra& A);

// Reduced sequence of tau^k, k = 0..nmax-1.
std::vector<std::vector<Elem>> tau_powers(const GrAlgebra& A);
// tau^k against the indicator of n >= k+1: asserted in characteristic 2,
// recorded with a verdict otherwise.
SuiteReport tau_power_check(const GrAlgebra& A);

// u . v = product o (u (x) v) o coproduct.
NatTrans boole_product(const GrAlgebra& A, const NatTrans& u, const NatTrans& v);
// s_i^n . s_j^n for all i, j <= n <= nmax, as coordinates in the s^n basis.
std::vector<std::vector<std::vector<std::vector<Elem>>>> boole_table(const GrAlgebra& A);
SuiteReport boole_product_check(const GrAlgebra& A);

// u* with b(u x, y) = b(x, u* y), levelwise B^{-1} u^T B.
NatTrans involution(const GrAlgebra& A, const NatTrans& u);
SuiteReport involution_check(const GrAlgebra& A);

// ------------------------------------------------------------------ hom out of k[Gr]

struct HomFromGr {
    int hom_dim = 0;      // hom(k[Gr], F) at truncation
    int limit_dim = 0;    // lim F(E_n)^{GL_n} over n <= nmax
    int hom_dim_prev = 0, limit_dim_prev = 0;  // the same one level lower
    bool agree() const { return hom_dim == limit_dim && hom_dim_prev == limit_dim_prev; }
    bool stable() const { return hom_dim == hom_dim_prev; }
};
// F must live on A.site.
HomFromGr hom_from_gr(const GrAlgebra& A, const FunctorPtr& F);

// ------------------------------------------------------------------ filtration and splitting

// The chain k[Gr_{<=0}] in k[Gr_{<=1}] in ... with quotients k[Gr_m], and the
// iso k[Gr_1] = P_{k,q-1} onto the image of -sum_l [l v] - [0] in P_{E_1}.
SuiteReport filtration_check(const GrAlgebra& A);
// [W] -> [0] and its complement are natural orthogonal idempotents summing to
// the identity, and the complement's image is the reduced functor.
SuiteReport augmentation_check(const GrAlgebra& A);

// Every check above, in a fixed order.
std::vector<SuiteReport> grcoalg_suite(const GrAlgebra& A);

}  // namespace grf
