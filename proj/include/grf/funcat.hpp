#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grf/sites.hpp"

namespace grf {

// A presentation by standard projectives. Generator i is the element gen_vec[i]
// of F(gen_obj[i]); relation j is an element of (sum_i P_{gen_obj[i]})(rel_obj[j]),
// written in the basis of hom sets in site order.
struct Presentation {
    std::vector<int> gen_obj;
    std::vector<std::vector<Elem>> gen_vec;
    std::vector<int> rel_obj;
    std::vector<std::vector<Elem>> rel_vec;
    // True when the relations were shown to generate the whole kernel in range.
    bool relations_complete = false;
};

// A functor on a finite site: one vector space per object, one matrix per
// morphism. The site's object list is the range on which values are faithful.
struct Functor {
    SitePtr site;
    std::vector<int> dim;
    std::vector<Matrix> act;
    std::string name;
    std::shared_ptr<const Presentation> presentation;

    const Field& field() const { return site->field; }
    int valid_range() const;
    long long total_dim() const;
    bool is_zero() const;
};

using FunctorPtr = std::shared_ptr<const Functor>;

struct NatTrans {
    FunctorPtr src, tgt;
    std::vector<Matrix> comp;
};

// ------------------------------------------------------------------ checks

CheckResult check_functoriality(const Functor& F, long long max_pairs = -1);
CheckResult check_natural(const NatTrans& t);
bool is_iso(const NatTrans& t);
bool same_values(const Functor& A, const Functor& B);

// ------------------------------------------------------------------ basic functors

FunctorPtr constant(const SitePtr& s, const std::string& name = "k");
FunctorPtr zero_functor(const SitePtr& s);
// P_E = k[hom(E, -)], basis of P_E(X) = hom(E, X) in site order.
FunctorPtr std_projective(const SitePtr& s, int obj);
// I_E = k^{hom(-, E)}, basis of I_E(X) = delta functions on hom(X, E).
FunctorPtr std_injective(const SitePtr& s, int obj);
// Free functor on a set-valued functor given by set sizes and maps per morphism.
FunctorPtr linearize(const SitePtr& s, const std::vector<int>& sizes,
                     const std::vector<std::vector<int>>& maps, const std::string& name);
// k[Gr] on E, E_surj or E_inj; only subspaces with dimension in dims are kept
// (empty means all), and [W] goes to [f(W)] or to 0 when dim f(W) is not kept.
FunctorPtr kgr(const SitePtr& s, const std::vector<int>& dims = {});
// The identity functor V -> V on E-type sites.
FunctorPtr identity_functor(const SitePtr& s);
// Iso-functor Is_n = k[Iso(E_n, -)] on E_surj or E_inj.
FunctorPtr iso_functor(const SitePtr& s, int n);

// Standard projective and injective at a non-coordinate object (V, W) of a Gr
// site, with morphism-labelled bases (hom sets filtered from all matrices).
FunctorPtr projective_at(const SitePtr& s, int n, const Subspace& W);
FunctorPtr injective_at(const SitePtr& s, int n, const Subspace& W);

FunctorPtr tensor(const FunctorPtr& A, const FunctorPtr& B);
FunctorPtr direct_sum(const FunctorPtr& A, const FunctorPtr& B);
FunctorPtr direct_sum(const std::vector<FunctorPtr>& fs);

// Total tensor product on E_surj (sum over V + W = A) and on E_Gr (sum over
// A + B = W). Summands are ordered by the pair of Grassmannian indices.
FunctorPtr total_tensor(const FunctorPtr& X, const FunctorPtr& Y);

// ------------------------------------------------------------------ frames on Gr sites

// Index of the skeletal object (n, dim W) of a Gr-type site, or of E_{dim W}
// on E-type sites.
int object_at(const Site& s, int n, const Subspace& W);
// Skeletal morphism fr_{W'}^{-1} f fr_W for f : (V, W) -> (V', W').
int morphism_at(const Site& s, const Matrix& f, const Subspace& W, const Subspace& Wp);
// Skeletal epimorphism E_{dim V} -> E_{dim f(V)} induced by f on E_surj.
int restricted_epi(const Site& s, const Matrix& f, const Subspace& V);

// ------------------------------------------------------------------ natural transformations

NatTrans identity_nat(const FunctorPtr& F);
NatTrans zero_nat(const FunctorPtr& A, const FunctorPtr& B);
NatTrans compose(const NatTrans& g, const NatTrans& f);
NatTrans add(const NatTrans& a, const NatTrans& b);
NatTrans scale(Elem c, const NatTrans& a);
NatTrans tensor(const NatTrans& a, const NatTrans& b, const FunctorPtr& src, const FunctorPtr& tgt);
bool equal(const NatTrans& a, const NatTrans& b);
NatTrans sum_inclusion(const std::vector<FunctorPtr>& fs, const FunctorPtr& sum, int i);
NatTrans sum_projection(const std::vector<FunctorPtr>& fs, const FunctorPtr& sum, int i);

// The canonical monomorphism X (x) Y -> X (x)~ Y (diagonal summand).
NatTrans tensor_to_total(const FunctorPtr& X, const FunctorPtr& Y, const FunctorPtr& XY,
                         const FunctorPtr& XtY);

// Result of comparing two functors through an explicit candidate isomorphism.
struct IsoReport {
    std::string name;
    bool dims_equal = true;
    bool natural = true;
    bool invertible = true;
    long long checked = 0;
    std::string witness;
    NatTrans iso;
    bool ok() const { return dims_equal && natural && invertible; }
};
IsoReport check_iso(const std::string& name, const NatTrans& t);

// P^surj_{E_a} (x)~ P^surj_{E_b} = P^surj_{E_{a+b}}, iso from the epi-sum bijection.
IsoReport total_tensor_projective_surj(const SitePtr& surj, int a, int b);
// P_{(A,B)} (x)~ P_{(A',B')} = P_{(A+A', B+B')} on a Gr site.
IsoReport total_tensor_projective_gr(const SitePtr& gr, SiteObject ab, SiteObject apbp);
// I_{(A,B)} (x) I_{(A',B')} = sum over C in Gr(B, B') of I_{(A+A', C)}.
IsoReport injective_tensor_check(const SitePtr& gr, SiteObject ab, SiteObject apbp);

struct SubResult {
    FunctorPtr obj;
    NatTrans map;  // inclusion into the target for ker/image, projection for coker
};
SubResult kernel(const NatTrans& t);
SubResult cokernel(const NatTrans& t);
SubResult image(const NatTrans& t);
// Subfunctor given by a stable subspace family (rows span each subspace).
SubResult subfunctor(const FunctorPtr& F, const std::vector<Matrix>& rows);
SubResult quotient_functor(const FunctorPtr& F, const std::vector<Matrix>& rows);

// ------------------------------------------------------------------ change of site

// Full restriction to a subsite (objects must exist in F's site).
FunctorPtr restrict_to(const FunctorPtr& F, const SitePtr& sub);
NatTrans restrict_to(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt);
// F o m on the largest full subsite of dom whose objects land in F's site.
FunctorPtr precompose(const FunctorPtr& F, const SitePtr& dom, const SiteMap& m,
                      const std::string& name);
NatTrans precompose(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt,
                    const SiteMap& m);
// Restrict both to the common objects (by skeletal object equality).
std::pair<FunctorPtr, FunctorPtr> common_range(const FunctorPtr& A, const FunctorPtr& B);
SitePtr common_site(const SitePtr& a, const SitePtr& b);

// Zero extension from a full subsite to a larger site.
FunctorPtr prolong_zero(const FunctorPtr& F, const SitePtr& big);
// Throws SubcategoryNotComplete when a morphism path leaves sub and re-enters it.
void assert_path_closed(const SitePtr& big, const SitePtr& sub);

// ------------------------------------------------------------------ duality, shifts

// DF(V) = F(V*)^*: E to E, E_surj to E_inj and back, E_Gr_tilde to itself via
// (V, W) -> (V*, W^perp) with coordinates reversed.
FunctorPtr dual(const FunctorPtr& F);
NatTrans dual(const NatTrans& t, const FunctorPtr& dsrc, const FunctorPtr& dtgt);
// Delta_V F = F(- + E_v) on E-type sites, (A, B) -> (A + E_v, B) on Gr sites.
FunctorPtr shift(const FunctorPtr& F, int v);
NatTrans shift(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt, int v);
struct Difference {
    FunctorPtr delta;       // kernel of Delta_1 F -> F
    FunctorPtr shifted;     // Delta_1 F
    NatTrans incl;          // F -> Delta_1 F, induced by V -> V + k
    NatTrans proj;          // Delta_1 F -> F, induced by V + k -> V
    NatTrans delta_incl;    // delta -> Delta_1 F
};
Difference difference(const FunctorPtr& F);
// Least n with Delta^{n+1} F = 0 in range (the shift delta on E_surj and
// E_inj), or nullopt when the range runs out first. The zero functor gives -1.
std::optional<int> polynomial_degree(const FunctorPtr& F);

// Scalar decomposition on E: weight 0 is F(0), weights 1..q-1 split the
// reduced part by the action of scalars. On E_surj weights run 1..q-1.
struct ScalarPiece {
    int weight;
    SubResult part;
    NatTrans idempotent;
};
std::vector<ScalarPiece> scalar_decomposition(const FunctorPtr& F);
FunctorPtr weight_summand(const FunctorPtr& F, int weight);

// Precomposition with the Frobenius automorphism of the site.
FunctorPtr frobenius_twist(const FunctorPtr& F);

// ------------------------------------------------------------------ hom spaces

struct HomOptions {
    bool verify = true;
};
std::vector<NatTrans> hom_space(const FunctorPtr& F, const FunctorPtr& G, HomOptions o = {});
int hom_dim(const FunctorPtr& F, const FunctorPtr& G);
// Element of hom(P_E, G) determined by x in G(E): t_X(h) = G(h) x.
NatTrans yoneda_map(const FunctorPtr& P, int obj, const FunctorPtr& G, const std::vector<Elem>& x);

// Hom(X, Y)(E) = hom(P_E (x) X, Y), on objects of the site.
FunctorPtr internal_hom(const FunctorPtr& X, const FunctorPtr& Y);
// (X : A)(E) = hom(X, A (x) I_E)^*.
FunctorPtr division(const FunctorPtr& X, const FunctorPtr& A);

// ------------------------------------------------------------------ subfunctors

struct Lattice {
    std::vector<std::vector<Subspace>> elems;  // per element, one subspace per object
    std::vector<long long> total_dims;
    bool is_chain(const Field& F) const;
    bool has_complement_pair(const Field& F) const;
};
// Throws BudgetExceeded when the total dimension exceeds the budget.
Lattice subfunctor_lattice(const FunctorPtr& F, int budget = 14);

// Matrix of a linear map expressed blockwise; helper for constructions.
struct BlockLayout {
    std::vector<int> offset;
    int total = 0;
    explicit BlockLayout(const std::vector<int>& dims);
};

}  // namespace grf
