#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grf/linalg.hpp"

namespace grf {

// E: all linear maps. Surj/Inj: epimorphisms/monomorphisms. Gr: pairs (V, W)
// with f(W) = W'. GrTilde: pairs with f(W) contained in W'. BiGr: triples
// (V, B, W) with f(B) = B' and f(W) = W'. Prod: pairs (A, B) of the product of
// E with the surjections, a morphism being a pair (f, g) stored block-diagonally.
enum class SiteKind { E, Surj, Inj, Gr, GrTilde, BiGr, Prod };

const char* kind_name(SiteKind k);
SiteKind kind_from_name(const std::string& s);

// Skeletal object. E/Surj/Inj: n. Gr/GrTilde: (n, b) with base E_b.
// BiGr: (n, b, w, c) with B = E_b and W spanned by e_{b-c}, ..., e_{b-c+w-1}
// (zero-based), so dim(B n W) = c. Prod: (n, b) meaning the pair (E_n, E_b).
struct SiteObject {
    int n = 0, b = 0, w = 0, c = 0;
    bool operator==(const SiteObject& o) const {
        return n == o.n && b == o.b && w == o.w && c == o.c;
    }
    bool operator!=(const SiteObject& o) const { return !(*this == o); }
    bool operator<(const SiteObject& o) const;
};

std::string object_text(SiteKind k, const SiteObject& o);

struct SiteMorphism {
    int src = 0, tgt = 0;
    Matrix m;
};

class Site {
public:
    SiteKind kind = SiteKind::E;
    Field field;
    int nmax = 0;
    std::vector<int> I;  // admissible base dimensions for Gr / Prod
    std::vector<SiteObject> objects;
    std::vector<SiteMorphism> mors;
    std::vector<int> ident;
    std::string id;

    int num_objects() const { return static_cast<int>(objects.size()); }
    int num_morphisms() const { return static_cast<int>(mors.size()); }
    const std::vector<int>& hom(int x, int y) const { return homs_[x * num_objects() + y]; }
    int find_object(const SiteObject& o) const;
    int find(int src, int tgt, const Matrix& m) const;
    // Throws NotComposable when f.tgt != g.src.
    int compose(int g, int f) const;
    // Ambient matrix size of an object (n, or n + b for Prod).
    int ambient(int obj) const;
    std::string object_text(int obj) const { return grf::object_text(kind, objects[obj]); }

    // Only used by the builder.
    void finalize();

private:
    std::vector<std::vector<int>> homs_;
    std::unordered_map<std::string, int> lookup_;
};

using SitePtr = std::shared_ptr<const Site>;

// The standard skeleton of a kind up to nmax (Gr and Prod restricted to base
// dimensions in I; an empty I means every dimension).
std::vector<SiteObject> standard_objects(SiteKind k, int nmax, const std::vector<int>& I = {});

// Full subcategory on the given objects. Sites are cached, so equal arguments
// return the same pointer. Throws TruncationExceeded when an object exceeds nmax.
SitePtr make_site(const Field& F, SiteKind k, int nmax, const std::vector<int>& I,
                  std::vector<SiteObject> objects);
SitePtr standard_site(const Field& F, SiteKind k, int nmax, const std::vector<int>& I = {});

// Full subcategory of s on the objects satisfying pred.
SitePtr subsite(const SitePtr& s, const std::function<bool(const SiteObject&)>& pred);

// True if matrix m satisfies the kind's constraint between the two objects.
bool admissible(const Field& F, SiteKind k, const SiteObject& x, const SiteObject& y,
                const Matrix& m);

// Functors between sites on the level of skeletal objects and matrices.
struct SiteMap {
    std::string name;
    SiteKind from, to;
    std::function<std::optional<SiteObject>(const SiteObject&)> on_object;
    std::function<Matrix(const Matrix&, const SiteObject&, const SiteObject&)> on_morphism;
};

SiteMap map_D();           // Gr -> E, (V, W) -> V
SiteMap map_B();           // Gr -> Surj, (V, W) -> W
SiteMap map_K();           // Gr -> E, (V, W) -> V / W
SiteMap map_L();           // Prod -> Gr, (A, B) -> (B + A, B), B in front
SiteMap map_diag();        // Surj -> Gr, V -> (V, V)
SiteMap map_DB();          // Gr -> Prod, (V, W) -> (V, W)
SiteMap map_KB();          // Gr -> Prod, (V, W) -> (V / W, W)
SiteMap map_gr_to_tilde(); // Gr -> GrTilde, identity on data
SiteMap map_tilde_reduce();// GrTilde -> E, (V, W) -> V / W
SiteMap map_translate(int v);                 // E -> E, V -> V + E_v
SiteMap map_translate_gr(int av, int aw);     // E -> Gr, E -> (A_V + E, A_W)
SiteMap map_inclusion(SiteKind from, SiteKind to);  // same data, smaller hom sets

struct CheckResult {
    bool ok = true;
    long long checked = 0;
    std::string witness;
};

// Asserts that m carries every morphism of src into tgt, preserves identities
// and composition, on all objects of src whose image lies in tgt.
CheckResult check_site_map(const SitePtr& src, const SitePtr& tgt, const SiteMap& m);

// Every hom set is closed under composition and identities are neutral.
CheckResult check_site_axioms(const SitePtr& s);

// In Gr: a morphism never raises the base dimension.
CheckResult check_base_dim_monotone(const SitePtr& s);

// ------------------------------------------------------------------ bijections

struct BijectionReport {
    std::string name;
    long long lhs = 0, rhs = 0;
    long long instances = 0;
    long long naturality_checks = 0;
    bool bijective = true;
    bool natural = true;
    std::string witness;
    bool ok() const { return bijective && natural; }
};

// Epi(A + B, E) -> coproduct over V + W = E of Epi(A, V) x Epi(B, W).
BijectionReport bijection_epi_sum(const Field& F, int a, int b, int e);
// hom_E(A, A') -> coproduct over B' of hom_Gr((A, B), (A', B')).
BijectionReport bijection_hom_gr(const Field& F, int a, int b, int ap);
// hom_Gr((A + A', B + B'), (V, W)) -> coproduct over W1 + W2 = W of products.
BijectionReport bijection_hom_sum_source(const Field& F, SiteObject ab, SiteObject apbp,
                                         SiteObject vw);
// hom((V,W),(A,B)) x hom((V,W),(A',B')) -> coproduct over C in Gr(B, B').
BijectionReport bijection_hom_product_target(const Field& F, SiteObject vw, SiteObject ab,
                                             SiteObject apbp);

// Subspaces of F^b + F^bp mapping onto both factors.
std::vector<Subspace> gr_of_pair(const Field& F, int b, int bp);

// Site adjunction diag -| B: hom_Gr(diag A, (V, W)) = Epi(A, W).
BijectionReport site_adjunction_diag_B(const Field& F, int nmax);
// Site adjunction L -| D x B: hom_Gr(L(A, B), (V, W)) = hom(A, V) x Epi(B, W).
BijectionReport site_adjunction_L_DB(const Field& F, int nmax);

}  // namespace grf
