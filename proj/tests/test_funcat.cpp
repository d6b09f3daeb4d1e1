#include <set>

#include "doctest.h"
#include "grf/funcat.hpp"

using namespace grf;

namespace {

// Augmentation k[S] -> k sending every basis element to 1.
NatTrans augmentation(const FunctorPtr& F, const FunctorPtr& k) {
    NatTrans t{F, k, {}};
    for (int d : F->dim) {
        Matrix r(1, d);
        for (int j = 0; j < d; ++j) r(0, j) = 1;
        t.comp.push_back(r);
    }
    return t;
}

FunctorPtr reduced_projective(const SitePtr& s, int obj) {
    auto P = std_projective(s, obj);
    return kernel(augmentation(P, constant(s))).obj;
}

std::vector<FunctorPtr> corpus_E(const SitePtr& e) {
    auto id = identity_functor(e);
    return {constant(e), id, kgr(e), std_projective(e, 1), std_injective(e, 1), tensor(id, id)};
}

}  // namespace

TEST_CASE("functoriality checks") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 2);
    CHECK(check_functoriality(*constant(e)).ok);
    auto bad = std::make_shared<Functor>(*std_projective(e, 1));
    bad->act[e->hom(2, 2)[5]](0, 0) ^= 1;
    auto r = check_functoriality(*bad);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.witness.empty());
    auto gr = standard_site(F2, SiteKind::Gr, 3);
    auto P = std_projective(gr, gr->find_object({2, 1}));
    CHECK(check_functoriality(*P).ok);
}

TEST_CASE("standard projectives and Yoneda") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 2);
    auto P0 = std_projective(e, 0);
    CHECK(same_values(*P0, *constant(e)));
    CHECK(std_projective(e, 1)->dim[2] == 4);
    CHECK_THROWS_AS(std_projective(e, 7), Error);
    for (const auto& G : corpus_E(e))
        for (int E = 0; E < e->num_objects(); ++E) {
            auto P = std_projective(e, E);
            auto H = hom_space(P, G);
            CHECK(static_cast<int>(H.size()) == G->dim[E]);
            // every x in G(E) gives a natural map, and evaluation at the identity recovers x
            for (int i = 0; i < G->dim[E]; ++i) {
                std::vector<Elem> x(G->dim[E], 0);
                x[i] = 1;
                auto t = yoneda_map(P, E, G, x);
                CHECK(check_natural(t).ok);
            }
        }
    CHECK(hom_dim(constant(e), constant(e)) == 1);
}

TEST_CASE("standard injectives and co-Yoneda") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 2);
    CHECK(same_values(*std_injective(e, 0), *constant(e)));
    CHECK(std_injective(e, 1)->dim[2] == 4);
    for (const auto& G : corpus_E(e))
        for (int E = 0; E < e->num_objects(); ++E) {
            auto I = std_injective(e, E);
            CHECK(hom_dim(G, I) == G->dim[E]);
        }
}

TEST_CASE("linearization and k[Gr]") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 3);
    std::vector<int> sizes(e->num_objects(), 1);
    std::vector<std::vector<int>> maps(e->num_morphisms(), std::vector<int>{0});
    CHECK(same_values(*linearize(e, sizes, maps, "pt"), *constant(e)));
    auto G = kgr(e);
    CHECK(G->dim[2] == 5);
    CHECK(G->dim[3] == 16);
    CHECK(check_functoriality(*G, 20000).ok);
    // a table that sends the zero map to the basepoint and everything else to nothing
    std::vector<std::vector<int>> bad(e->num_morphisms(), std::vector<int>{-1});
    for (int x = 0; x < e->num_objects(); ++x) bad[e->ident[x]] = {0};
    bad[e->hom(1, 1)[0]] = {0};
    CHECK_THROWS_AS(linearize(e, sizes, bad, "bad"), Error);
}

TEST_CASE("duality") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 2);
    CHECK(same_values(*dual(constant(e)), *constant(e)));
    for (int V = 0; V < e->num_objects(); ++V)
        CHECK(dual(std_projective(e, V))->dim == std_injective(e, V)->dim);
    for (const auto& F : corpus_E(e)) CHECK(same_values(*dual(dual(F)), *F));
    auto su = standard_site(F2, SiteKind::Surj, 3);
    auto DP = dual(std_projective(su, 1));
    CHECK(DP->site->kind == SiteKind::Inj);
    CHECK(check_functoriality(*DP).ok);
    CHECK(same_values(*dual(DP), *std_projective(su, 1)));
    auto gt = standard_site(F2, SiteKind::GrTilde, 2);
    auto X = std_projective(gt, gt->find_object({2, 1}));
    auto DX = dual(X);
    CHECK(check_functoriality(*DX).ok);
    CHECK(same_values(*dual(DX), *X));
    CHECK_THROWS_AS(dual(constant(standard_site(F2, SiteKind::Gr, 2))), Error);
    // exactness: a short exact sequence stays exact
    auto G = kgr(e);
    auto aug = augmentation(G, constant(e));
    auto K = kernel(aug);
    auto DK = dual(K.obj), DG = dual(G);
    for (int x = 0; x < e->num_objects(); ++x) CHECK(DG->dim[x] == DK->dim[x] + 1);
}

TEST_CASE("tensor products") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 2);
    for (const auto& F : corpus_E(e)) CHECK(same_values(*tensor(F, constant(e)), *F));
    auto su = standard_site(F2, SiteKind::Surj, 3);
    auto r = total_tensor_projective_surj(su, 1, 1);
    CHECK_MESSAGE(r.ok(), r.witness);
    CHECK(r.checked > 0);
    auto r2 = total_tensor_projective_surj(su, 2, 1);
    CHECK_MESSAGE(r2.ok(), r2.witness);
    auto gr = standard_site(F2, SiteKind::Gr, 2);
    auto g = total_tensor_projective_gr(gr, {1, 1}, {1, 1});
    CHECK_MESSAGE(g.ok(), g.witness);
    auto g2 = total_tensor_projective_gr(gr, {1, 0}, {1, 1});
    CHECK_MESSAGE(g2.ok(), g2.witness);
    // the canonical monomorphism into the total tensor product
    auto X = std_projective(su, 1), Y = kgr(su);
    auto XY = tensor(X, Y), XtY = total_tensor(X, Y);
    CHECK(check_functoriality(*XtY, 3000).ok);
    auto m = tensor_to_total(X, Y, XY, XtY);
    CHECK(check_natural(m).ok);
    CHECK(kernel(m).obj->is_zero());
    // unit Is_0 and symmetry
    auto U = total_tensor(X, iso_functor(su, 0));
    CHECK(U->dim == X->dim);
    CHECK(total_tensor(X, Y)->dim == total_tensor(Y, X)->dim);
}

TEST_CASE("injective tensor decomposition") {
    Field F2 = Field::make(2, 1);
    auto gr = standard_site(F2, SiteKind::Gr, 2);
    auto z = injective_tensor_check(gr, {1, 0}, {1, 0});
    CHECK_MESSAGE(z.ok(), z.witness);
    auto r = injective_tensor_check(gr, {1, 1}, {1, 1});
    CHECK_MESSAGE(r.ok(), r.witness);
    CHECK(gr_of_pair(F2, 1, 1).size() == 2);
    for (const auto& a : gr->objects)
        for (const auto& b : gr->objects) {
            auto c = injective_tensor_check(gr, a, b);
            CHECK_MESSAGE(c.ok(), c.name, " ", c.witness);
        }
}

TEST_CASE("kernels, cokernels, images") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 3);
    auto G = kgr(e);
    CHECK(kernel(identity_nat(G)).obj->is_zero());
    auto c = cokernel(zero_nat(zero_functor(e), G));
    CHECK(same_values(*c.obj, *G));
    auto K = kernel(augmentation(G, constant(e)));
    CHECK(check_functoriality(*K.obj, 20000).ok);
    CHECK(check_natural(K.map).ok);
    for (int x = 0; x < e->num_objects(); ++x)
        CHECK(K.obj->dim[x] == grassmannian(F2, e->objects[x].n).size() - 1);
    auto im = image(augmentation(G, constant(e)));
    CHECK(same_values(*im.obj, *constant(e)));
}

TEST_CASE("hom of k[Gr] into k is one-dimensional and stable") {
    Field F2 = Field::make(2, 1);
    for (int N : {2, 3}) {
        auto e = standard_site(F2, SiteKind::E, N);
        CHECK(hom_dim(kgr(e), constant(e)) == 1);
    }
    auto e = standard_site(F2, SiteKind::E, 2);
    CHECK_THROWS_AS(hom_space(constant(e), constant(standard_site(F2, SiteKind::E, 1))), Error);
}

TEST_CASE("shift, difference and degree") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 3);
    CHECK(difference(constant(e)).delta->is_zero());
    auto P = std_projective(e, 1);
    auto d = difference(P);
    for (int x = 0; x < d.delta->site->num_objects(); ++x)
        CHECK(d.delta->dim[x] == (1 << d.delta->site->objects[x].n));
    // the splitting Delta_k = id + Delta
    CHECK(equal(compose(d.proj, d.incl), identity_nat(d.proj.tgt)));
    CHECK(check_natural(d.incl).ok);
    for (int x = 0; x < d.delta->site->num_objects(); ++x)
        CHECK(d.shifted->dim[x] == d.delta->dim[x] + d.proj.tgt->dim[x]);
    CHECK(polynomial_degree(constant(e)) == 0);
    auto id = identity_functor(e);
    CHECK(polynomial_degree(id) == 1);
    CHECK(polynomial_degree(tensor(id, id)) == 2);
    CHECK(polynomial_degree(tensor(id, constant(e))) == 1);
    CHECK(polynomial_degree(zero_functor(e)) == -1);
    // the reduced projective is not polynomial: its difference is P_{E_1} again
    CHECK_FALSE(polynomial_degree(reduced_projective(e, 1)).has_value());
    auto su = standard_site(F2, SiteKind::Surj, 3);
    for (int n = 0; n <= 2; ++n) CHECK(polynomial_degree(std_projective(su, n)) == n);
    CHECK_THROWS_AS(shift(constant(standard_site(F2, SiteKind::E, 0)), 1), Error);
    // the difference on Gr of a tensor product
    auto gr = standard_site(F2, SiteKind::Gr, 3);
    auto X = std_projective(gr, gr->find_object({1, 1}));
    auto Y = std_projective(gr, gr->find_object({1, 0}));
    auto dX = difference(X).delta, dY = difference(Y).delta, dXY = difference(tensor(X, Y)).delta;
    auto Xr = restrict_to(X, dX->site), Yr = restrict_to(Y, dX->site);
    for (int x = 0; x < dX->site->num_objects(); ++x)
        CHECK(dXY->dim[x] == dX->dim[x] * Yr->dim[x] + Xr->dim[x] * dY->dim[x] + dX->dim[x] * dY->dim[x]);
}

TEST_CASE("scalar decomposition") {
    Field F2 = Field::make(2, 1);
    auto e2 = standard_site(F2, SiteKind::E, 3);
    auto pieces = scalar_decomposition(std_projective(e2, 1));
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].part.obj->dim == std::vector<int>{1, 1, 1, 1});
    CHECK(pieces[1].part.obj->dim == std::vector<int>{0, 1, 3, 7});
    Field F3 = Field::make(3, 1);
    auto e3 = standard_site(F3, SiteKind::E, 2);
    auto p3 = scalar_decomposition(std_projective(e3, 1));
    REQUIRE(p3.size() == 3);
    for (const auto& p : p3) {
        CHECK(p.part.obj->dim[1] == 1);
        CHECK(equal(compose(p.idempotent, p.idempotent), p.idempotent));
        CHECK(check_natural(p.idempotent).ok);
    }
    auto G = kgr(e3);
    auto pg = scalar_decomposition(G);
    CHECK(pg[0].part.obj->dim == std::vector<int>{1, 1, 1});
    CHECK(pg[1].part.obj->is_zero());
    CHECK(pg[2].part.obj->dim == std::vector<int>{0, 1, 5});
    for (int x = 0; x < e3->num_objects(); ++x) {
        int s = 0;
        for (const auto& p : pg) s += p.part.obj->dim[x];
        CHECK(s == G->dim[x]);
    }
    auto su = standard_site(F3, SiteKind::Surj, 2);
    auto ps = scalar_decomposition(std_projective(su, 1));
    CHECK(ps.size() == 2);
    CHECK(ps.front().weight == 1);
}

TEST_CASE("Frobenius twist") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 2);
    for (const auto& F : corpus_E(e)) CHECK(same_values(*frobenius_twist(F), *F));
    Field F4 = Field::make(2, 2);
    auto e4 = standard_site(F4, SiteKind::E, 1);
    auto P = std_projective(e4, 1);
    auto T = frobenius_twist(P);
    CHECK(T->dim == P->dim);
    CHECK(check_functoriality(*T).ok);
    CHECK_FALSE(same_values(*T, *P));
    CHECK(same_values(*frobenius_twist(T), *P));
    auto id = identity_functor(e4);
    CHECK_FALSE(same_values(*frobenius_twist(id), *id));
}

TEST_CASE("restriction and prolongation by zero") {
    Field F2 = Field::make(2, 1);
    auto gr = standard_site(F2, SiteKind::Gr, 2);
    auto low = subsite(gr, [](const SiteObject& o) { return o.b == 0; });
    auto X = std_projective(low, low->find_object({1, 0}));
    auto P = prolong_zero(X, gr);
    CHECK(check_functoriality(*P).ok);
    CHECK(same_values(*restrict_to(P, low), *X));
    // base-0 fibre of D^* F is F
    auto e = standard_site(F2, SiteKind::E, 2);
    auto F = kgr(e);
    auto iF = precompose(F, gr, map_D(), "iota F");
    auto R = restrict_to(iF, low);
    for (int x = 0; x < low->num_objects(); ++x) {
        CHECK(R->dim[x] == F->dim[low->objects[x].n]);
    }
    // adjunction counts: hom(P X, Y) = hom(X, R Y)
    for (int o = 0; o < low->num_objects(); ++o) {
        auto Xo = std_projective(low, o);
        for (int t = 0; t < gr->num_objects(); ++t) {
            auto Y = std_injective(gr, t);
            CHECK(hom_dim(prolong_zero(Xo, gr), Y) == hom_dim(Xo, restrict_to(Y, low)));
        }
    }
    // a path through the missing base dimension 1 leaves and re-enters
    auto gapped = subsite(gr, [](const SiteObject& o) { return o.b != 1; });
    CHECK_THROWS_AS(prolong_zero(constant(gapped), gr), Error);
}

TEST_CASE("internal hom and division") {
    Field F2 = Field::make(2, 1);
    auto e = standard_site(F2, SiteKind::E, 2);
    auto k = constant(e);
    auto id = identity_functor(e);
    for (const auto& Y : {id, kgr(e)}) {
        auto H = internal_hom(k, Y);
        CHECK(check_functoriality(*H).ok);
        CHECK(H->dim == Y->dim);
        // Hom(P-bar, F) = Delta F on the range where the difference is defined
        auto Hd = internal_hom(reduced_projective(e, 1), Y);
        auto dY = difference(Y).delta;
        for (int x = 0; x < dY->site->num_objects(); ++x) CHECK(Hd->dim[x] == dY->dim[x]);
        auto Dk = division(Y, k);
        CHECK(check_functoriality(*Dk).ok);
        CHECK(Dk->dim == Y->dim);
        auto D1 = division(Y, std_injective(e, 1));
        CHECK(check_functoriality(*D1).ok);
        auto sY = shift(Y, 1);
        for (int x = 0; x < sY->site->num_objects(); ++x) CHECK(D1->dim[x] == sY->dim[x]);
    }
}

TEST_CASE("subfunctor lattices") {
    Field F2 = Field::make(2, 1);
    auto su = standard_site(F2, SiteKind::Surj, 3);
    auto L = subfunctor_lattice(constant(su));
    CHECK(L.elems.size() == 5);
    CHECK(L.is_chain(F2));
    auto e1 = standard_site(F2, SiteKind::E, 1);
    auto Lid = subfunctor_lattice(identity_functor(e1));
    CHECK(Lid.is_chain(F2));
    auto e = standard_site(F2, SiteKind::E, 3);
    auto bar = weight_summand(kgr(e, {0, 1}), 1);
    CHECK(bar->dim == std::vector<int>{0, 1, 3, 7});
    auto Lb = subfunctor_lattice(bar);
    CHECK_FALSE(Lb.has_complement_pair(F2));
    // positive control: a direct sum has a complementary pair
    auto Ls = subfunctor_lattice(direct_sum(constant(su), constant(su)));
    CHECK(Ls.has_complement_pair(F2));
    CHECK_THROWS_AS(subfunctor_lattice(kgr(e)), Error);
}
