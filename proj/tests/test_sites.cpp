#include "doctest.h"
#include "grf/sites.hpp"

using namespace grf;

TEST_CASE("site object counts") {
    Field F2 = Field::make(2, 1);
    auto gr = standard_site(F2, SiteKind::Gr, 2);
    CHECK(gr->num_objects() == 6);
    CHECK(standard_site(F2, SiteKind::Surj, 3)->num_objects() == 4);
    CHECK(standard_site(F2, SiteKind::Gr, 2, {1})->num_objects() == 2);
    CHECK_THROWS_AS(make_site(F2, SiteKind::E, 2, {}, {{3}}), Error);
}

TEST_CASE("hom set sizes") {
    Field F2 = Field::make(2, 1);
    auto gr = standard_site(F2, SiteKind::Gr, 2);
    int e11 = gr->find_object({1, 1}), e21 = gr->find_object({2, 1});
    CHECK(gr->hom(e11, e21).size() == 1);
    CHECK(gr->hom(e21, e21).size() == 4);
    auto e = standard_site(F2, SiteKind::E, 2);
    CHECK(e->hom(2, 2).size() == 16);
    // Gr hom sets agree with a brute-force filter of all matrices
    for (const auto& x : gr->objects)
        for (const auto& y : gr->objects) {
            size_t cnt = 0;
            for (const auto& m : enum_maps(F2, x.n, y.n, MapKind::All, 2))
                if (admissible(F2, SiteKind::Gr, x, y, m)) ++cnt;
            CHECK(gr->hom(gr->find_object(x), gr->find_object(y)).size() == cnt);
        }
}

TEST_CASE("composition closure, identities and associativity") {
    Field F2 = Field::make(2, 1);
    for (SiteKind k : {SiteKind::E, SiteKind::Surj, SiteKind::Inj, SiteKind::Gr, SiteKind::GrTilde,
                       SiteKind::BiGr}) {
        auto s = standard_site(F2, k, k == SiteKind::GrTilde || k == SiteKind::BiGr ? 2 : 3);
        auto r = check_site_axioms(s);
        CHECK_MESSAGE(r.ok, kind_name(k), " ", r.witness);
    }
    auto s = standard_site(F2, SiteKind::E, 2);
    // associativity on a fixed triple
    int f = s->hom(1, 2)[3], g = s->hom(2, 2)[9], h = s->hom(2, 1)[2];
    CHECK(s->compose(h, s->compose(g, f)) == s->compose(s->compose(h, g), f));
    CHECK(s->compose(s->ident[2], f) == f);
    CHECK_THROWS_AS(s->compose(f, f), Error);
}

TEST_CASE("site functors") {
    Field F2 = Field::make(2, 1);
    auto gr = standard_site(F2, SiteKind::Gr, 3);
    auto e = standard_site(F2, SiteKind::E, 3);
    auto su = standard_site(F2, SiteKind::Surj, 3);
    auto gt = standard_site(F2, SiteKind::GrTilde, 2);
    CHECK(check_site_map(gr, e, map_D()).ok);
    CHECK(check_site_map(gr, e, map_K()).ok);
    CHECK(check_site_map(gr, su, map_B()).ok);
    CHECK(check_site_map(su, gr, map_diag()).ok);
    CHECK(check_site_map(standard_site(F2, SiteKind::Gr, 2), gt, map_gr_to_tilde()).ok);
    CHECK(check_site_map(gt, standard_site(F2, SiteKind::E, 2), map_tilde_reduce()).ok);
    CHECK(check_site_map(standard_site(F2, SiteKind::E, 2), e, map_translate(1)).ok);
    auto pr = make_site(F2, SiteKind::Prod, 3, {}, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}});
    CHECK(check_site_map(pr, gr, map_L()).ok);
    auto pr3 = standard_site(F2, SiteKind::Prod, 3);
    CHECK(check_site_map(gr, pr3, map_DB()).ok);
    CHECK(check_site_map(gr, pr3, map_KB()).ok);
    // K(V, 0) = V
    CHECK(map_K().on_object({2, 0})->n == 2);
    // (K x B) o L is the identity on objects and morphisms
    auto L = map_L(), KB = map_KB();
    for (const auto& m : pr->mors) {
        const auto& x = pr->objects[m.src];
        const auto& y = pr->objects[m.tgt];
        auto lx = *L.on_object(x), ly = *L.on_object(y);
        CHECK(*KB.on_object(lx) == x);
        CHECK(KB.on_morphism(L.on_morphism(m.m, x, y), lx, ly) == m.m);
    }
    // negative control: a map that forgets the base constraint
    SiteMap bad = map_D();
    bad.name = "bad";
    bad.from = SiteKind::Gr;
    bad.to = SiteKind::Gr;
    bad.on_object = [](const SiteObject& o) -> std::optional<SiteObject> { return SiteObject{o.n, o.n}; };
    CHECK_FALSE(check_site_map(gr, gr, bad).ok);
}

TEST_CASE("base dimension never increases") {
    Field F2 = Field::make(2, 1);
    CHECK(check_base_dim_monotone(standard_site(F2, SiteKind::Gr, 3)).ok);
}

TEST_CASE("bijection examples") {
    Field F2 = Field::make(2, 1);
    auto r1 = bijection_epi_sum(F2, 1, 1, 2);
    CHECK(r1.ok());
    CHECK(r1.lhs == 6);
    auto r0 = bijection_epi_sum(F2, 1, 1, 0);
    CHECK(r0.lhs == 1);
    CHECK(r0.rhs == 1);
    auto r2 = bijection_epi_sum(F2, 2, 0, 1);
    CHECK(r2.lhs == 3);
    CHECK(r2.ok());
    auto h = bijection_hom_gr(F2, 2, 1, 2);
    CHECK(h.ok());
    CHECK(h.lhs == 16);
    CHECK(bijection_hom_gr(F2, 1, 1, 1).lhs == 2);
    auto s = bijection_hom_sum_source(F2, {1, 1}, {1, 1}, {2, 2});
    CHECK(s.ok());
    CHECK(s.lhs == 6);
    auto z = bijection_hom_sum_source(F2, {0, 0}, {0, 0}, {0, 0});
    CHECK(z.lhs == 1);
    auto p = bijection_hom_product_target(F2, {1, 1}, {1, 1}, {1, 1});
    CHECK(p.ok());
    CHECK(p.lhs == 1);
    CHECK(gr_of_pair(F2, 1, 1).size() == 2);
    CHECK(gr_of_pair(F2, 0, 0).size() == 1);
}

TEST_CASE("site adjunctions") {
    Field F2 = Field::make(2, 1);
    CHECK(site_adjunction_diag_B(F2, 2).ok());
    CHECK(site_adjunction_L_DB(F2, 2).ok());
}
