#include <functional>
#include <tuple>
#include <set>

#include "doctest.h"
#include "grf/linalg.hpp"

using namespace grf;

namespace {

// Brute-force oracle: vectors of F_q^n as integers in base q, subspaces as
// sorted sets of such integers obtained by closing under linear combinations.
struct VecOracle {
    const Field& F;
    int n;
    int count() const {
        int c = 1;
        for (int i = 0; i < n; ++i) c *= F.q();
        return c;
    }
    std::vector<Elem> dec(int v) const {
        std::vector<Elem> x(n);
        for (int i = n - 1; i >= 0; --i) x[i] = static_cast<Elem>(v % F.q()), v /= F.q();
        return x;
    }
    int enc(const std::vector<Elem>& x) const {
        int v = 0;
        for (int i = 0; i < n; ++i) v = v * F.q() + x[i];
        return v;
    }
    std::set<int> closure(const std::vector<int>& gens) const {
        std::set<int> s{0};
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> cur(s.begin(), s.end());
            for (int u : cur)
                for (int g : gens)
                    for (int c = 1; c < F.q(); ++c) {
                        auto a = dec(u), b = dec(g);
                        for (int i = 0; i < n; ++i) a[i] = F.add(a[i], F.mul(static_cast<Elem>(c), b[i]));
                        if (s.insert(enc(a)).second) grew = true;
                    }
        }
        return s;
    }
    std::set<std::set<int>> subspaces(int m) const {
        std::set<std::set<int>> out;
        int target = 1;
        for (int i = 0; i < m; ++i) target *= F.q();
        std::vector<int> gens(m, 0);
        std::function<void(int)> rec = [&](int k) {
            if (k == m) {
                auto s = closure(gens);
                if (static_cast<int>(s.size()) == target) out.insert(s);
                return;
            }
            for (int v = 1; v < count(); ++v) {
                gens[k] = v;
                rec(k + 1);
            }
        };
        rec(0);
        return out;
    }
    std::set<int> elements(const Subspace& W) const {
        std::vector<int> g;
        for (int i = 0; i < W.dim(); ++i)
            g.push_back(enc(std::vector<Elem>(W.basis.row(i), W.basis.row(i) + n)));
        return closure(g);
    }
};

}  // namespace

TEST_CASE("rref examples") {
    Field F2 = Field::make(2, 1);
    auto R = rref(F2, Matrix::identity(3));
    CHECK(R.rank == 3);
    CHECK(R.pivots == std::vector<int>{0, 1, 2});
    CHECK(R.m == Matrix::identity(3));
    auto Z = rref(F2, Matrix::zero(2, 2));
    CHECK(Z.rank == 0);
    CHECK(Z.pivots.empty());
    auto O = rref(F2, Matrix(2, 2, {1, 1, 1, 1}));
    CHECK(O.rank == 1);
    CHECK(O.m == Matrix(2, 2, {1, 1, 0, 0}));
}

TEST_CASE("subspace_from_vectors") {
    Field F2 = Field::make(2, 1);
    auto P = subspace_from_vectors(F2, {{1, 0, 0}, {1, 1, 0}}, 3);
    CHECK(P.basis == Matrix(2, 3, {1, 0, 0, 0, 1, 0}));
    CHECK(subspace_from_vectors(F2, {}, 3).dim() == 0);
    auto L = subspace_from_vectors(F2, {{0, 1, 1}, {0, 1, 1}}, 3);
    CHECK(L.dim() == 1);
    CHECK_THROWS_AS(subspace_from_vectors(F2, {{1, 0}}, 3), Error);
}

TEST_CASE("sum and intersection satisfy the modular law on F_2^3") {
    Field F2 = Field::make(2, 1);
    const auto& G = grassmannian(F2, 3);
    VecOracle O{F2, 3};
    for (const auto& A : G.subs) {
        CHECK(sum(F2, A, A) == A);
        for (const auto& B : G.subs) {
            auto S = sum(F2, A, B), I = intersect(F2, A, B);
            CHECK(I.dim() == A.dim() + B.dim() - S.dim());
            // oracle intersection by element sets
            auto ea = O.elements(A), eb = O.elements(B);
            std::set<int> both;
            for (int x : ea)
                if (eb.count(x)) both.insert(x);
            CHECK(O.elements(I) == both);
            CHECK(contains(F2, A, B) == std::includes(ea.begin(), ea.end(), eb.begin(), eb.end()));
        }
    }
    auto e1 = coordinate_subspace(2, 0, 1), e2 = coordinate_subspace(2, 1, 1);
    CHECK(sum(F2, e1, e2) == full_subspace(2));
}

TEST_CASE("quotient and orthogonal") {
    Field F2 = Field::make(2, 1);
    auto Q0 = quotient(F2, 3, zero_subspace(3));
    CHECK(Q0.qdim == 3);
    CHECK(Q0.projection == Matrix::identity(3));
    CHECK(quotient(F2, 3, full_subspace(3)).qdim == 0);
    auto L = coordinate_subspace(2, 0, 1);
    auto Q = quotient(F2, 2, L);
    CHECK(Q.qdim == 1);
    CHECK(kernel_subspace(F2, Q.projection) == L);
    CHECK(mul(F2, Q.projection, Q.section) == Matrix::identity(1));
    CHECK(orthogonal(F2, zero_subspace(2)) == full_subspace(2));
    CHECK(orthogonal(F2, full_subspace(2)).dim() == 0);
    CHECK(orthogonal(F2, L) == coordinate_subspace(2, 1, 1));
    for (auto [p, d, n] : std::vector<std::tuple<int, int, int>>{{2, 1, 4}, {3, 1, 3}, {2, 2, 2}}) {
        Field F = Field::make(p, d);
        const auto& G = grassmannian(F, n);
        std::set<std::string> seen;
        for (const auto& W : G.subs) {
            auto Q2 = quotient(F, n, W);
            CHECK(kernel_subspace(F, Q2.projection) == W);
            CHECK(mul(F, Q2.projection, Q2.section) == Matrix::identity(Q2.qdim));
            auto Wp = orthogonal(F, W);
            CHECK(Wp.dim() == n - W.dim());
            CHECK(orthogonal(F, Wp) == W);
            seen.insert(Wp.key());
            // pairing vanishes
            CHECK(mul(F, W.basis, transpose(Wp.basis)).is_zero());
            for (const auto& V : G.subs)
                if (contains(F, W, V)) CHECK(contains(F, orthogonal(F, V), Wp));
            Matrix fr = frame(F, W);
            CHECK(is_invertible(F, fr));
            CHECK(image(F, fr, coordinate_subspace(n, 0, W.dim())) == W);
        }
        CHECK(static_cast<int>(seen.size()) == G.size());
    }
}

TEST_CASE("subspace enumeration matches the brute-force oracle and the product formula") {
    struct Case {
        int p, d, nmax;
    };
    for (auto c : {Case{2, 1, 4}, Case{3, 1, 3}, Case{2, 2, 2}}) {
        Field F = Field::make(c.p, c.d);
        for (int n = 0; n <= c.nmax; ++n) {
            VecOracle O{F, n};
            for (int m = 0; m <= n; ++m) {
                auto subs = enum_subspaces(F, n, m, c.nmax);
                CHECK(subs.size() == gaussian_binomial(F.q(), n, m));
                CHECK(gaussian_binomial(F.q(), n, m) % c.p == 1);
                std::set<std::set<int>> got;
                for (const auto& W : subs) got.insert(O.elements(W));
                CHECK(got == O.subspaces(m));
                for (size_t i = 1; i < subs.size(); ++i) CHECK(subs[i - 1] < subs[i]);
            }
        }
    }
    Field F2 = Field::make(2, 1);
    CHECK(enum_subspaces(F2, 4, 2, 4).size() == 35);
    CHECK(gaussian_binomial(2, 4, 2) == 35);
    CHECK(gaussian_binomial(3, 2, 1) == 4);
    CHECK(gaussian_binomial(5, 3, 3) == 1);
    CHECK_THROWS_AS(enum_subspaces(F2, 5, 2, 4), Error);
}

TEST_CASE("line-sum classes have size q^i") {
    for (int p : {2, 3}) {
        Field F = Field::make(p, 1);
        int lmax = p == 2 ? 4 : 3;
        for (int l = 1; l <= lmax; ++l)
            for (int i = 1; i < l; ++i) {
                VecOracle O{F, l};
                for (int v = 1; v < O.count(); ++v) {
                    int qi = 1;
                    for (int k = 0; k < i; ++k) qi *= p;
                    for (int s : line_sum_class_sizes(F, l, i, O.dec(v))) CHECK(s == qi);
                }
            }
    }
}

TEST_CASE("map enumeration") {
    Field F2 = Field::make(2, 1);
    CHECK(enum_maps(F2, 2, 1, MapKind::Epi, 4).size() == 3);
    CHECK(enum_maps(F2, 2, 2, MapKind::Iso, 4).size() == 6);
    CHECK(enum_maps(F2, 2, 2, MapKind::All, 4).size() == 16);
    CHECK(enum_maps(F2, 1, 2, MapKind::Mono, 4).size() == 3);
    CHECK_THROWS_AS(enum_maps(F2, 5, 1, MapKind::All, 4), Error);
    Field F3 = Field::make(3, 1);
    // |GL_2(F_3)| = (9-1)(9-3)
    CHECK(enum_maps(F3, 2, 2, MapKind::Iso, 3).size() == 48);
}

TEST_CASE("subspace text form round-trips") {
    Field F3 = Field::make(3, 1);
    for (const auto& W : grassmannian(F3, 3).subs) CHECK(Subspace::parse(W.text()) == W);
    CHECK(coordinate_subspace(3, 0, 2).text() == "3:2:100.010");
    CHECK(zero_subspace(2).text() == "2:0:");
}

TEST_CASE("canonical form is independent of the spanning set") {
    Field F3 = Field::make(3, 1);
    const auto& G = grassmannian(F3, 3);
    for (const auto& W : G.subs) {
        if (W.dim() == 0) continue;
        // scale and shear the basis rows, append a redundant combination
        Matrix M = W.basis;
        for (int j = 0; j < M.cols; ++j) M(0, j) = F3.mul(2, M(0, j));
        if (M.rows > 1)
            for (int j = 0; j < M.cols; ++j) M(1, j) = F3.add(M(1, j), M(0, j));
        Matrix extra(1, 3);
        for (int j = 0; j < 3; ++j) extra(0, j) = F3.add(M(0, j), M(M.rows - 1, j));
        CHECK(span(F3, vstack(M, extra), 3) == W);
    }
}

TEST_CASE("images and preimages") {
    Field F2 = Field::make(2, 1);
    Matrix f(2, 3, {1, 0, 1, 0, 1, 1});
    CHECK(image(F2, f, full_subspace(3)) == full_subspace(2));
    CHECK(kernel_subspace(F2, f).dim() == 1);
    CHECK(preimage(F2, f, zero_subspace(2)) == kernel_subspace(F2, f));
    for (const auto& Wp : grassmannian(F2, 2).subs) {
        auto P = preimage(F2, f, Wp);
        CHECK(contains(F2, Wp, image(F2, f, P)));
        CHECK(P.dim() == Wp.dim() + 1);
    }
}
