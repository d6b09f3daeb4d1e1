#include "doctest.h"
#include "grf/field.hpp"

using namespace grf;

namespace {
// Independent oracle: multiply two polynomials over F_p and reduce by a monic
// modulus, coefficients low degree first.
int poly_mul_oracle(int a, int b, int p, const std::vector<int>& m) {
    int d = static_cast<int>(m.size()) - 1;
    std::vector<int> x(d), y(d), z(2 * d, 0);
    for (int i = 0; i < d; ++i) {
        x[i] = a % p, a /= p;
        y[i] = b % p, b /= p;
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
    for (int k = 2 * d - 1; k >= d; --k)
        for (int i = 0; i < d; ++i) z[k - d + i] = ((z[k - d + i] - z[k] * m[i]) % p + p) % p;
    int v = 0;
    for (int i = d - 1; i >= 0; --i) v = v * p + z[i];
    return v;
}
}  // namespace

TEST_CASE("prime fields") {
    Field F2 = Field::make(2, 1);
    CHECK(F2.add(1, 1) == 0);
    Field F3 = Field::make(3, 1);
    CHECK(F3.mul(2, 2) == 1);
    CHECK(F3.frob(2) == 2);
    for (int a = 0; a < 2; ++a) CHECK(F2.frob(a) == a);
}

TEST_CASE("F4 generator satisfies g^2 = g + 1") {
    Field F4 = Field::make(2, 2);
    const Elem g = 2, one = 1;
    CHECK(F4.mul(g, g) == F4.add(g, one));
    CHECK(F4.frob(g) == F4.mul(g, g));
    // x^2 + x + 1 has no root in F_2, so it is irreducible
    for (int r = 0; r < 2; ++r) CHECK((r * r + r + 1) % 2 != 0);
}

TEST_CASE("table multiplication matches polynomial reduction") {
    for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
        Field F = Field::make(p, d);
        for (int a = 0; a < F.q(); ++a)
            for (int b = 0; b < F.q(); ++b)
                CHECK(F.mul(a, b) == poly_mul_oracle(a, b, p, F.modulus()));
    }
}

TEST_CASE("field axioms and Frobenius automorphism for every supported field") {
    for (auto [p, d] : std::vector<std::pair<int, int>>{
             {2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
        Field F = Field::make(p, d);
        CHECK(check_field_axioms(F).empty());
        for (int a = 0; a < F.q(); ++a) {
            Elem x = static_cast<Elem>(a);
            for (int k = 0; k < d; ++k) x = F.frob(x);
            CHECK(x == a);
            for (int b = 0; b < F.q(); ++b) {
                CHECK(F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b)));
                CHECK(F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)));
            }
        }
    }
}

TEST_CASE("field construction errors") {
    CHECK_THROWS_AS(Field::make(4, 1), Error);
    CHECK_THROWS_AS(Field::make(2, 5), Error);
    CHECK_THROWS_AS(Field::make(17, 1), Error);
    try {
        Field::make(6, 1);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotPrime);
    }
    try {
        Field::make(5, 2);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FieldTooLarge);
    }
    Field F3 = Field::make(3, 1);
    try {
        F3.div(1, 0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DivisionByZero);
    }
}
