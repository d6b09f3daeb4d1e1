#include "grf/field.hpp"

#include <sstream>

namespace grf {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::FieldTooLarge: return "FieldTooLarge";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::TruncationExceeded: return "TruncationExceeded";
        case Errc::KindMismatch: return "KindMismatch";
        case Errc::NotComposable: return "NotComposable";
        case Errc::SiteMismatch: return "SiteMismatch";
        case Errc::InsufficientRange: return "InsufficientRange";
        case Errc::RangeMismatch: return "RangeMismatch";
        case Errc::NonFunctorialData: return "NonFunctorialData";
        case Errc::UnsupportedSiteDuality: return "UnsupportedSiteDuality";
        case Errc::SubcategoryNotComplete: return "SubcategoryNotComplete";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::NotNatural: return "NotNatural";
        case Errc::HypothesisViolated: return "HypothesisViolated";
        case Errc::UnknownSuite: return "UnknownSuite";
        case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int k = 2; k * k <= p; ++k)
        if (p % k == 0) return false;
    return true;
}

namespace {

// Fixed irreducible moduli, low degree first, monic.
std::vector<int> modulus_for(int p, int d) {
    if (d == 1) return {0, 1};
    if (p == 2 && d == 2) return {1, 1, 1};     // x^2 + x + 1
    if (p == 2 && d == 3) return {1, 1, 0, 1};  // x^3 + x + 1
    if (p == 2 && d == 4) return {1, 1, 0, 0, 1};  // x^4 + x + 1
    if (p == 3 && d == 2) return {1, 0, 1};     // x^2 + 1
    throw Error(Errc::FieldTooLarge, "no modulus for p=" + std::to_string(p) +
                                         " d=" + std::to_string(d));
}

using Poly = std::vector<int>;  // d coefficients mod p

Poly to_poly(int v, int p, int d) {
    Poly c(d);
    for (int i = 0; i < d; ++i) {
        c[i] = v % p;
        v /= p;
    }
    return c;
}

int from_poly(const Poly& c, int p) {
    int v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p + c[i];
    return v;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const std::vector<int>& m, int p) {
    int d = static_cast<int>(a.size());
    std::vector<int> prod(2 * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int k = 2 * d - 1; k >= d; --k) {
        int c = prod[k];
        if (c == 0) continue;
        // x^k = x^{k-d} * x^d and x^d = -sum m_i x^i
        for (int i = 0; i < d; ++i) prod[k - d + i] = ((prod[k - d + i] - c * m[i]) % p + p) % p;
        prod[k] = 0;
    }
    prod.resize(d);
    return prod;
}

}  // namespace

Field Field::make(int p, int d) {
    if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (d < 1) throw Error(Errc::FieldTooLarge, "degree must be positive");
    long long q = 1;
    for (int i = 0; i < d; ++i) {
        q *= p;
        if (q > kMaxQ) throw Error(Errc::FieldTooLarge, "p^d exceeds 16");
    }
    Field F;
    F.p_ = p;
    F.d_ = d;
    F.q_ = static_cast<int>(q);
    F.modulus_ = modulus_for(p, d);
    for (int a = 0; a < F.q_; ++a) {
        Poly pa = to_poly(a, p, d);
        for (int b = 0; b < F.q_; ++b) {
            Poly pb = to_poly(b, p, d), s(d);
            for (int i = 0; i < d; ++i) s[i] = (pa[i] + pb[i]) % p;
            F.add_[a * kMaxQ + b] = static_cast<Elem>(from_poly(s, p));
            F.mul_[a * kMaxQ + b] =
                static_cast<Elem>(from_poly(poly_mul_mod(pa, pb, F.modulus_, p), p));
        }
    }
    for (int a = 0; a < F.q_; ++a) {
        for (int b = 0; b < F.q_; ++b) {
            if (F.add_[a * kMaxQ + b] == 0) F.neg_[a] = static_cast<Elem>(b);
            if (F.mul_[a * kMaxQ + b] == 1) F.inv_[a] = static_cast<Elem>(b);
        }
        Elem r = 1;
        for (int k = 0; k < p; ++k) r = F.mul_[r * kMaxQ + a];
        F.frob_[a] = r;
    }
    return F;
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
    return inv_[a];
}

Elem Field::pow(Elem a, unsigned e) const {
    Elem r = 1;
    for (unsigned k = 0; k < e; ++k) r = mul(r, a);
    return r;
}

Elem Field::from_int(long long v) const {
    long long r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

std::string Field::modulus_text() const {
    if (d_ == 1) return "x";
    std::ostringstream os;
    bool first = true;
    for (int i = d_; i >= 0; --i) {
        int c = modulus_[i];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (c != 1 || i == 0) os << c;
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::string Field::name() const { return "F" + std::to_string(q_); }

std::string check_field_axioms(const Field& F) {
    const int q = F.q();
    auto fail = [](const char* law, int a, int b, int c) {
        std::ostringstream os;
        os << law << " fails at (" << a << "," << b << "," << c << ")";
        return os.str();
    };
    for (int a = 0; a < q; ++a) {
        if (F.add(a, 0) != a) return fail("additive identity", a, 0, 0);
        if (F.mul(a, 1) != a) return fail("multiplicative identity", a, 1, 0);
        if (F.add(a, F.neg(a)) != 0) return fail("additive inverse", a, 0, 0);
        if (a != 0 && F.mul(a, F.inv(a)) != 1) return fail("multiplicative inverse", a, 0, 0);
        for (int b = 0; b < q; ++b) {
            if (F.add(a, b) != F.add(b, a)) return fail("additive commutativity", a, b, 0);
            if (F.mul(a, b) != F.mul(b, a)) return fail("multiplicative commutativity", a, b, 0);
            for (int c = 0; c < q; ++c) {
                if (F.add(F.add(a, b), c) != F.add(a, F.add(b, c)))
                    return fail("additive associativity", a, b, c);
                if (F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c)))
                    return fail("multiplicative associativity", a, b, c);
                if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)))
                    return fail("distributivity", a, b, c);
            }
        }
    }
    return {};
}

}  // namespace grf
