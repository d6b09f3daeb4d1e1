#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "grf/error.hpp"

namespace grf {

using Elem = std::uint8_t;

// F_q with q = p^d <= 16. An element is stored as the integer sum c_i p^i of
// its coefficients in the basis 1, x, ..., x^{d-1} of F_p[x]/(m(x)).
class Field {
public:
    static constexpr int kMaxQ = 16;

    static Field make(int p, int d);

    int p() const { return p_; }
    int d() const { return d_; }
    int q() const { return q_; }

    Elem add(Elem a, Elem b) const { return add_[a * kMaxQ + b]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * kMaxQ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add_[a * kMaxQ + neg_[b]]; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem frob(Elem a) const { return frob_[a]; }
    Elem pow(Elem a, unsigned e) const;

    // Image of an integer under Z -> F_p -> F_q.
    Elem from_int(long long v) const;

    // Coefficients m_0..m_d of the monic modulus (d > 1), or {0,1} for d = 1.
    const std::vector<int>& modulus() const { return modulus_; }
    std::string modulus_text() const;
    std::string name() const;

    bool operator==(const Field& o) const { return p_ == o.p_ && d_ == o.d_; }

private:
    int p_ = 2, d_ = 1, q_ = 2;
    std::vector<int> modulus_;
    std::array<Elem, kMaxQ * kMaxQ> add_{}, mul_{};
    std::array<Elem, kMaxQ> neg_{}, inv_{}, frob_{};
};

// Exhaustive check of the field axioms on the tables. Returns an empty string
// on success, otherwise a description of the first failure.
std::string check_field_axioms(const Field& F);

bool is_prime(int p);

}  // namespace grf
