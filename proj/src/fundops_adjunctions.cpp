#include "fundops_internal.hpp"

namespace grf {

using namespace detail;

namespace {

// Block matrix with one identity block at the given offsets.
Matrix one_block(int rows, int cols, int r0, int c0, int n) {
    Matrix m(rows, cols);
    for (int i = 0; i < n; ++i) m(r0 + i, c0 + i) = 1;
    return m;
}

// Index of a target object of a sum spec.
int target_index(const SumSpec& S, const SiteObject& x) {
    int i = S.target->find_object(x);
    if (i < 0) throw Error(Errc::RangeMismatch, "object outside the sum's range");
    return i;
}

int label_index(const SumSpec& S, int x, const Subspace& W) {
    const auto& L = S.label[x];
    for (size_t k = 0; k < L.size(); ++k)
        if (L[k] == W) return static_cast<int>(k);
    throw Error(Errc::RangeMismatch, "subspace is not a summand");
}

Matrix sum_row_of(const SumSpec& S, int x, const std::function<Matrix(int)>& piece) {
    Matrix r;
    for (size_t k = 0; k < S.summ[x].size(); ++k) r = k == 0 ? piece(0) : hstack(r, piece(static_cast<int>(k)));
    return r;
}

Matrix sum_col_of(const SumSpec& S, int x, const std::function<Matrix(int)>& piece) {
    Matrix r;
    for (size_t k = 0; k < S.summ[x].size(); ++k) r = k == 0 ? piece(0) : vstack(r, piece(static_cast<int>(k)));
    return r;
}

NatTrans nat_on_common(const FunctorPtr& src, const FunctorPtr& tgt,
                       const std::function<Matrix(const SiteObject&)>& comp) {
    auto s = meet(src->site, tgt->site);
    return make_nat(restrict_to(src, s), restrict_to(tgt, s), comp);
}

}  // namespace

NatTrans unit_omega_iota(const FunctorPtr& X) {
    const auto& S = omega_spec(X->site);
    auto W = omega(X);
    auto R = iota(W, X->site->I);
    return nat_on_common(X, R, [&](const SiteObject& o) {
        int x = target_index(S, {o.n});
        auto off = sum_offsets(*X, S, x);
        int k = label_index(S, x, coordinate_subspace(o.n, 0, o.b));
        int d = dim_at(*X, o);
        return one_block(off.back(), d, off[k], 0, d);
    });
}

NatTrans counit_omega_iota(const FunctorPtr& F) {
    auto iF = iota(F);
    const auto& S = omega_spec(iF->site);
    auto L = omega(iF);
    const Field& fld = F->field();
    // Summand W holds F(V) in the coordinates of the frame of W.
    return nat_on_common(L, F, [&](const SiteObject& o) {
        int x = target_index(S, o);
        const auto& G = grassmannian(fld, o.n);
        return sum_row_of(S, x, [&](int k) { return act_at(*F, o, o, G.frames[G.index(S.label[x][k])]); });
    });
}

NatTrans unit_varpi_o(const FunctorPtr& A) {
    const auto& S = varpi_spec(A->site);
    auto R = o_surj(varpi(A));
    return nat_on_common(A, R, [&](const SiteObject& o) {
        int x = target_index(S, o);
        auto off = sum_offsets(*A, S, x);
        int k = label_index(S, x, full_subspace(o.n));
        int d = dim_at(*A, o);
        return one_block(off.back(), d, off[k], 0, d);
    });
}

NatTrans counit_varpi_o(const FunctorPtr& F) {
    auto oF = o_surj(F);
    const auto& S = varpi_spec(oF->site);
    auto L = varpi(oF);
    const Field& fld = F->field();
    return nat_on_common(L, F, [&](const SiteObject& o) {
        int x = target_index(S, o);
        const auto& G = grassmannian(fld, o.n);
        return sum_row_of(S, x, [&](int k) {
            const Subspace& W = S.label[x][k];
            Matrix incl = block(G.frames[G.index(W)], 0, 0, o.n, W.dim());
            return act_at(*F, {W.dim()}, o, incl);
        });
    });
}

NatTrans unit_oinj_varpiinj(const FunctorPtr& F) {
    auto oF = o_inj(F);
    const auto& S = varpi_inj_spec(oF->site);
    auto R = varpi_inj(oF);
    const Field& fld = F->field();
    return nat_on_common(F, R, [&](const SiteObject& o) {
        int x = target_index(S, o);
        const auto& G = grassmannian(fld, o.n);
        return sum_col_of(S, x, [&](int k) {
            const Subspace& W = S.label[x][k];
            Matrix proj = block(G.frame_inv[G.index(W)], W.dim(), 0, o.n - W.dim(), o.n);
            return act_at(*F, o, {o.n - W.dim()}, proj);
        });
    });
}

NatTrans counit_oinj_varpiinj(const FunctorPtr& X) {
    const auto& S = varpi_inj_spec(X->site);
    auto L = o_inj(varpi_inj(X));
    return nat_on_common(L, X, [&](const SiteObject& o) {
        int x = target_index(S, o);
        auto off = sum_offsets(*X, S, x);
        int k = label_index(S, x, zero_subspace(o.n));
        int d = dim_at(*X, o);
        return one_block(d, off.back(), 0, off[k], d);
    });
}

NatTrans unit_rho_epsilon(const FunctorPtr& A) {
    auto R = epsilon(rho(A));
    return nat_on_common(A, R, [&](const SiteObject& o) { return Matrix::identity(dim_at(*A, o)); });
}

NatTrans counit_rho_epsilon(const FunctorPtr& X) {
    auto L = rho(epsilon(X));
    return nat_on_common(L, X, [&](const SiteObject& o) {
        return act_at(*X, {o.b, o.b}, o, one_block(o.n, o.b, 0, 0, o.b));
    });
}

NatTrans unit_xi_sigma(const FunctorPtr& F) {
    auto R = sigma(xi(F));
    return nat_on_common(F, R, [&](const SiteObject& o) {
        Matrix u = block_diag(one_block(o.b + o.n, o.n, o.b, 0, o.n), Matrix::identity(o.b));
        return act_at(*F, o, {o.n + o.b, o.b}, u);
    });
}

NatTrans counit_xi_sigma(const FunctorPtr& X) {
    auto L = xi(sigma(X));
    return nat_on_common(L, X, [&](const SiteObject& o) {
        Matrix c = hstack(one_block(o.n, o.b, 0, 0, o.b), Matrix::identity(o.n));
        return act_at(*X, {o.b + o.n, o.b}, o, c);
    });
}

NatTrans unit_eta_theta(const FunctorPtr& X) {
    auto c = cokernel(module_structure(X).m);
    auto R = theta(c.obj);
    return nat_on_common(X, R, [&](const SiteObject& o) {
        return c.map.comp[c.obj->site->find_object({o.n - o.b, o.b})];
    });
}

NatTrans counit_eta_theta(const FunctorPtr& F) {
    const Field& fld = F->field();
    auto c = cokernel(module_structure(theta(F)).m);
    return nat_on_common(c.obj, F, [&](const SiteObject& o) {
        Matrix p = c.map.comp[c.obj->site->find_object(o)];
        return factor_through(fld, p, Matrix::identity(p.rows));
    });
}

NatTrans unit_J_N(const FunctorPtr& X) {
    const auto& S = frak_J_spec(X->site);
    auto R = frak_N(frak_J(X));
    return nat_on_common(X, R, [&](const SiteObject& o) {
        int x = target_index(S, o);
        auto off = sum_offsets(*X, S, x);
        int k = label_index(S, x, coordinate_subspace(o.n, 0, o.b));
        int d = dim_at(*X, o);
        return one_block(off.back(), d, off[k], 0, d);
    });
}

NatTrans counit_J_N(const FunctorPtr& Y) {
    auto NY = frak_N(Y);
    const auto& S = frak_J_spec(NY->site);
    auto L = frak_J(NY);
    return nat_on_common(L, Y, [&](const SiteObject& o) {
        int x = target_index(S, o);
        Subspace B = coordinate_subspace(o.n, 0, o.b);
        Matrix I = Matrix::identity(o.n);
        return sum_row_of(S, x, [&](int k) {
            return Y->act[morphism_at(*Y->site, I, S.label[x][k], B)];
        });
    });
}

// ------------------------------------------------------------------ generic check

namespace {

struct PairData {
    Fundamental L, R;
    std::function<NatTrans(const FunctorPtr&)> unit, counit;
};

PairData pair_data(const std::string& pair, const std::vector<int>& I) {
    if (pair == "omega_iota")
        return {fundamental({"omega", {}}), fundamental({"iota", I}), unit_omega_iota, counit_omega_iota};
    if (pair == "varpi_o") return {fundamental({"varpi", {}}), fundamental({"o", {}}), unit_varpi_o, counit_varpi_o};
    if (pair == "oinj_varpiinj")
        return {fundamental({"o_inj", {}}), fundamental({"varpi_inj", {}}), unit_oinj_varpiinj, counit_oinj_varpiinj};
    if (pair == "rho_epsilon")
        return {fundamental({"rho", I}), fundamental({"epsilon", {}}), unit_rho_epsilon, counit_rho_epsilon};
    if (pair == "xi_sigma") return {fundamental({"xi", {}}), fundamental({"sigma", {}}), unit_xi_sigma, counit_xi_sigma};
    if (pair == "eta_theta")
        return {fundamental({"eta", {}}), fundamental({"theta", {}}), unit_eta_theta, counit_eta_theta};
    if (pair == "J_N") return {fundamental({"frak_J", {}}), fundamental({"frak_N", {}}), unit_J_N, counit_J_N};
    throw Error(Errc::ConfigError, "unknown adjoint pair '" + pair + "'");
}

// g after f on the objects where both are defined; nullopt when the middle
// values disagree.
std::optional<NatTrans> compose_common(const NatTrans& g, const NatTrans& f) {
    auto s = meet(f.src->site, g.src->site);
    auto f2 = restrict_nat(f, s), g2 = restrict_nat(g, s);
    if (f2.tgt->dim != g2.src->dim) return std::nullopt;
    NatTrans t{f2.src, g2.tgt, {}};
    for (size_t x = 0; x < f2.comp.size(); ++x) t.comp.push_back(mul(f.src->field(), g2.comp[x], f2.comp[x]));
    return t;
}

void note(bool& flag, std::string& w, const std::string& why) {
    if (flag && w.empty()) w = why;
    flag = false;
}

}  // namespace

AdjunctionReport adjunction_check(const std::string& pair, const std::vector<FunctorPtr>& lefts,
                                  const std::vector<FunctorPtr>& rights) {
    // iota must land on the base dimensions omega sums over.
    std::vector<int> I;
    if (pair == "omega_iota" && !lefts.empty()) I = lefts[0]->site->I;
    auto P = pair_data(pair, I);
    AdjunctionReport r;
    r.name = pair;
    for (const auto& X : lefts) {
        auto u = P.unit(X);
        auto c = check_natural(u);
        r.checked += c.checked;
        if (!c.ok) note(r.unit_natural, r.witness, "unit at " + X->name + ": " + c.witness);
        auto LX = P.L(X);
        auto t = compose_common(P.counit(LX), P.L(u));
        if (!t || !is_identity(*t)) note(r.triangle_left, r.witness, "left triangle fails at " + X->name);
    }
    for (const auto& F : rights) {
        auto e = P.counit(F);
        auto c = check_natural(e);
        r.checked += c.checked;
        if (!c.ok) note(r.counit_natural, r.witness, "counit at " + F->name + ": " + c.witness);
        auto RF = P.R(F);
        auto t = compose_common(P.R(e), P.unit(RF));
        if (!t || !is_identity(*t)) note(r.triangle_right, r.witness, "right triangle fails at " + F->name);
    }
    for (const auto& X : lefts)
        for (const auto& F : rights) {
            auto [a, b] = common_range(P.L(X), F);
            auto [c, d] = common_range(X, P.R(F));
            int lhs = hom_dim(a, b), rhs = hom_dim(c, d);
            ++r.checked;
            if (lhs != rhs)
                note(r.hom_dims_equal, r.witness,
                     "hom(L " + X->name + ", " + F->name + ") = " + std::to_string(lhs) + " but hom(" + X->name +
                         ", R " + F->name + ") = " + std::to_string(rhs));
        }
    return r;
}

}  // namespace grf
