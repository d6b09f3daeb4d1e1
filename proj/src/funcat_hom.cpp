#include <algorithm>
#include <map>
#include <set>

#include "grf/error.hpp"
#include "grf/funcat.hpp"

namespace grf {

namespace {

// Row-major flattening of a dG x dF block basis vector back to a matrix.
Matrix unflatten(const Elem* row, int r, int c) {
    Matrix m(r, c);
    std::copy(row, row + static_cast<size_t>(r) * c, m.a.begin());
    return m;
}

// Replaces the basis B (rows) by the subspace on which the residual rows R vanish.
void restrict_basis(const Field& fld, Matrix& B, const Matrix& R) {
    if (R.is_zero()) return;
    Matrix L = left_nullspace(fld, R);
    B = mul(fld, L, B);
}

std::vector<Elem> flatten(const NatTrans& t) {
    std::vector<Elem> v;
    for (const auto& c : t.comp) v.insert(v.end(), c.a.begin(), c.a.end());
    return v;
}

// Columns are the flattened transformations.
Matrix as_columns(const std::vector<NatTrans>& ts, size_t len) {
    Matrix A(static_cast<int>(len), static_cast<int>(ts.size()));
    for (size_t j = 0; j < ts.size(); ++j) {
        auto v = flatten(ts[j]);
        for (size_t i = 0; i < len; ++i) A(static_cast<int>(i), static_cast<int>(j)) = v[i];
    }
    return A;
}

size_t flat_len(const Functor& F, const Functor& G) {
    size_t n = 0;
    for (size_t x = 0; x < F.dim.size(); ++x) n += static_cast<size_t>(F.dim[x]) * G.dim[x];
    return n;
}

// Coordinates of each target transformation in the basis; throws when one is
// outside the span.
Matrix coordinates(const Field& fld, const std::vector<NatTrans>& basis,
                   const std::vector<NatTrans>& targets, size_t len) {
    Matrix A = as_columns(basis, len), Bm = as_columns(targets, len), X;
    if (!solve(fld, A, Bm, X)) throw Error(Errc::NotNatural, "image outside the hom space");
    return X;
}

}  // namespace

std::vector<NatTrans> hom_space(const FunctorPtr& F, const FunctorPtr& G, HomOptions o) {
    if (F->site != G->site) throw Error(Errc::RangeMismatch, "hom between functors on different ranges");
    const Site& s = *F->site;
    const Field& fld = s.field;
    int N = s.num_objects();

    // Per object: solutions of the equivariance conditions for End(x).
    std::vector<Matrix> B(N);
    for (int x = 0; x < N; ++x) {
        int dg = G->dim[x], df = F->dim[x], du = dg * df;
        B[x] = Matrix::identity(du);
        if (du == 0) continue;
        for (int f : s.hom(x, x)) {
            if (f == s.ident[x]) continue;
            if (B[x].rows == 0) break;
            Matrix R(B[x].rows, du);
            for (int r = 0; r < B[x].rows; ++r) {
                Matrix T = unflatten(B[x].row(r), dg, df);
                Matrix res = sub(fld, mul(fld, G->act[f], T), mul(fld, T, F->act[f]));
                std::copy(res.a.begin(), res.a.end(), R.row(r));
            }
            restrict_basis(fld, B[x], R);
        }
    }

    // Coefficients of the per-object bases, glued along the other morphisms.
    std::vector<int> off(N + 1, 0);
    for (int x = 0; x < N; ++x) off[x + 1] = off[x] + B[x].rows;
    int K = off[N];
    Matrix S = Matrix::identity(K);
    for (int i = 0; i < s.num_morphisms() && S.rows > 0; ++i) {
        const auto& m = s.mors[i];
        int x = m.src, y = m.tgt;
        if (x == y) continue;
        int kx = B[x].rows, ky = B[y].rows;
        int E = G->dim[y] * F->dim[x];
        if (E == 0 || kx + ky == 0) continue;
        Matrix Rc(kx + ky, E);
        for (int r = 0; r < kx; ++r) {
            Matrix v = mul(fld, G->act[i], unflatten(B[x].row(r), G->dim[x], F->dim[x]));
            std::copy(v.a.begin(), v.a.end(), Rc.row(r));
        }
        for (int r = 0; r < ky; ++r) {
            Matrix v = mul(fld, unflatten(B[y].row(r), G->dim[y], F->dim[y]), F->act[i]);
            for (int e = 0; e < E; ++e) Rc(kx + r, e) = fld.neg(v.a[e]);
        }
        if (Rc.is_zero()) continue;
        std::vector<int> cols;
        for (int c = 0; c < kx; ++c) cols.push_back(off[x] + c);
        for (int c = 0; c < ky; ++c) cols.push_back(off[y] + c);
        Matrix R = mul(fld, select_cols(S, cols), Rc);
        restrict_basis(fld, S, R);
    }
    S = rref(fld, S).m;

    std::vector<NatTrans> out;
    for (int r = 0; r < S.rows; ++r) {
        NatTrans t{F, G, {}};
        for (int x = 0; x < N; ++x) {
            int dg = G->dim[x], df = F->dim[x];
            Matrix c(1, B[x].rows);
            for (int j = 0; j < B[x].rows; ++j) c(0, j) = S(r, off[x] + j);
            Matrix flat = B[x].rows ? mul(fld, c, B[x]) : Matrix(1, dg * df);
            t.comp.push_back(unflatten(flat.row(0), dg, df));
        }
        if (o.verify) {
            auto chk = check_natural(t);
            if (!chk.ok) throw Error(Errc::NotNatural, "hom solver produced a non-natural map: " + chk.witness);
        }
        out.push_back(std::move(t));
    }
    return out;
}

int hom_dim(const FunctorPtr& F, const FunctorPtr& G) {
    return static_cast<int>(hom_space(F, G, {false}).size());
}

NatTrans yoneda_map(const FunctorPtr& P, int obj, const FunctorPtr& G, const std::vector<Elem>& x) {
    const Site& s = *G->site;
    NatTrans t{P, G, {}};
    Matrix xv(static_cast<int>(x.size()), 1, x);
    for (int X = 0; X < s.num_objects(); ++X) {
        const auto& h = s.hom(obj, X);
        Matrix c(G->dim[X], static_cast<int>(h.size()));
        for (size_t j = 0; j < h.size(); ++j) {
            Matrix v = mul(s.field, G->act[h[j]], xv);
            for (int r = 0; r < G->dim[X]; ++r) c(r, static_cast<int>(j)) = v(r, 0);
        }
        t.comp.push_back(std::move(c));
    }
    return t;
}

FunctorPtr internal_hom(const FunctorPtr& X, const FunctorPtr& Y) {
    if (X->site != Y->site) throw Error(Errc::SiteMismatch, "internal hom on different sites");
    const SitePtr& s = X->site;
    const Field& fld = s->field;
    int N = s->num_objects();
    std::vector<FunctorPtr> P(N), PX(N);
    std::vector<std::vector<NatTrans>> H(N);
    for (int e = 0; e < N; ++e) {
        P[e] = std_projective(s, e);
        PX[e] = tensor(P[e], X);
        H[e] = hom_space(PX[e], Y, {false});
    }
    auto R = std::make_shared<Functor>();
    R->site = s;
    R->name = "Hom(" + X->name + "," + Y->name + ")";
    for (int e = 0; e < N; ++e) R->dim.push_back(static_cast<int>(H[e].size()));
    R->act.resize(s->num_morphisms());
    for (int i = 0; i < s->num_morphisms(); ++i) {
        const auto& m = s->mors[i];
        int e = m.src, ep = m.tgt;
        if (H[e].empty() || H[ep].empty()) {
            R->act[i] = Matrix(R->dim[ep], R->dim[e]);
            continue;
        }
        // P_{E'} -> P_E by precomposition with e, tensored with X
        NatTrans pe{PX[ep], PX[e], {}};
        for (int v = 0; v < N; ++v) {
            const auto& hs = s->hom(ep, v);
            const auto& ht = s->hom(e, v);
            Matrix c(static_cast<int>(ht.size()), static_cast<int>(hs.size()));
            for (size_t j = 0; j < hs.size(); ++j) {
                int comp = s->compose(hs[j], i);
                int r = static_cast<int>(std::find(ht.begin(), ht.end(), comp) - ht.begin());
                c(r, static_cast<int>(j)) = 1;
            }
            pe.comp.push_back(kron(fld, c, Matrix::identity(X->dim[v])));
        }
        std::vector<NatTrans> imgs;
        for (const auto& t : H[e]) imgs.push_back(compose(t, pe));
        R->act[i] = coordinates(fld, H[ep], imgs, flat_len(*PX[ep], *Y));
    }
    return R;
}

FunctorPtr division(const FunctorPtr& X, const FunctorPtr& A) {
    if (X->site != A->site) throw Error(Errc::SiteMismatch, "division on different sites");
    const SitePtr& s = X->site;
    const Field& fld = s->field;
    int N = s->num_objects();
    std::vector<FunctorPtr> I(N), AI(N);
    std::vector<std::vector<NatTrans>> H(N);
    for (int e = 0; e < N; ++e) {
        I[e] = std_injective(s, e);
        AI[e] = tensor(A, I[e]);
        H[e] = hom_space(X, AI[e], {false});
    }
    auto R = std::make_shared<Functor>();
    R->site = s;
    R->name = "(" + X->name + ":" + A->name + ")";
    for (int e = 0; e < N; ++e) R->dim.push_back(static_cast<int>(H[e].size()));
    R->act.resize(s->num_morphisms());
    for (int i = 0; i < s->num_morphisms(); ++i) {
        const auto& m = s->mors[i];
        int e = m.src, ep = m.tgt;
        if (H[e].empty() || H[ep].empty()) {
            R->act[i] = Matrix(R->dim[ep], R->dim[e]);
            continue;
        }
        // I_{E'} -> I_E pulling functions back along h -> e h
        NatTrans pb{AI[ep], AI[e], {}};
        for (int v = 0; v < N; ++v) {
            const auto& ht = s->hom(v, ep);
            const auto& hs = s->hom(v, e);
            Matrix c(static_cast<int>(hs.size()), static_cast<int>(ht.size()));
            for (size_t j = 0; j < hs.size(); ++j) {
                int comp = s->compose(i, hs[j]);
                int r = static_cast<int>(std::find(ht.begin(), ht.end(), comp) - ht.begin());
                c(static_cast<int>(j), r) = 1;
            }
            pb.comp.push_back(kron(fld, Matrix::identity(A->dim[v]), c));
        }
        std::vector<NatTrans> imgs;
        for (const auto& t : H[ep]) imgs.push_back(compose(pb, t));
        Matrix M = coordinates(fld, H[e], imgs, flat_len(*X, *AI[e]));
        R->act[i] = transpose(M);
    }
    return R;
}

// ------------------------------------------------------------------ subfunctor lattice

namespace {

bool included(const Field& fld, const std::vector<Subspace>& a, const std::vector<Subspace>& b) {
    for (size_t x = 0; x < a.size(); ++x)
        if (!contains(fld, b[x], a[x])) return false;
    return true;
}

}  // namespace

bool Lattice::is_chain(const Field& fld) const {
    // a chain is totally ordered by total dimension, so consecutive inclusions suffice
    std::vector<size_t> order(elems.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return total_dims[a] < total_dims[b]; });
    for (size_t k = 1; k < order.size(); ++k)
        if (!included(fld, elems[order[k - 1]], elems[order[k]])) return false;
    return true;
}

bool Lattice::has_complement_pair(const Field& fld) const {
    long long top = *std::max_element(total_dims.begin(), total_dims.end());
    for (size_t i = 0; i < elems.size(); ++i) {
        if (total_dims[i] == 0 || total_dims[i] == top) continue;
        for (size_t j = i + 1; j < elems.size(); ++j) {
            if (total_dims[i] + total_dims[j] != top) continue;
            bool ok = true;
            for (size_t x = 0; x < elems[i].size() && ok; ++x) {
                int n = elems[i][x].n;
                ok = sum(fld, elems[i][x], elems[j][x]).dim() == n;
            }
            if (ok) return true;
        }
    }
    return false;
}

Lattice subfunctor_lattice(const FunctorPtr& F, int budget) {
    const Site& s = *F->site;
    const Field& fld = s.field;
    if (F->total_dim() > budget) throw Error(Errc::BudgetExceeded, "functor too large for lattice enumeration");
    int N = s.num_objects();
    auto key_of = [](const std::vector<Subspace>& e) {
        std::string k;
        for (const auto& W : e) k += W.text() + "|";
        return k;
    };
    std::map<std::string, size_t> seen;
    Lattice L;
    auto insert = [&](std::vector<Subspace> e) -> bool {
        std::string k = key_of(e);
        if (seen.count(k)) return false;
        if (L.elems.size() > 20000) throw Error(Errc::BudgetExceeded, "too many subfunctors");
        seen[k] = L.elems.size();
        long long t = 0;
        for (const auto& W : e) t += W.dim();
        L.total_dims.push_back(t);
        L.elems.push_back(std::move(e));
        return true;
    };
    std::vector<Subspace> zero;
    for (int x = 0; x < N; ++x) zero.push_back(zero_subspace(F->dim[x]));
    insert(zero);
    // cyclic subfunctors generated by one vector, normalized up to scalars
    std::vector<size_t> cyclic;
    for (int x = 0; x < N; ++x) {
        int d = F->dim[x];
        if (d == 0) continue;
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= fld.q();
        std::vector<Elem> v(d, 0);
        for (long long code = 1; code < count; ++code) {
            long long c = code;
            for (int i = d - 1; i >= 0; --i) v[i] = static_cast<Elem>(c % fld.q()), c /= fld.q();
            int lead = 0;
            while (v[lead] == 0) ++lead;
            if (v[lead] != 1) continue;
            Matrix col(d, 1, v);
            std::vector<Subspace> e;
            for (int y = 0; y < N; ++y) {
                Matrix rows(0, F->dim[y]);
                for (int f : s.hom(x, y)) rows = vstack(rows, transpose(mul(fld, F->act[f], col)));
                e.push_back(span(fld, rows, F->dim[y]));
            }
            if (insert(std::move(e))) cyclic.push_back(L.elems.size() - 1);
        }
    }
    // closure under sums
    std::vector<size_t> work;
    for (size_t i = 0; i < L.elems.size(); ++i) work.push_back(i);
    while (!work.empty()) {
        size_t a = work.back();
        work.pop_back();
        for (size_t c : cyclic) {
            std::vector<Subspace> e;
            for (int x = 0; x < N; ++x) e.push_back(sum(fld, L.elems[a][x], L.elems[c][x]));
            if (insert(std::move(e))) work.push_back(L.elems.size() - 1);
        }
    }
    return L;
}

}  // namespace grf
