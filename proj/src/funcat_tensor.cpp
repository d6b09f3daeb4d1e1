#include <algorithm>
#include <map>

#include "grf/error.hpp"
#include "grf/funcat.hpp"

namespace grf {

namespace {

bool is_gr(const Site& s) { return s.kind == SiteKind::Gr || s.kind == SiteKind::GrTilde; }

// W in F^b viewed inside F^n through the first b coordinates.
Subspace pad(const Subspace& W, int n) {
    Subspace P;
    P.n = n;
    P.basis = Matrix(W.dim(), n);
    set_block(P.basis, 0, 0, W.basis);
    return P;
}

// W in F^n contained in the first b coordinates, viewed in F^b.
Subspace unpad(const Subspace& W, int b) {
    Subspace P;
    P.n = b;
    P.basis = block(W.basis, 0, 0, W.dim(), b);
    return P;
}

int position(const std::vector<int>& hom, int m) {
    auto it = std::find(hom.begin(), hom.end(), m);
    if (it == hom.end()) throw Error(Errc::SiteMismatch, "morphism not in hom set");
    return static_cast<int>(it - hom.begin());
}

// Summands of (X (x)~ Y) at one object: pairs of Grassmannian indices.
struct Summand {
    int i, j, xo, yo, off, dy;
};

struct TotalLayout {
    std::vector<std::vector<Summand>> at;       // per object
    std::vector<std::map<std::pair<int, int>, int>> where;
    std::vector<int> dim;
};

TotalLayout total_layout(const Functor& X, const Functor& Y) {
    const Site& s = *X.site;
    const Field& fld = s.field;
    TotalLayout L;
    int N = s.num_objects();
    L.at.resize(N);
    L.where.resize(N);
    L.dim.assign(N, 0);
    for (int x = 0; x < N; ++x) {
        const auto& o = s.objects[x];
        int amb = is_gr(s) ? o.b : o.n;
        const auto& G = grassmannian(fld, amb);
        for (int i = 0; i < G.size(); ++i)
            for (int j = 0; j < G.size(); ++j) {
                if (sum(fld, G.subs[i], G.subs[j]).dim() != amb) continue;
                Summand sm;
                sm.i = i;
                sm.j = j;
                if (is_gr(s)) {
                    sm.xo = s.find_object({o.n, G.subs[i].dim()});
                    sm.yo = s.find_object({o.n, G.subs[j].dim()});
                } else {
                    sm.xo = s.find_object({G.subs[i].dim()});
                    sm.yo = s.find_object({G.subs[j].dim()});
                }
                if (sm.xo < 0 || sm.yo < 0) throw Error(Errc::TruncationExceeded, "summand outside the site");
                sm.off = L.dim[x];
                sm.dy = Y.dim[sm.yo];
                L.dim[x] += X.dim[sm.xo] * Y.dim[sm.yo];
                L.where[x][{i, j}] = static_cast<int>(L.at[x].size());
                L.at[x].push_back(sm);
            }
    }
    return L;
}

// The skeletal morphism induced by u on the summand subspace with index i at
// object x, together with the index of the image subspace.
std::pair<int, int> induced(const Site& s, int mor, int i) {
    const Field& fld = s.field;
    const auto& m = s.mors[mor];
    const auto& ox = s.objects[m.src];
    const auto& oy = s.objects[m.tgt];
    if (is_gr(s)) {
        const auto& G = grassmannian(fld, ox.b);
        Subspace A = pad(G.subs[i], ox.n);
        Subspace uA = image(fld, m.m, A);
        int ti = grassmannian(fld, oy.b).index(unpad(uA, oy.b));
        return {morphism_at(s, m.m, A, uA), ti};
    }
    const auto& G = grassmannian(fld, ox.n);
    const Subspace& V = G.subs[i];
    int ti = grassmannian(fld, oy.n).index(image(fld, m.m, V));
    return {restricted_epi(s, m.m, V), ti};
}

// All matrices F^{x.n} -> F^n carrying the base of x onto W.
std::vector<Matrix> maps_into(const Field& fld, const SiteObject& x, int n, const Subspace& W, int bound) {
    std::vector<Matrix> out;
    for (auto& m : enum_maps(fld, x.n, n, MapKind::All, bound))
        if (image(fld, m, coordinate_subspace(x.n, 0, x.b)) == W) out.push_back(std::move(m));
    return out;
}

// All matrices F^n -> F^{x.n} carrying W onto the base of x.
std::vector<Matrix> maps_from(const Field& fld, int n, const Subspace& W, const SiteObject& x, int bound) {
    std::vector<Matrix> out;
    for (auto& m : enum_maps(fld, n, x.n, MapKind::All, bound))
        if (image(fld, m, W) == coordinate_subspace(x.n, 0, x.b)) out.push_back(std::move(m));
    return out;
}

std::map<std::string, int> index_by_key(const std::vector<Matrix>& ms) {
    std::map<std::string, int> idx;
    for (size_t i = 0; i < ms.size(); ++i) idx[ms[i].key()] = static_cast<int>(i);
    return idx;
}

}  // namespace

int object_at(const Site& s, int n, const Subspace& W) {
    int o = is_gr(s) ? s.find_object({n, W.dim()}) : s.find_object({W.dim()});
    if (o < 0) throw Error(Errc::TruncationExceeded, "object outside the site");
    return o;
}

int morphism_at(const Site& s, const Matrix& f, const Subspace& W, const Subspace& Wp) {
    const Field& fld = s.field;
    const auto& G = grassmannian(fld, W.n);
    const auto& Gp = grassmannian(fld, Wp.n);
    Matrix M = mul(fld, Gp.frame_inv[Gp.index(Wp)], mul(fld, f, G.frames[G.index(W)]));
    int r = s.find(object_at(s, W.n, W), object_at(s, Wp.n, Wp), M);
    if (r < 0) throw Error(Errc::SiteMismatch, "transported morphism not in site");
    return r;
}

int restricted_epi(const Site& s, const Matrix& f, const Subspace& V) {
    const Field& fld = s.field;
    Subspace fV = image(fld, f, V);
    const auto& G = grassmannian(fld, V.n);
    const auto& Gp = grassmannian(fld, fV.n);
    Matrix M = mul(fld, Gp.frame_inv[Gp.index(fV)], mul(fld, f, G.frames[G.index(V)]));
    Matrix r = block(M, 0, 0, fV.dim(), V.dim());
    int m = s.find(s.find_object({V.dim()}), s.find_object({fV.dim()}), r);
    if (m < 0) throw Error(Errc::SiteMismatch, "restricted epimorphism not in site");
    return m;
}

FunctorPtr projective_at(const SitePtr& s, int n, const Subspace& W) {
    const Field& fld = s->field;
    int bound = std::max(s->nmax, n);
    auto F = std::make_shared<Functor>();
    F->site = s;
    F->name = "P_(" + std::to_string(n) + "," + W.text() + ")";
    std::vector<std::vector<Matrix>> basis;
    std::vector<std::map<std::string, int>> idx;
    for (const auto& o : s->objects) {
        basis.push_back(maps_from(fld, n, W, o, bound));
        idx.push_back(index_by_key(basis.back()));
        F->dim.push_back(static_cast<int>(basis.back().size()));
    }
    for (const auto& m : s->mors) {
        Matrix a(F->dim[m.tgt], F->dim[m.src]);
        for (size_t j = 0; j < basis[m.src].size(); ++j)
            a(idx[m.tgt].at(mul(fld, m.m, basis[m.src][j]).key()), static_cast<int>(j)) = 1;
        F->act.push_back(std::move(a));
    }
    return F;
}

FunctorPtr injective_at(const SitePtr& s, int n, const Subspace& W) {
    const Field& fld = s->field;
    int bound = std::max(s->nmax, n);
    auto F = std::make_shared<Functor>();
    F->site = s;
    F->name = "I_(" + std::to_string(n) + "," + W.text() + ")";
    std::vector<std::vector<Matrix>> basis;
    std::vector<std::map<std::string, int>> idx;
    for (const auto& o : s->objects) {
        basis.push_back(maps_into(fld, o, n, W, bound));
        idx.push_back(index_by_key(basis.back()));
        F->dim.push_back(static_cast<int>(basis.back().size()));
    }
    for (const auto& m : s->mors) {
        Matrix a(F->dim[m.tgt], F->dim[m.src]);
        for (size_t j = 0; j < basis[m.tgt].size(); ++j)
            a(static_cast<int>(j), idx[m.src].at(mul(fld, basis[m.tgt][j], m.m).key())) = 1;
        F->act.push_back(std::move(a));
    }
    return F;
}

FunctorPtr total_tensor(const FunctorPtr& X, const FunctorPtr& Y) {
    if (X->site != Y->site) throw Error(Errc::SiteMismatch, "total tensor on different sites");
    const Site& s = *X->site;
    if (s.kind != SiteKind::Surj && s.kind != SiteKind::Gr)
        throw Error(Errc::KindMismatch, "total tensor needs E_surj or E_Gr");
    const Field& fld = s.field;
    auto L = total_layout(*X, *Y);
    auto T = std::make_shared<Functor>();
    T->site = X->site;
    T->name = "(" + X->name + " (x)~ " + Y->name + ")";
    T->dim = L.dim;
    for (int mi = 0; mi < s.num_morphisms(); ++mi) {
        const auto& m = s.mors[mi];
        Matrix a(L.dim[m.tgt], L.dim[m.src]);
        for (const auto& sm : L.at[m.src]) {
            auto [fx, ti] = induced(s, mi, sm.i);
            auto [fy, tj] = induced(s, mi, sm.j);
            const auto& dst = L.at[m.tgt][L.where[m.tgt].at({ti, tj})];
            set_block(a, dst.off, sm.off, kron(fld, X->act[fx], Y->act[fy]));
        }
        T->act.push_back(std::move(a));
    }
    return T;
}

NatTrans tensor_to_total(const FunctorPtr& X, const FunctorPtr& Y, const FunctorPtr& XY,
                         const FunctorPtr& XtY) {
    const Site& s = *X->site;
    const Field& fld = s.field;
    auto L = total_layout(*X, *Y);
    NatTrans t{XY, XtY, {}};
    for (int x = 0; x < s.num_objects(); ++x) {
        const auto& o = s.objects[x];
        int amb = is_gr(s) ? o.b : o.n;
        int top = grassmannian(fld, amb).size() - 1;
        const auto& sm = L.at[x][L.where[x].at({top, top})];
        Matrix c(L.dim[x], XY->dim[x]);
        for (int k = 0; k < XY->dim[x]; ++k) c(sm.off + k, k) = 1;
        t.comp.push_back(std::move(c));
    }
    return t;
}

IsoReport check_iso(const std::string& name, const NatTrans& t) {
    IsoReport r;
    r.name = name;
    r.iso = t;
    for (size_t x = 0; x < t.comp.size(); ++x)
        if (t.src->dim[x] != t.tgt->dim[x]) {
            r.dims_equal = false;
            r.witness = "dimensions differ at " + t.src->site->object_text(static_cast<int>(x));
            r.natural = r.invertible = false;
            return r;
        }
    auto c = check_natural(t);
    r.natural = c.ok;
    r.checked = c.checked;
    if (!c.ok) r.witness = c.witness;
    for (size_t x = 0; x < t.comp.size(); ++x)
        if (!is_invertible(t.src->field(), t.comp[x])) {
            r.invertible = false;
            if (r.witness.empty()) r.witness = "singular at " + t.src->site->object_text(static_cast<int>(x));
        }
    return r;
}

IsoReport total_tensor_projective_surj(const SitePtr& s, int a, int b) {
    const Field& fld = s->field;
    int oa = s->find_object({a}), ob = s->find_object({b}), oab = s->find_object({a + b});
    if (oa < 0 || ob < 0 || oab < 0) throw Error(Errc::TruncationExceeded, "objects outside the site");
    auto X = std_projective(s, oa), Y = std_projective(s, ob), P = std_projective(s, oab);
    auto T = total_tensor(X, Y);
    auto L = total_layout(*X, *Y);
    NatTrans t{P, T, {}};
    for (int x = 0; x < s->num_objects(); ++x) {
        int n = s->objects[x].n;
        const auto& G = grassmannian(fld, n);
        const auto& hs = s->hom(oab, x);
        Matrix c(T->dim[x], P->dim[x]);
        for (size_t p = 0; p < hs.size(); ++p) {
            const Matrix& g = s->mors[hs[p]].m;
            Matrix g1 = block(g, 0, 0, n, a), g2 = block(g, 0, a, n, b);
            Subspace V = image(fld, g1, full_subspace(a)), W = image(fld, g2, full_subspace(b));
            const auto& sm = L.at[x][L.where[x].at({G.index(V), G.index(W)})];
            int e1 = restricted_epi(*s, g1, full_subspace(a));
            int e2 = restricted_epi(*s, g2, full_subspace(b));
            int p1 = position(s->hom(oa, sm.xo), e1), p2 = position(s->hom(ob, sm.yo), e2);
            c(sm.off + p1 * sm.dy + p2, static_cast<int>(p)) = 1;
        }
        t.comp.push_back(std::move(c));
    }
    return check_iso("P^surj_" + std::to_string(a) + " (x)~ P^surj_" + std::to_string(b), t);
}

IsoReport total_tensor_projective_gr(const SitePtr& s, SiteObject ab, SiteObject apbp) {
    const Field& fld = s->field;
    int a = ab.n, b = ab.b, ap = apbp.n, bp = apbp.b;
    int o1 = s->find_object(ab), o2 = s->find_object(apbp), o12 = s->find_object({a + ap, b + bp});
    if (o1 < 0 || o2 < 0 || o12 < 0) throw Error(Errc::TruncationExceeded, "objects outside the site");
    auto X = std_projective(s, o1), Y = std_projective(s, o2), P = std_projective(s, o12);
    auto T = total_tensor(X, Y);
    auto L = total_layout(*X, *Y);
    // coordinates of A + A' ordered as B, B', A / B, A' / B'
    Matrix i1(a + ap, a), i2(a + ap, ap);
    for (int k = 0; k < a; ++k) i1(k < b ? k : b + bp + (k - b), k) = 1;
    for (int k = 0; k < ap; ++k) i2(k < bp ? b + k : b + bp + (a - b) + (k - bp), k) = 1;
    Subspace B1 = coordinate_subspace(a, 0, b), B2 = coordinate_subspace(ap, 0, bp);
    NatTrans t{P, T, {}};
    for (int x = 0; x < s->num_objects(); ++x) {
        const auto& o = s->objects[x];
        const auto& G = grassmannian(fld, o.b);
        const auto& hs = s->hom(o12, x);
        Matrix c(T->dim[x], P->dim[x]);
        for (size_t p = 0; p < hs.size(); ++p) {
            const Matrix& h = s->mors[hs[p]].m;
            Matrix h1 = mul(fld, h, i1), h2 = mul(fld, h, i2);
            Subspace A1 = image(fld, h1, B1), A2 = image(fld, h2, B2);
            const auto& sm = L.at[x][L.where[x].at({G.index(unpad(A1, o.b)), G.index(unpad(A2, o.b))})];
            int p1 = position(s->hom(o1, sm.xo), morphism_at(*s, h1, B1, A1));
            int p2 = position(s->hom(o2, sm.yo), morphism_at(*s, h2, B2, A2));
            c(sm.off + p1 * sm.dy + p2, static_cast<int>(p)) = 1;
        }
        t.comp.push_back(std::move(c));
    }
    return check_iso("P_" + object_text(s->kind, ab) + " (x)~ P_" + object_text(s->kind, apbp), t);
}

IsoReport injective_tensor_check(const SitePtr& s, SiteObject ab, SiteObject apbp) {
    const Field& fld = s->field;
    int a = ab.n, b = ab.b, ap = apbp.n, bp = apbp.b;
    int o1 = s->find_object(ab), o2 = s->find_object(apbp);
    if (o1 < 0 || o2 < 0) throw Error(Errc::TruncationExceeded, "objects outside the site");
    auto I1 = std_injective(s, o1), I2 = std_injective(s, o2);
    auto LHS = tensor(I1, I2);
    // C in Gr(B, B') placed in A + A' with B first in A and B' first in A'
    Matrix emb(a + ap, b + bp);
    for (int k = 0; k < b; ++k) emb(k, k) = 1;
    for (int k = 0; k < bp; ++k) emb(a + k, b + k) = 1;
    std::vector<FunctorPtr> parts;
    std::map<std::string, int> cidx;
    for (const auto& C0 : gr_of_pair(fld, b, bp)) {
        Subspace C = image(fld, emb, C0);
        cidx[C.key()] = static_cast<int>(parts.size());
        parts.push_back(injective_at(s, a + ap, C));
    }
    auto RHS = direct_sum(parts);
    int bound = std::max(s->nmax, a + ap);
    NatTrans t{LHS, RHS, {}};
    for (int x = 0; x < s->num_objects(); ++x) {
        const auto& o = s->objects[x];
        const auto& h1 = s->hom(x, o1);
        const auto& h2 = s->hom(x, o2);
        std::vector<int> off(parts.size(), 0);
        for (size_t k = 1; k < parts.size(); ++k) off[k] = off[k - 1] + parts[k - 1]->dim[x];
        std::vector<std::map<std::string, int>> idx;
        std::vector<Subspace> cs(parts.size());
        for (const auto& [key, k] : cidx) {
            (void)k;
            cs[cidx[key]] = Subspace::parse(key);
        }
        for (size_t k = 0; k < parts.size(); ++k) idx.push_back(index_by_key(maps_into(fld, o, a + ap, cs[k], bound)));
        Matrix c(RHS->dim[x], LHS->dim[x]);
        Subspace Wx = coordinate_subspace(o.n, 0, o.b);
        for (size_t i = 0; i < h1.size(); ++i)
            for (size_t j = 0; j < h2.size(); ++j) {
                Matrix h = vstack(s->mors[h1[i]].m, s->mors[h2[j]].m);
                int k = cidx.at(image(fld, h, Wx).key());
                c(off[k] + idx[k].at(h.key()), static_cast<int>(i * h2.size() + j)) = 1;
            }
        t.comp.push_back(std::move(c));
    }
    return check_iso("I_" + object_text(s->kind, ab) + " (x) I_" + object_text(s->kind, apbp), t);
}

}  // namespace grf
