#include <algorithm>
#include <sstream>

#include "grf/error.hpp"
#include "grf/funcat.hpp"

namespace grf {

int Functor::valid_range() const {
    int r = -1;
    for (int x = 0; x < site->num_objects(); ++x) r = std::max(r, site->objects[x].n);
    return r;
}

long long Functor::total_dim() const {
    long long t = 0;
    for (int d : dim) t += d;
    return t;
}

bool Functor::is_zero() const { return total_dim() == 0; }

BlockLayout::BlockLayout(const std::vector<int>& dims) {
    offset.reserve(dims.size());
    for (int d : dims) {
        offset.push_back(total);
        total += d;
    }
}

namespace {

std::shared_ptr<Functor> blank(const SitePtr& s, const std::string& name) {
    auto F = std::make_shared<Functor>();
    F->site = s;
    F->name = name;
    F->dim.assign(s->num_objects(), 0);
    F->act.resize(s->num_morphisms());
    return F;
}

void zero_actions(Functor& F) {
    for (int i = 0; i < F.site->num_morphisms(); ++i) {
        const auto& m = F.site->mors[i];
        F.act[i] = Matrix(F.dim[m.tgt], F.dim[m.src]);
    }
}

// Position of each morphism inside its own hom set.
std::vector<int> hom_positions(const Site& s) {
    std::vector<int> pos(s.num_morphisms(), -1);
    for (int x = 0; x < s.num_objects(); ++x)
        for (int y = 0; y < s.num_objects(); ++y) {
            const auto& h = s.hom(x, y);
            for (size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<int>(i);
        }
    return pos;
}

// Coordinates of the columns of V (each lying in the row space of the RREF
// basis K) with respect to K: read off the pivot entries.
Matrix coords_in(const Matrix& K, const std::vector<int>& piv, const Matrix& V) {
    Matrix c(K.rows, V.cols);
    for (int i = 0; i < K.rows; ++i)
        for (int j = 0; j < V.cols; ++j) c(i, j) = V(piv[i], j);
    return c;
}

Matrix flip(int n) {
    Matrix J(n, n);
    for (int i = 0; i < n; ++i) J(i, n - 1 - i) = 1;
    return J;
}

}  // namespace

// ------------------------------------------------------------------ checks

CheckResult check_functoriality(const Functor& F, long long max_pairs) {
    CheckResult r;
    const Site& s = *F.site;
    const Field& fld = s.field;
    for (int i = 0; i < s.num_morphisms(); ++i) {
        const auto& m = s.mors[i];
        if (F.act[i].rows != F.dim[m.tgt] || F.act[i].cols != F.dim[m.src]) {
            r.ok = false;
            r.witness = "shape of action at morphism " + std::to_string(i);
            return r;
        }
    }
    for (int x = 0; x < s.num_objects(); ++x) {
        ++r.checked;
        if (F.act[s.ident[x]] != Matrix::identity(F.dim[x])) {
            r.ok = false;
            r.witness = "identity at " + s.object_text(x);
            return r;
        }
    }
    long long total = 0;
    for (int x = 0; x < s.num_objects(); ++x)
        for (int y = 0; y < s.num_objects(); ++y)
            for (int z = 0; z < s.num_objects(); ++z)
                total += static_cast<long long>(s.hom(x, y).size()) * s.hom(y, z).size();
    long long stride = 1;
    if (max_pairs > 0 && total > max_pairs) stride = (total + max_pairs - 1) / max_pairs;
    long long idx = 0;
    for (int x = 0; x < s.num_objects(); ++x)
        for (int y = 0; y < s.num_objects(); ++y)
            for (int f : s.hom(x, y))
                for (int z = 0; z < s.num_objects(); ++z)
                    for (int g : s.hom(y, z)) {
                        if (idx++ % stride) continue;
                        ++r.checked;
                        int gf = s.compose(g, f);
                        if (F.act[gf] != mul(fld, F.act[g], F.act[f])) {
                            r.ok = false;
                            r.witness = "composition " + s.mors[g].m.hex() + " o " + s.mors[f].m.hex() +
                                        " from " + s.object_text(x);
                            return r;
                        }
                    }
    return r;
}

CheckResult check_natural(const NatTrans& t) {
    CheckResult r;
    const Site& s = *t.src->site;
    if (t.src->site != t.tgt->site) {
        r.ok = false;
        r.witness = "different sites";
        return r;
    }
    for (int x = 0; x < s.num_objects(); ++x)
        if (t.comp[x].rows != t.tgt->dim[x] || t.comp[x].cols != t.src->dim[x]) {
            r.ok = false;
            r.witness = "component shape at " + s.object_text(x);
            return r;
        }
    for (int i = 0; i < s.num_morphisms(); ++i) {
        const auto& m = s.mors[i];
        ++r.checked;
        if (mul(s.field, t.tgt->act[i], t.comp[m.src]) != mul(s.field, t.comp[m.tgt], t.src->act[i])) {
            r.ok = false;
            r.witness = "square at " + m.m.hex() + " : " + s.object_text(m.src) + " -> " +
                        s.object_text(m.tgt);
            return r;
        }
    }
    return r;
}

bool is_iso(const NatTrans& t) {
    for (size_t x = 0; x < t.comp.size(); ++x)
        if (!is_invertible(t.src->field(), t.comp[x])) return false;
    return true;
}

bool same_values(const Functor& A, const Functor& B) {
    return A.site == B.site && A.dim == B.dim && A.act == B.act;
}

// ------------------------------------------------------------------ basic functors

FunctorPtr constant(const SitePtr& s, const std::string& name) {
    auto F = blank(s, name);
    F->dim.assign(s->num_objects(), 1);
    for (auto& a : F->act) a = Matrix::identity(1);
    return F;
}

FunctorPtr zero_functor(const SitePtr& s) {
    auto F = blank(s, "0");
    zero_actions(*F);
    return F;
}

FunctorPtr std_projective(const SitePtr& s, int obj) {
    if (obj < 0 || obj >= s->num_objects()) throw Error(Errc::TruncationExceeded, "object not in site");
    auto F = blank(s, "P_" + s->object_text(obj));
    auto pos = hom_positions(*s);
    for (int x = 0; x < s->num_objects(); ++x) F->dim[x] = static_cast<int>(s->hom(obj, x).size());
    zero_actions(*F);
    for (int i = 0; i < s->num_morphisms(); ++i) {
        const auto& m = s->mors[i];
        const auto& src = s->hom(obj, m.src);
        for (size_t j = 0; j < src.size(); ++j) F->act[i](pos[s->compose(i, src[j])], j) = 1;
    }
    auto pres = std::make_shared<Presentation>();
    pres->gen_obj = {obj};
    std::vector<Elem> g(F->dim[obj], 0);
    g[pos[s->ident[obj]]] = 1;
    pres->gen_vec = {g};
    pres->relations_complete = true;
    F->presentation = pres;
    return F;
}

FunctorPtr std_injective(const SitePtr& s, int obj) {
    if (obj < 0 || obj >= s->num_objects()) throw Error(Errc::TruncationExceeded, "object not in site");
    auto F = blank(s, "I_" + s->object_text(obj));
    auto pos = hom_positions(*s);
    for (int x = 0; x < s->num_objects(); ++x) F->dim[x] = static_cast<int>(s->hom(x, obj).size());
    zero_actions(*F);
    for (int i = 0; i < s->num_morphisms(); ++i) {
        const auto& m = s->mors[i];
        const auto& tgt = s->hom(m.tgt, obj);
        for (size_t j = 0; j < tgt.size(); ++j) F->act[i](j, pos[s->compose(tgt[j], i)]) = 1;
    }
    return F;
}

FunctorPtr linearize(const SitePtr& s, const std::vector<int>& sizes,
                     const std::vector<std::vector<int>>& maps, const std::string& name) {
    if (static_cast<int>(sizes.size()) != s->num_objects() ||
        static_cast<int>(maps.size()) != s->num_morphisms())
        throw Error(Errc::NonFunctorialData, "table size does not match the site");
    auto F = blank(s, name);
    F->dim = sizes;
    zero_actions(*F);
    for (int i = 0; i < s->num_morphisms(); ++i) {
        const auto& m = s->mors[i];
        if (static_cast<int>(maps[i].size()) != sizes[m.src])
            throw Error(Errc::NonFunctorialData, "map size mismatch");
        for (int j = 0; j < sizes[m.src]; ++j) {
            int t = maps[i][j];
            if (t >= sizes[m.tgt]) throw Error(Errc::NonFunctorialData, "map value out of range");
            if (t >= 0) F->act[i](t, j) = 1;
        }
    }
    auto r = check_functoriality(*F);
    if (!r.ok) throw Error(Errc::NonFunctorialData, r.witness);
    return F;
}

FunctorPtr kgr(const SitePtr& s, const std::vector<int>& dims) {
    if (s->kind != SiteKind::E && s->kind != SiteKind::Surj && s->kind != SiteKind::Inj)
        throw Error(Errc::KindMismatch, "k[Gr] lives on E-type sites");
    const Field& fld = s->field;
    auto keep = [&](int d) { return dims.empty() || std::find(dims.begin(), dims.end(), d) != dims.end(); };
    std::string name = "k[Gr";
    if (!dims.empty()) {
        name += "_{";
        for (size_t i = 0; i < dims.size(); ++i) name += (i ? "," : "") + std::to_string(dims[i]);
        name += "}";
    }
    auto F = blank(s, name + "]");
    // basis of k[Gr](E_n): kept subspaces in Grassmannian order
    std::vector<std::vector<int>> idx(s->num_objects());
    for (int x = 0; x < s->num_objects(); ++x) {
        const auto& G = grassmannian(fld, s->objects[x].n);
        idx[x].assign(G.size(), -1);
        int c = 0;
        for (int i = 0; i < G.size(); ++i)
            if (keep(G.subs[i].dim())) idx[x][i] = c++;
        F->dim[x] = c;
    }
    zero_actions(*F);
    for (int i = 0; i < s->num_morphisms(); ++i) {
        const auto& m = s->mors[i];
        const auto& G = grassmannian(fld, s->objects[m.src].n);
        const auto& Gt = grassmannian(fld, s->objects[m.tgt].n);
        for (int j = 0; j < G.size(); ++j) {
            if (idx[m.src][j] < 0) continue;
            int t = idx[m.tgt][Gt.index(image(fld, m.m, G.subs[j]))];
            if (t >= 0) F->act[i](t, idx[m.src][j]) = 1;
        }
    }
    return F;
}

FunctorPtr identity_functor(const SitePtr& s) {
    if (s->kind != SiteKind::E && s->kind != SiteKind::Surj && s->kind != SiteKind::Inj)
        throw Error(Errc::KindMismatch, "identity functor lives on E-type sites");
    auto F = blank(s, "Id");
    for (int x = 0; x < s->num_objects(); ++x) F->dim[x] = s->objects[x].n;
    for (int i = 0; i < s->num_morphisms(); ++i) F->act[i] = s->mors[i].m;
    return F;
}

FunctorPtr iso_functor(const SitePtr& s, int n) {
    int obj = s->find_object({n});
    if (obj < 0) throw Error(Errc::TruncationExceeded, "object not in site");
    auto F = blank(s, "Is_" + std::to_string(n));
    auto pos = hom_positions(*s);
    std::vector<int> autos;
    for (int h : s->hom(obj, obj))
        if (is_invertible(s->field, s->mors[h].m)) autos.push_back(h);
    std::vector<int> where(s->num_morphisms(), -1);
    for (size_t i = 0; i < autos.size(); ++i) where[autos[i]] = static_cast<int>(i);
    F->dim[obj] = static_cast<int>(autos.size());
    zero_actions(*F);
    for (int h : s->hom(obj, obj)) {
        if (!is_invertible(s->field, s->mors[h].m)) continue;
        for (size_t j = 0; j < autos.size(); ++j) F->act[h](where[s->compose(h, autos[j])], j) = 1;
    }
    (void)pos;
    return F;
}

FunctorPtr tensor(const FunctorPtr& A, const FunctorPtr& B) {
    if (A->site != B->site) throw Error(Errc::SiteMismatch, "tensor of functors on different sites");
    auto F = blank(A->site, "(" + A->name + " (x) " + B->name + ")");
    for (int x = 0; x < A->site->num_objects(); ++x) F->dim[x] = A->dim[x] * B->dim[x];
    for (int i = 0; i < A->site->num_morphisms(); ++i) F->act[i] = kron(A->field(), A->act[i], B->act[i]);
    return F;
}

FunctorPtr direct_sum(const std::vector<FunctorPtr>& fs) {
    if (fs.empty()) throw Error(Errc::SiteMismatch, "empty direct sum");
    const SitePtr& s = fs[0]->site;
    std::string name;
    for (const auto& f : fs) {
        if (f->site != s) throw Error(Errc::SiteMismatch, "direct sum on different sites");
        name += (name.empty() ? "" : " + ") + f->name;
    }
    auto F = blank(s, "(" + name + ")");
    for (int x = 0; x < s->num_objects(); ++x)
        for (const auto& f : fs) F->dim[x] += f->dim[x];
    zero_actions(*F);
    for (int i = 0; i < s->num_morphisms(); ++i) {
        int r = 0, c = 0;
        for (const auto& f : fs) {
            set_block(F->act[i], r, c, f->act[i]);
            r += f->act[i].rows;
            c += f->act[i].cols;
        }
    }
    return F;
}

FunctorPtr direct_sum(const FunctorPtr& A, const FunctorPtr& B) { return direct_sum({A, B}); }

// ------------------------------------------------------------------ natural transformations

NatTrans identity_nat(const FunctorPtr& F) {
    NatTrans t{F, F, {}};
    for (int d : F->dim) t.comp.push_back(Matrix::identity(d));
    return t;
}

NatTrans zero_nat(const FunctorPtr& A, const FunctorPtr& B) {
    NatTrans t{A, B, {}};
    for (int x = 0; x < A->site->num_objects(); ++x) t.comp.push_back(Matrix(B->dim[x], A->dim[x]));
    return t;
}

NatTrans compose(const NatTrans& g, const NatTrans& f) {
    if (f.tgt->site != g.src->site || f.tgt->dim != g.src->dim)
        throw Error(Errc::NotComposable, "natural transformations do not compose");
    NatTrans t{f.src, g.tgt, {}};
    for (size_t x = 0; x < f.comp.size(); ++x) t.comp.push_back(mul(f.src->field(), g.comp[x], f.comp[x]));
    return t;
}

NatTrans add(const NatTrans& a, const NatTrans& b) {
    NatTrans t{a.src, a.tgt, {}};
    for (size_t x = 0; x < a.comp.size(); ++x) t.comp.push_back(grf::add(a.src->field(), a.comp[x], b.comp[x]));
    return t;
}

NatTrans scale(Elem c, const NatTrans& a) {
    NatTrans t{a.src, a.tgt, {}};
    for (const auto& m : a.comp) t.comp.push_back(grf::scale(a.src->field(), c, m));
    return t;
}

NatTrans tensor(const NatTrans& a, const NatTrans& b, const FunctorPtr& src, const FunctorPtr& tgt) {
    NatTrans t{src, tgt, {}};
    for (size_t x = 0; x < a.comp.size(); ++x) t.comp.push_back(kron(src->field(), a.comp[x], b.comp[x]));
    return t;
}

bool equal(const NatTrans& a, const NatTrans& b) { return a.comp == b.comp; }

NatTrans sum_inclusion(const std::vector<FunctorPtr>& fs, const FunctorPtr& sum, int i) {
    NatTrans t{fs[i], sum, {}};
    for (int x = 0; x < sum->site->num_objects(); ++x) {
        Matrix m(sum->dim[x], fs[i]->dim[x]);
        int off = 0;
        for (int j = 0; j < i; ++j) off += fs[j]->dim[x];
        for (int k = 0; k < fs[i]->dim[x]; ++k) m(off + k, k) = 1;
        t.comp.push_back(std::move(m));
    }
    return t;
}

NatTrans sum_projection(const std::vector<FunctorPtr>& fs, const FunctorPtr& sum, int i) {
    NatTrans t{sum, fs[i], {}};
    for (int x = 0; x < sum->site->num_objects(); ++x) {
        Matrix m(fs[i]->dim[x], sum->dim[x]);
        int off = 0;
        for (int j = 0; j < i; ++j) off += fs[j]->dim[x];
        for (int k = 0; k < fs[i]->dim[x]; ++k) m(k, off + k) = 1;
        t.comp.push_back(std::move(m));
    }
    return t;
}

SubResult subfunctor(const FunctorPtr& F, const std::vector<Matrix>& rows) {
    const Site& s = *F->site;
    const Field& fld = s.field;
    auto S = blank(F->site, "sub(" + F->name + ")");
    std::vector<Matrix> K(s.num_objects());
    std::vector<std::vector<int>> piv(s.num_objects());
    NatTrans incl{nullptr, F, {}};
    for (int x = 0; x < s.num_objects(); ++x) {
        Subspace W = span(fld, rows[x], F->dim[x]);
        K[x] = W.basis;
        piv[x] = W.pivots();
        S->dim[x] = W.dim();
        incl.comp.push_back(transpose(W.basis));
    }
    for (int i = 0; i < s.num_morphisms(); ++i) {
        const auto& m = s.mors[i];
        Matrix img = mul(fld, F->act[i], incl.comp[m.src]);
        Matrix c = coords_in(K[m.tgt], piv[m.tgt], img);
        if (mul(fld, incl.comp[m.tgt], c) != img)
            throw Error(Errc::NonFunctorialData, "subspace family is not stable at " + s.object_text(m.src));
        S->act[i] = std::move(c);
    }
    incl.src = S;
    return {S, incl};
}

SubResult quotient_functor(const FunctorPtr& F, const std::vector<Matrix>& rows) {
    const Site& s = *F->site;
    const Field& fld = s.field;
    auto Q = blank(F->site, "quot(" + F->name + ")");
    std::vector<Quotient> qs;
    NatTrans proj{F, nullptr, {}};
    for (int x = 0; x < s.num_objects(); ++x) {
        qs.push_back(quotient(fld, F->dim[x], span(fld, rows[x], F->dim[x])));
        Q->dim[x] = qs.back().qdim;
        proj.comp.push_back(qs.back().projection);
    }
    for (int i = 0; i < s.num_morphisms(); ++i) {
        const auto& m = s.mors[i];
        Q->act[i] = mul(fld, qs[m.tgt].projection, mul(fld, F->act[i], qs[m.src].section));
    }
    proj.tgt = Q;
    return {Q, proj};
}

SubResult kernel(const NatTrans& t) {
    std::vector<Matrix> rows;
    for (size_t x = 0; x < t.comp.size(); ++x) rows.push_back(nullspace(t.src->field(), t.comp[x]));
    auto r = subfunctor(t.src, rows);
    std::const_pointer_cast<Functor>(r.obj)->name = "ker";
    return r;
}

SubResult image(const NatTrans& t) {
    std::vector<Matrix> rows;
    for (size_t x = 0; x < t.comp.size(); ++x) rows.push_back(transpose(t.comp[x]));
    auto r = subfunctor(t.tgt, rows);
    std::const_pointer_cast<Functor>(r.obj)->name = "im";
    return r;
}

SubResult cokernel(const NatTrans& t) {
    std::vector<Matrix> rows;
    for (size_t x = 0; x < t.comp.size(); ++x) rows.push_back(transpose(t.comp[x]));
    auto r = quotient_functor(t.tgt, rows);
    std::const_pointer_cast<Functor>(r.obj)->name = "coker";
    return r;
}

// ------------------------------------------------------------------ change of site

SitePtr common_site(const SitePtr& a, const SitePtr& b) {
    if (a == b) return a;
    if (a->kind != b->kind || a->field.q() != b->field.q())
        throw Error(Errc::SiteMismatch, "sites of different kinds or fields");
    std::vector<SiteObject> objs;
    for (const auto& o : a->objects)
        if (b->find_object(o) >= 0) objs.push_back(o);
    return make_site(a->field, a->kind, std::min(a->nmax, b->nmax), a->I, objs);
}

FunctorPtr restrict_to(const FunctorPtr& F, const SitePtr& sub) {
    if (sub == F->site) return F;
    if (sub->kind != F->site->kind) throw Error(Errc::SiteMismatch, "restriction to a site of another kind");
    auto R = blank(sub, F->name);
    std::vector<int> om(sub->num_objects());
    for (int x = 0; x < sub->num_objects(); ++x) {
        om[x] = F->site->find_object(sub->objects[x]);
        if (om[x] < 0) throw Error(Errc::RangeMismatch, "object " + sub->object_text(x) + " out of range");
        R->dim[x] = F->dim[om[x]];
    }
    for (int i = 0; i < sub->num_morphisms(); ++i) {
        const auto& m = sub->mors[i];
        int j = F->site->find(om[m.src], om[m.tgt], m.m);
        if (j < 0) throw Error(Errc::SiteMismatch, "morphism missing in the larger site");
        R->act[i] = F->act[j];
    }
    return R;
}

NatTrans restrict_to(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt) {
    NatTrans r{src, tgt, {}};
    for (int x = 0; x < src->site->num_objects(); ++x) {
        int y = t.src->site->find_object(src->site->objects[x]);
        if (y < 0) throw Error(Errc::RangeMismatch, "object out of range");
        r.comp.push_back(t.comp[y]);
    }
    return r;
}

std::pair<FunctorPtr, FunctorPtr> common_range(const FunctorPtr& A, const FunctorPtr& B) {
    auto s = common_site(A->site, B->site);
    return {restrict_to(A, s), restrict_to(B, s)};
}

FunctorPtr precompose(const FunctorPtr& F, const SitePtr& dom, const SiteMap& m, const std::string& name) {
    auto sub = subsite(dom, [&](const SiteObject& o) {
        auto t = m.on_object(o);
        return t && F->site->find_object(*t) >= 0;
    });
    auto R = blank(sub, name);
    std::vector<int> om(sub->num_objects());
    for (int x = 0; x < sub->num_objects(); ++x) {
        om[x] = F->site->find_object(*m.on_object(sub->objects[x]));
        R->dim[x] = F->dim[om[x]];
    }
    for (int i = 0; i < sub->num_morphisms(); ++i) {
        const auto& mo = sub->mors[i];
        Matrix im = m.on_morphism(mo.m, sub->objects[mo.src], sub->objects[mo.tgt]);
        int j = F->site->find(om[mo.src], om[mo.tgt], im);
        if (j < 0)
            throw Error(Errc::SiteMismatch, m.name + " does not carry " + mo.m.hex() + " into the site");
        R->act[i] = F->act[j];
    }
    return R;
}

NatTrans precompose(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt, const SiteMap& m) {
    NatTrans r{src, tgt, {}};
    for (int x = 0; x < src->site->num_objects(); ++x) {
        int y = t.src->site->find_object(*m.on_object(src->site->objects[x]));
        r.comp.push_back(t.comp[y]);
    }
    return r;
}

void assert_path_closed(const SitePtr& big, const SitePtr& sub) {
    std::vector<char> in(big->num_objects(), 0);
    for (const auto& o : sub->objects) {
        int x = big->find_object(o);
        if (x < 0) throw Error(Errc::SiteMismatch, "subsite object missing from the larger site");
        in[x] = 1;
    }
    for (int x = 0; x < big->num_objects(); ++x) {
        if (!in[x]) continue;
        for (int y = 0; y < big->num_objects(); ++y) {
            if (in[y] || big->hom(x, y).empty()) continue;
            for (int z = 0; z < big->num_objects(); ++z)
                if (in[z] && !big->hom(y, z).empty())
                    throw Error(Errc::SubcategoryNotComplete,
                                "path " + big->object_text(x) + " -> " + big->object_text(y) + " -> " +
                                    big->object_text(z) + " leaves the subcategory");
        }
    }
}

FunctorPtr prolong_zero(const FunctorPtr& F, const SitePtr& big) {
    assert_path_closed(big, F->site);
    auto P = blank(big, "P(" + F->name + ")");
    std::vector<int> om(big->num_objects(), -1);
    for (int x = 0; x < big->num_objects(); ++x) {
        om[x] = F->site->find_object(big->objects[x]);
        if (om[x] >= 0) P->dim[x] = F->dim[om[x]];
    }
    zero_actions(*P);
    for (int i = 0; i < big->num_morphisms(); ++i) {
        const auto& m = big->mors[i];
        if (om[m.src] < 0 || om[m.tgt] < 0) continue;
        P->act[i] = F->act[F->site->find(om[m.src], om[m.tgt], m.m)];
    }
    return P;
}

// ------------------------------------------------------------------ duality

namespace {

struct DualSite {
    SitePtr site;
    std::vector<int> partner;  // dual object -> object of the original site
};

DualSite dual_site(const SitePtr& s) {
    DualSite d;
    switch (s->kind) {
        case SiteKind::E: d.site = s; break;
        case SiteKind::Surj: d.site = make_site(s->field, SiteKind::Inj, s->nmax, s->I, s->objects); break;
        case SiteKind::Inj: d.site = make_site(s->field, SiteKind::Surj, s->nmax, s->I, s->objects); break;
        case SiteKind::GrTilde: {
            std::vector<SiteObject> objs;
            for (const auto& o : s->objects) objs.push_back({o.n, o.n - o.b});
            d.site = make_site(s->field, SiteKind::GrTilde, s->nmax, {}, objs);
            break;
        }
        default: throw Error(Errc::UnsupportedSiteDuality, std::string("no duality on ") + kind_name(s->kind));
    }
    for (const auto& o : d.site->objects) {
        SiteObject p = s->kind == SiteKind::GrTilde ? SiteObject{o.n, o.n - o.b} : o;
        d.partner.push_back(s->find_object(p));
    }
    return d;
}

// The morphism of the original site dual to a morphism of the dual site.
int dual_morphism(const SitePtr& s, const DualSite& d, int i) {
    const auto& m = d.site->mors[i];
    Matrix t = transpose(m.m);
    if (s->kind == SiteKind::GrTilde)
        t = mul(s->field, flip(m.m.cols), mul(s->field, t, flip(m.m.rows)));
    int j = s->find(d.partner[m.tgt], d.partner[m.src], t);
    if (j < 0) throw Error(Errc::UnsupportedSiteDuality, "dual morphism missing");
    return j;
}

}  // namespace

FunctorPtr dual(const FunctorPtr& F) {
    auto d = dual_site(F->site);
    auto D = blank(d.site, "D" + F->name);
    for (int x = 0; x < d.site->num_objects(); ++x) D->dim[x] = F->dim[d.partner[x]];
    for (int i = 0; i < d.site->num_morphisms(); ++i) D->act[i] = transpose(F->act[dual_morphism(F->site, d, i)]);
    return D;
}

NatTrans dual(const NatTrans& t, const FunctorPtr& dsrc, const FunctorPtr& dtgt) {
    auto d = dual_site(t.src->site);
    NatTrans r{dsrc, dtgt, {}};
    for (int x = 0; x < d.site->num_objects(); ++x) r.comp.push_back(transpose(t.comp[d.partner[x]]));
    return r;
}

// ------------------------------------------------------------------ shifts and differences

namespace {

SiteMap translate_map(SiteKind k, int v) {
    bool gr = k == SiteKind::Gr || k == SiteKind::GrTilde;
    return {"+" + std::to_string(v), k, k,
            [v, gr](const SiteObject& o) -> std::optional<SiteObject> {
                return gr ? SiteObject{o.n + v, o.b} : SiteObject{o.n + v};
            },
            [v](const Matrix& m, const SiteObject&, const SiteObject&) {
                return block_diag(m, Matrix::identity(v));
            }};
}

void require_shiftable(const Site& s) {
    switch (s.kind) {
        case SiteKind::E:
        case SiteKind::Surj:
        case SiteKind::Inj:
        case SiteKind::Gr:
        case SiteKind::GrTilde: return;
        default: throw Error(Errc::KindMismatch, std::string("no shift on ") + kind_name(s.kind));
    }
}

}  // namespace

FunctorPtr shift(const FunctorPtr& F, int v) {
    require_shiftable(*F->site);
    if (F->valid_range() < v) throw Error(Errc::InsufficientRange, "shift exhausts the range");
    return precompose(F, F->site, translate_map(F->site->kind, v), "D_" + std::to_string(v) + F->name);
}

NatTrans shift(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt, int v) {
    return precompose(t, src, tgt, translate_map(t.src->site->kind, v));
}

Difference difference(const FunctorPtr& F) {
    const Site& s = *F->site;
    if (s.kind != SiteKind::E && s.kind != SiteKind::Gr)
        throw Error(Errc::KindMismatch, "difference functor needs E or Gr");
    Difference d;
    d.shifted = shift(F, 1);
    const SitePtr& sub = d.shifted->site;
    auto Fr = restrict_to(F, sub);
    d.incl = NatTrans{Fr, d.shifted, {}};
    d.proj = NatTrans{d.shifted, Fr, {}};
    for (int x = 0; x < sub->num_objects(); ++x) {
        SiteObject o = sub->objects[x];
        SiteObject o1 = o;
        o1.n += 1;
        int a = s.find_object(o), b = s.find_object(o1);
        Matrix i(o.n + 1, o.n), p(o.n, o.n + 1);
        for (int k = 0; k < o.n; ++k) i(k, k) = p(k, k) = 1;
        d.incl.comp.push_back(F->act[s.find(a, b, i)]);
        d.proj.comp.push_back(F->act[s.find(b, a, p)]);
    }
    auto k = kernel(d.proj);
    std::const_pointer_cast<Functor>(k.obj)->name = "Delta" + F->name;
    d.delta = k.obj;
    d.delta_incl = k.map;
    return d;
}

std::optional<int> polynomial_degree(const FunctorPtr& F) {
    if (F->is_zero()) return -1;
    // on E_surj and E_inj the shift itself plays the role of the difference
    bool nil = F->site->kind == SiteKind::Surj || F->site->kind == SiteKind::Inj;
    FunctorPtr G = F;
    for (int k = 1;; ++k) {
        if (G->valid_range() < 1) return std::nullopt;
        G = nil ? shift(G, 1) : difference(G).delta;
        if (G->is_zero()) return k - 1;
    }
}

// ------------------------------------------------------------------ scalars and Frobenius

std::vector<ScalarPiece> scalar_decomposition(const FunctorPtr& F) {
    const Site& s = *F->site;
    const Field& fld = s.field;
    int N = s.num_objects();
    bool has_zero = s.kind == SiteKind::E;
    std::vector<Matrix> e0(N);
    for (int x = 0; x < N; ++x) {
        int a = s.ambient(x);
        if (has_zero) {
            int z = s.find(x, x, Matrix(a, a));
            e0[x] = F->act[z];
        } else {
            e0[x] = Matrix(F->dim[x], F->dim[x]);
        }
    }
    std::vector<ScalarPiece> out;
    auto piece = [&](int w, std::vector<Matrix> comps) {
        NatTrans e{F, F, std::move(comps)};
        auto im = image(e);
        std::const_pointer_cast<Functor>(im.obj)->name = F->name + "_w" + std::to_string(w);
        out.push_back({w, im, e});
    };
    if (has_zero) piece(0, e0);
    for (int w = 1; w < fld.q(); ++w) {
        std::vector<Matrix> comps;
        for (int x = 0; x < N; ++x) {
            int a = s.ambient(x);
            Matrix acc(F->dim[x], F->dim[x]);
            for (int l = 1; l < fld.q(); ++l) {
                Elem lam = static_cast<Elem>(l);
                Matrix sc = grf::scale(fld, lam, Matrix::identity(a));
                int h = s.find(x, x, sc);
                if (h < 0) throw Error(Errc::KindMismatch, "scalars are not morphisms of this site");
                Elem c = fld.neg(fld.pow(fld.inv(lam), w));
                add_block(fld, acc, 0, 0, F->act[h], c);
            }
            comps.push_back(mul(fld, acc, sub(fld, Matrix::identity(F->dim[x]), e0[x])));
        }
        piece(w, std::move(comps));
    }
    return out;
}

FunctorPtr weight_summand(const FunctorPtr& F, int weight) {
    for (auto& p : scalar_decomposition(F))
        if (p.weight == weight) return p.part.obj;
    throw Error(Errc::KindMismatch, "no summand of weight " + std::to_string(weight));
}

FunctorPtr frobenius_twist(const FunctorPtr& F) {
    const Site& s = *F->site;
    auto T = blank(F->site, F->name + "^(1)");
    T->dim = F->dim;
    for (int i = 0; i < s.num_morphisms(); ++i) {
        const auto& m = s.mors[i];
        Matrix fm = m.m;
        for (auto& e : fm.a) e = s.field.frob(e);
        int j = s.find(m.src, m.tgt, fm);
        if (j < 0) throw Error(Errc::SiteMismatch, "Frobenius does not preserve the site");
        T->act[i] = F->act[j];
    }
    return T;
}

}  // namespace grf
