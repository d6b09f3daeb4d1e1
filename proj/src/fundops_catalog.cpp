#include <algorithm>
#include <map>
#include <memory>

#include "fundops_internal.hpp"

namespace grf {

namespace detail {

Subspace pad(const Subspace& W, int n) {
    Subspace P;
    P.n = n;
    P.basis = Matrix(W.dim(), n);
    set_block(P.basis, 0, 0, W.basis);
    return P;
}

Subspace unpad(const Subspace& W, int b) {
    Subspace P;
    P.n = b;
    P.basis = block(W.basis, 0, 0, W.dim(), b);
    return P;
}

std::vector<int> sum_offsets(const Functor& X, const SumSpec& S, int x) {
    std::vector<int> off;
    int acc = 0;
    for (int o : S.summ[x]) {
        off.push_back(acc);
        acc += X.dim[o];
    }
    off.push_back(acc);
    return off;
}

FunctorPtr build_sum(const Functor& X, const SumSpec& S, const std::string& name) {
    const Site& t = *S.target;
    auto R = std::make_shared<Functor>();
    R->site = S.target;
    R->name = name;
    std::vector<std::vector<int>> off(t.num_objects());
    for (int x = 0; x < t.num_objects(); ++x) {
        off[x] = sum_offsets(X, S, x);
        R->dim.push_back(off[x].back());
    }
    for (int i = 0; i < t.num_morphisms(); ++i) {
        const auto& m = t.mors[i];
        Matrix a(R->dim[m.tgt], R->dim[m.src]);
        for (const auto& c : S.comps[i]) set_block(a, off[m.tgt][c.to], off[m.src][c.from], X.act[c.mor]);
        R->act.push_back(std::move(a));
    }
    return R;
}

NatTrans build_sum_nat(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt, const SumSpec& S) {
    NatTrans r{src, tgt, {}};
    for (int x = 0; x < S.target->num_objects(); ++x) {
        Matrix c(tgt->dim[x], src->dim[x]);
        int ro = 0, co = 0;
        for (int o : S.summ[x]) {
            set_block(c, ro, co, t.comp[o]);
            ro += t.tgt->dim[o];
            co += t.src->dim[o];
        }
        r.comp.push_back(std::move(c));
    }
    return r;
}

namespace {

bool in_I(const std::vector<int>& I, int d) {
    return I.empty() || std::find(I.begin(), I.end(), d) != I.end();
}

void require_interval(const std::vector<int>& I) {
    if (I.empty()) return;
    auto s = I;
    std::sort(s.begin(), s.end());
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] != s[i - 1] + 1)
            throw Error(Errc::HypothesisViolated, "Grassmannian integral needs an interval of dimensions");
}

void require_kind(const Site& s, SiteKind k, const char* what) {
    if (s.kind != k)
        throw Error(Errc::SiteMismatch, std::string(what) + " expects a functor on " + kind_name(k) +
                                            ", got " + kind_name(s.kind));
}

using Cache = std::map<std::string, std::shared_ptr<SumSpec>>;

// Per target object, position of each Grassmannian index among the summands.
using Positions = std::vector<std::vector<int>>;

}  // namespace

const SumSpec& omega_spec(const SitePtr& gr) {
    static Cache cache;
    auto& slot = cache[gr->id];
    if (slot) return *slot;
    require_kind(*gr, SiteKind::Gr, "omega");
    require_interval(gr->I);
    const Field& fld = gr->field;
    auto S = std::make_shared<SumSpec>();
    std::vector<SiteObject> objs;
    for (int n = 0; n <= gr->nmax; ++n) {
        bool ok = true;
        for (int w = 0; w <= n; ++w)
            if (in_I(gr->I, w) && gr->find_object({n, w}) < 0) ok = false;
        if (ok) objs.push_back({n});
    }
    S->target = make_site(fld, SiteKind::E, gr->nmax, {}, objs);
    const Site& t = *S->target;
    Positions pos(t.num_objects());
    S->summ.resize(t.num_objects());
    S->label.resize(t.num_objects());
    for (int x = 0; x < t.num_objects(); ++x) {
        const auto& G = grassmannian(fld, t.objects[x].n);
        pos[x].assign(G.size(), -1);
        for (int i = 0; i < G.size(); ++i) {
            if (!in_I(gr->I, G.subs[i].dim())) continue;
            pos[x][i] = static_cast<int>(S->summ[x].size());
            S->summ[x].push_back(gr->find_object({t.objects[x].n, G.subs[i].dim()}));
            S->label[x].push_back(G.subs[i]);
        }
    }
    S->comps.resize(t.num_morphisms());
    for (int i = 0; i < t.num_morphisms(); ++i) {
        const auto& m = t.mors[i];
        const auto& Gp = grassmannian(fld, t.objects[m.tgt].n);
        for (size_t k = 0; k < S->label[m.src].size(); ++k) {
            const Subspace& W = S->label[m.src][k];
            Subspace Wp = image(fld, m.m, W);
            if (!in_I(gr->I, Wp.dim())) continue;
            S->comps[i].push_back({static_cast<int>(k), pos[m.tgt][Gp.index(Wp)], morphism_at(*gr, m.m, W, Wp)});
        }
    }
    slot = S;
    return *slot;
}

const SumSpec& varpi_spec(const SitePtr& surj) {
    static Cache cache;
    auto& slot = cache[surj->id];
    if (slot) return *slot;
    require_kind(*surj, SiteKind::Surj, "varpi");
    const Field& fld = surj->field;
    auto S = std::make_shared<SumSpec>();
    std::vector<SiteObject> objs;
    for (int n = 0; n <= surj->nmax; ++n) {
        bool ok = true;
        for (int w = 0; w <= n; ++w)
            if (surj->find_object({w}) < 0) ok = false;
        if (ok) objs.push_back({n});
    }
    S->target = make_site(fld, SiteKind::E, surj->nmax, {}, objs);
    const Site& t = *S->target;
    S->summ.resize(t.num_objects());
    S->label.resize(t.num_objects());
    for (int x = 0; x < t.num_objects(); ++x) {
        const auto& G = grassmannian(fld, t.objects[x].n);
        for (const auto& W : G.subs) {
            S->summ[x].push_back(surj->find_object({W.dim()}));
            S->label[x].push_back(W);
        }
    }
    S->comps.resize(t.num_morphisms());
    for (int i = 0; i < t.num_morphisms(); ++i) {
        const auto& m = t.mors[i];
        const auto& Gp = grassmannian(fld, t.objects[m.tgt].n);
        for (size_t k = 0; k < S->label[m.src].size(); ++k) {
            const Subspace& W = S->label[m.src][k];
            S->comps[i].push_back(
                {static_cast<int>(k), Gp.index(image(fld, m.m, W)), restricted_epi(*surj, m.m, W)});
        }
    }
    slot = S;
    return *slot;
}

const SumSpec& varpi_inj_spec(const SitePtr& inj) {
    static Cache cache;
    auto& slot = cache[inj->id];
    if (slot) return *slot;
    require_kind(*inj, SiteKind::Inj, "varpi_inj");
    const Field& fld = inj->field;
    auto S = std::make_shared<SumSpec>();
    std::vector<SiteObject> objs;
    for (int n = 0; n <= inj->nmax; ++n) {
        bool ok = true;
        for (int w = 0; w <= n; ++w)
            if (inj->find_object({w}) < 0) ok = false;
        if (ok) objs.push_back({n});
    }
    S->target = make_site(fld, SiteKind::E, inj->nmax, {}, objs);
    const Site& t = *S->target;
    S->summ.resize(t.num_objects());
    S->label.resize(t.num_objects());
    for (int x = 0; x < t.num_objects(); ++x) {
        int n = t.objects[x].n;
        for (const auto& W : grassmannian(fld, n).subs) {
            S->summ[x].push_back(inj->find_object({n - W.dim()}));
            S->label[x].push_back(W);
        }
    }
    S->comps.resize(t.num_morphisms());
    for (int i = 0; i < t.num_morphisms(); ++i) {
        const auto& m = t.mors[i];
        int n = t.objects[m.src].n, np = t.objects[m.tgt].n;
        const auto& G = grassmannian(fld, n);
        const auto& Gp = grassmannian(fld, np);
        for (int j = 0; j < Gp.size(); ++j) {
            const Subspace& Wp = Gp.subs[j];
            int k = G.index(preimage(fld, m.m, Wp));
            const Subspace& W = G.subs[k];
            Matrix M = mul(fld, Gp.frame_inv[j], mul(fld, m.m, G.frames[k]));
            Matrix q = block(M, Wp.dim(), W.dim(), np - Wp.dim(), n - W.dim());
            int mor = inj->find(S->summ[m.src][k], S->summ[m.tgt][j], q);
            if (mor < 0) throw Error(Errc::SiteMismatch, "induced monomorphism missing from E_inj");
            S->comps[i].push_back({k, j, mor});
        }
    }
    slot = S;
    return *slot;
}

const SumSpec& frak_J_spec(const SitePtr& gr) {
    static Cache cache;
    auto& slot = cache[gr->id];
    if (slot) return *slot;
    require_kind(*gr, SiteKind::Gr, "frak_J");
    const Field& fld = gr->field;
    auto S = std::make_shared<SumSpec>();
    std::vector<SiteObject> objs;
    for (const auto& o : standard_objects(SiteKind::GrTilde, gr->nmax)) {
        bool ok = true;
        for (int w = 0; w <= o.b; ++w)
            if (gr->find_object({o.n, w}) < 0) ok = false;
        if (ok) objs.push_back(o);
    }
    S->target = make_site(fld, SiteKind::GrTilde, gr->nmax, {}, objs);
    const Site& t = *S->target;
    S->summ.resize(t.num_objects());
    S->label.resize(t.num_objects());
    for (int x = 0; x < t.num_objects(); ++x) {
        const auto& o = t.objects[x];
        for (const auto& W : grassmannian(fld, o.b).subs) {
            S->summ[x].push_back(gr->find_object({o.n, W.dim()}));
            S->label[x].push_back(pad(W, o.n));
        }
    }
    S->comps.resize(t.num_morphisms());
    for (int i = 0; i < t.num_morphisms(); ++i) {
        const auto& m = t.mors[i];
        int bp = t.objects[m.tgt].b;
        const auto& Gp = grassmannian(fld, bp);
        for (size_t k = 0; k < S->label[m.src].size(); ++k) {
            const Subspace& P = S->label[m.src][k];
            Subspace Pp = image(fld, m.m, P);
            S->comps[i].push_back(
                {static_cast<int>(k), Gp.index(unpad(Pp, bp)), morphism_at(*gr, m.m, P, Pp)});
        }
    }
    slot = S;
    return *slot;
}

const SumSpec& cal_J_spec(const SitePtr& gr) {
    static Cache cache;
    auto& slot = cache[gr->id];
    if (slot) return *slot;
    require_kind(*gr, SiteKind::Gr, "cal_J");
    const Field& fld = gr->field;
    auto S = std::make_shared<SumSpec>();
    std::vector<SiteObject> objs;
    for (const auto& o : gr->objects) {
        bool ok = true;
        for (int w = 0; w <= o.b; ++w)
            if (gr->find_object({o.n - w, o.b - w}) < 0) ok = false;
        if (ok) objs.push_back(o);
    }
    S->target = make_site(fld, SiteKind::Gr, gr->nmax, gr->I, objs);
    const Site& t = *S->target;
    S->summ.resize(t.num_objects());
    S->label.resize(t.num_objects());
    for (int x = 0; x < t.num_objects(); ++x) {
        const auto& o = t.objects[x];
        for (const auto& W : grassmannian(fld, o.b).subs) {
            S->summ[x].push_back(gr->find_object({o.n - W.dim(), o.b - W.dim()}));
            S->label[x].push_back(pad(W, o.n));
        }
    }
    S->comps.resize(t.num_morphisms());
    for (int i = 0; i < t.num_morphisms(); ++i) {
        const auto& m = t.mors[i];
        const auto& ox = t.objects[m.src];
        const auto& oy = t.objects[m.tgt];
        const auto& G = grassmannian(fld, ox.n);
        const auto& Gp = grassmannian(fld, oy.n);
        const auto& Gb = grassmannian(fld, oy.b);
        for (size_t k = 0; k < S->label[m.src].size(); ++k) {
            const Subspace& P = S->label[m.src][k];
            Subspace Pp = image(fld, m.m, P);
            Matrix M = mul(fld, Gp.frame_inv[Gp.index(Pp)], mul(fld, m.m, G.frames[G.index(P)]));
            Matrix q = block(M, Pp.dim(), P.dim(), oy.n - Pp.dim(), ox.n - P.dim());
            int to = Gb.index(unpad(Pp, oy.b));
            int mor = gr->find(S->summ[m.src][k], S->summ[m.tgt][to], q);
            if (mor < 0) throw Error(Errc::SiteMismatch, "induced quotient morphism missing from E_Gr");
            S->comps[i].push_back({static_cast<int>(k), to, mor});
        }
    }
    slot = S;
    return *slot;
}

const SumSpec& omega_tilde_spec(const SitePtr& tilde, bool prime) {
    static Cache cache[2];
    auto& slot = cache[prime ? 1 : 0][tilde->id];
    if (slot) return *slot;
    require_kind(*tilde, SiteKind::GrTilde, "omega_tilde");
    const Field& fld = tilde->field;
    auto S = std::make_shared<SumSpec>();
    std::vector<SiteObject> objs;
    for (int n = 0; n <= tilde->nmax; ++n) {
        bool ok = true;
        for (int w = 0; w <= n; ++w)
            if (tilde->find_object({n, w}) < 0) ok = false;
        if (ok) objs.push_back({n});
    }
    S->target = make_site(fld, SiteKind::E, tilde->nmax, {}, objs);
    const Site& t = *S->target;
    S->summ.resize(t.num_objects());
    S->label.resize(t.num_objects());
    for (int x = 0; x < t.num_objects(); ++x) {
        int n = t.objects[x].n;
        for (const auto& B : grassmannian(fld, n).subs) {
            S->summ[x].push_back(tilde->find_object({n, B.dim()}));
            S->label[x].push_back(B);
        }
    }
    S->comps.resize(t.num_morphisms());
    for (int i = 0; i < t.num_morphisms(); ++i) {
        const auto& m = t.mors[i];
        const auto& G = grassmannian(fld, t.objects[m.src].n);
        const auto& Gp = grassmannian(fld, t.objects[m.tgt].n);
        if (!prime) {
            for (int k = 0; k < G.size(); ++k) {
                Subspace Bp = image(fld, m.m, G.subs[k]);
                S->comps[i].push_back({k, Gp.index(Bp), morphism_at(*tilde, m.m, G.subs[k], Bp)});
            }
        } else {
            for (int j = 0; j < Gp.size(); ++j) {
                int k = G.index(preimage(fld, m.m, Gp.subs[j]));
                S->comps[i].push_back({k, j, morphism_at(*tilde, m.m, G.subs[k], Gp.subs[j])});
            }
        }
    }
    slot = S;
    return *slot;
}

SiteMap compose_maps(const SiteMap& second, const SiteMap& first) {
    return {second.name + "." + first.name, first.from, second.to,
            [=](const SiteObject& o) -> std::optional<SiteObject> {
                auto a = first.on_object(o);
                if (!a) return std::nullopt;
                return second.on_object(*a);
            },
            [=](const Matrix& m, const SiteObject& x, const SiteObject& y) {
                return second.on_morphism(first.on_morphism(m, x, y), *first.on_object(x),
                                          *first.on_object(y));
            }};
}

int dim_at(const Functor& G, const SiteObject& x) {
    int o = G.site->find_object(x);
    if (o < 0) throw Error(Errc::RangeMismatch, G.name + " is not defined at " + object_text(G.site->kind, x));
    return G.dim[o];
}

Matrix act_at(const Functor& G, const SiteObject& x, const SiteObject& y, const Matrix& m) {
    const Site& s = *G.site;
    int a = s.find_object(x), b = s.find_object(y);
    if (a < 0 || b < 0) throw Error(Errc::RangeMismatch, G.name + " is not defined on the requested objects");
    int i = s.find(a, b, m);
    if (i < 0) throw Error(Errc::SiteMismatch, "morphism " + m.hex() + " missing from " + s.id);
    return G.act[i];
}

NatTrans make_nat(const FunctorPtr& src, const FunctorPtr& tgt,
                  const std::function<Matrix(const SiteObject&)>& comp) {
    if (src->site != tgt->site) throw Error(Errc::SiteMismatch, "natural transformation between sites");
    NatTrans t{src, tgt, {}};
    for (int x = 0; x < src->site->num_objects(); ++x) {
        Matrix c = comp(src->site->objects[x]);
        if (c.rows != tgt->dim[x] || c.cols != src->dim[x])
            throw Error(Errc::DimensionMismatch, "component of the wrong size at " + src->site->object_text(x));
        t.comp.push_back(std::move(c));
    }
    return t;
}

SitePtr meet(const SitePtr& a, const SitePtr& b) { return common_site(a, b); }

NatTrans restrict_nat(const NatTrans& t, const SitePtr& s) {
    if (t.src->site == s) return t;
    return restrict_to(t, restrict_to(t.src, s), restrict_to(t.tgt, s));
}

Matrix factor_through(const Field& F, const Matrix& mono, const Matrix& target) {
    Matrix X;
    if (!solve(F, mono, target, X)) throw Error(Errc::NotNatural, "map does not factor through the subobject");
    return X;
}

bool same_nat(const NatTrans& a, const NatTrans& b) {
    if (a.comp.size() != b.comp.size()) return false;
    for (size_t x = 0; x < a.comp.size(); ++x)
        if (a.comp[x] != b.comp[x]) return false;
    return true;
}

bool is_identity(const NatTrans& t) {
    for (const auto& c : t.comp)
        if (c != Matrix::identity(c.rows)) return false;
    return true;
}

}  // namespace detail

using namespace detail;

namespace {

// F o m on the objects of the standard skeleton whose image lies in F's site.
// Filtering before building keeps large skeletons (E x E_surj) out of memory.
FunctorPtr pull(const FunctorPtr& F, SiteKind k, const std::vector<int>& I, const SiteMap& m,
                const std::string& name) {
    std::vector<SiteObject> objs;
    for (const auto& o : standard_objects(k, F->site->nmax, I)) {
        auto t = m.on_object(o);
        if (t && F->site->find_object(*t) >= 0) objs.push_back(o);
    }
    return precompose(F, make_site(F->field(), k, F->site->nmax, I, objs), m, name);
}

std::string wrap(const char* op, const FunctorPtr& F) { return std::string(op) + "(" + F->name + ")"; }

}  // namespace

FunctorPtr iota(const FunctorPtr& F, const std::vector<int>& I) {
    require_kind(*F->site, SiteKind::E, "iota");
    return pull(F, SiteKind::Gr, I, map_D(), wrap("iota", F));
}

FunctorPtr kappa(const FunctorPtr& F, const std::vector<int>& I) {
    require_kind(*F->site, SiteKind::E, "kappa");
    return pull(F, SiteKind::Gr, I, map_K(), wrap("kappa", F));
}

FunctorPtr rho(const FunctorPtr& A, const std::vector<int>& I) {
    require_kind(*A->site, SiteKind::Surj, "rho");
    return pull(A, SiteKind::Gr, I, map_B(), wrap("rho", A));
}

FunctorPtr epsilon(const FunctorPtr& X) {
    require_kind(*X->site, SiteKind::Gr, "epsilon");
    return pull(X, SiteKind::Surj, {}, map_diag(), wrap("epsilon", X));
}

FunctorPtr xi(const FunctorPtr& F) {
    require_kind(*F->site, SiteKind::Prod, "xi");
    return pull(F, SiteKind::Gr, F->site->I, map_DB(), wrap("xi", F));
}

FunctorPtr theta(const FunctorPtr& F) {
    require_kind(*F->site, SiteKind::Prod, "theta");
    return pull(F, SiteKind::Gr, F->site->I, map_KB(), wrap("theta", F));
}

FunctorPtr sigma(const FunctorPtr& X) {
    require_kind(*X->site, SiteKind::Gr, "sigma");
    return pull(X, SiteKind::Prod, X->site->I, map_L(), wrap("sigma", X));
}

FunctorPtr omega(const FunctorPtr& X) { return build_sum(*X, omega_spec(X->site), wrap("omega", X)); }

FunctorPtr varpi(const FunctorPtr& F) { return build_sum(*F, varpi_spec(F->site), wrap("varpi", F)); }

FunctorPtr o_surj(const FunctorPtr& F) {
    require_kind(*F->site, SiteKind::E, "o");
    return pull(F, SiteKind::Surj, {}, map_inclusion(SiteKind::Surj, SiteKind::E), wrap("o", F));
}

FunctorPtr o_inj(const FunctorPtr& F) {
    require_kind(*F->site, SiteKind::E, "o_inj");
    return pull(F, SiteKind::Inj, {}, map_inclusion(SiteKind::Inj, SiteKind::E),
                      wrap("o_inj", F));
}

FunctorPtr varpi_inj(const FunctorPtr& X) {
    return build_sum(*X, varpi_inj_spec(X->site), wrap("varpi_inj", X));
}

FunctorPtr frak_J(const FunctorPtr& X) { return build_sum(*X, frak_J_spec(X->site), wrap("J", X)); }

FunctorPtr frak_N(const FunctorPtr& Y) {
    require_kind(*Y->site, SiteKind::GrTilde, "frak_N");
    return pull(Y, SiteKind::Gr, Y->site->I, map_gr_to_tilde(), wrap("N", Y));
}

FunctorPtr cal_I(const FunctorPtr& X) {
    auto R = std::const_pointer_cast<Functor>(frak_N(frak_J(X)));
    R->name = wrap("I", X);
    return R;
}

FunctorPtr cal_J(const FunctorPtr& X) { return build_sum(*X, cal_J_spec(X->site), wrap("calJ", X)); }

FunctorPtr kappa_tilde(const FunctorPtr& F) {
    require_kind(*F->site, SiteKind::E, "kappa_tilde");
    return pull(F, SiteKind::GrTilde, {}, map_tilde_reduce(), wrap("kappa~", F));
}

FunctorPtr omega_tilde(const FunctorPtr& Y) {
    return build_sum(*Y, omega_tilde_spec(Y->site, false), wrap("omega~", Y));
}

FunctorPtr omega_tilde_prime(const FunctorPtr& Y) {
    return build_sum(*Y, omega_tilde_spec(Y->site, true), wrap("omega~'", Y));
}

NatTrans Fundamental::operator()(const NatTrans& t) const {
    return on_nat(t, on_functor(t.src), on_functor(t.tgt));
}

namespace {

Fundamental precomposition(const std::string& name, std::function<FunctorPtr(const FunctorPtr&)> f,
                           SiteMap m) {
    return {name, std::move(f),
            [m](const NatTrans& t, const FunctorPtr& s, const FunctorPtr& g) { return precompose(t, s, g, m); }};
}

Fundamental summation(const std::string& name, std::function<FunctorPtr(const FunctorPtr&)> f,
                      std::function<const SumSpec&(const SitePtr&)> spec) {
    return {name, std::move(f), [spec](const NatTrans& t, const FunctorPtr& s, const FunctorPtr& g) {
                return build_sum_nat(t, s, g, spec(t.src->site));
            }};
}

}  // namespace

Fundamental fundamental(const FundamentalFunctorId& id) {
    const auto& n = id.name;
    auto I = id.I;
    if (n == "iota") return precomposition(n, [I](const FunctorPtr& F) { return iota(F, I); }, map_D());
    if (n == "kappa") return precomposition(n, [I](const FunctorPtr& F) { return kappa(F, I); }, map_K());
    if (n == "rho") return precomposition(n, [I](const FunctorPtr& F) { return rho(F, I); }, map_B());
    if (n == "epsilon") return precomposition(n, epsilon, map_diag());
    if (n == "xi") return precomposition(n, xi, map_DB());
    if (n == "theta") return precomposition(n, theta, map_KB());
    if (n == "sigma") return precomposition(n, sigma, map_L());
    if (n == "o") return precomposition(n, o_surj, map_inclusion(SiteKind::Surj, SiteKind::E));
    if (n == "o_inj") return precomposition(n, o_inj, map_inclusion(SiteKind::Inj, SiteKind::E));
    if (n == "frak_N") return precomposition(n, frak_N, map_gr_to_tilde());
    if (n == "kappa_tilde") return precomposition(n, kappa_tilde, map_tilde_reduce());
    if (n == "omega") return summation(n, omega, omega_spec);
    if (n == "varpi") return summation(n, varpi, varpi_spec);
    if (n == "varpi_inj") return summation(n, varpi_inj, varpi_inj_spec);
    if (n == "frak_J") return summation(n, frak_J, frak_J_spec);
    if (n == "cal_J") return summation(n, cal_J, cal_J_spec);
    if (n == "omega_tilde")
        return summation(n, omega_tilde, [](const SitePtr& s) -> const SumSpec& { return omega_tilde_spec(s, false); });
    if (n == "omega_tilde_prime")
        return summation(n, omega_tilde_prime,
                         [](const SitePtr& s) -> const SumSpec& { return omega_tilde_spec(s, true); });
    if (n == "cal_I")
        return {n, cal_I, [](const NatTrans& t, const FunctorPtr& s, const FunctorPtr& g) {
                    const auto& spec = frak_J_spec(t.src->site);
                    auto js = frak_J(t.src), jt = frak_J(t.tgt);
                    return precompose(build_sum_nat(t, js, jt, spec), s, g, map_gr_to_tilde());
                }};
    if (n == "eta") return {n, eta, eta_nat};
    throw Error(Errc::ConfigError, "unknown fundamental functor '" + n + "'");
}

FunctorPtr apply_fundamental(const FundamentalFunctorId& id, const FunctorPtr& F) { return fundamental(id)(F); }

std::vector<std::string> fundamental_names() {
    return {"iota",  "kappa",  "rho",    "epsilon",   "xi",          "theta",       "sigma",
            "omega", "varpi",  "o",      "o_inj",     "varpi_inj",   "eta",         "frak_J",
            "frak_N", "cal_I", "cal_J",  "kappa_tilde", "omega_tilde", "omega_tilde_prime"};
}

}  // namespace grf
