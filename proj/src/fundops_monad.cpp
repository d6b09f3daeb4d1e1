#include <algorithm>

#include "fundops_internal.hpp"

namespace grf {

using namespace detail;

namespace {

// The monad T F = F o D o B o L on E x E_surj, as a site map.
SiteMap t_map() { return compose_maps(map_DB(), map_L()); }

FunctorPtr T_of(const FunctorPtr& F) { return precompose(F, F->site, t_map(), "T(" + F->name + ")"); }

// A -> B + A with B in front.
Matrix unit_part(int a, int b) {
    Matrix u(b + a, a);
    for (int i = 0; i < a; ++i) u(b + i, i) = 1;
    return u;
}

Matrix split_part(int a, int b) { return transpose(unit_part(a, b)); }

// B + B + A -> B + A adding the two copies of B.
Matrix mult_part(int a, int b) {
    Matrix m(b + a, 2 * b + a);
    for (int i = 0; i < b; ++i) m(i, i) = m(i, b + i) = 1;
    for (int i = 0; i < a; ++i) m(b + i, 2 * b + i) = 1;
    return m;
}

SiteObject lift(const SiteObject& x) { return {x.n + x.b, x.b}; }

// F -> T F on the site of TF.
NatTrans unit_of(const FunctorPtr& F, const FunctorPtr& TF) {
    return make_nat(restrict_to(F, TF->site), TF, [&](const SiteObject& x) {
        return act_at(*F, x, lift(x), block_diag(unit_part(x.n, x.b), Matrix::identity(x.b)));
    });
}

// p : T F -> F on the site of TF.
NatTrans split_of(const FunctorPtr& F, const FunctorPtr& TF) {
    return make_nat(TF, restrict_to(F, TF->site), [&](const SiteObject& x) {
        return act_at(*F, lift(x), x, block_diag(split_part(x.n, x.b), Matrix::identity(x.b)));
    });
}

// mu : T T F -> T F on the site of TTF.
NatTrans mult_of(const FunctorPtr& F, const FunctorPtr& TF, const FunctorPtr& TTF) {
    return make_nat(TTF, restrict_to(TF, TTF->site), [&](const SiteObject& x) {
        return act_at(*F, lift(lift(x)), lift(x), block_diag(mult_part(x.n, x.b), Matrix::identity(x.b)));
    });
}

void require_kind(const FunctorPtr& F, SiteKind k, const char* what) {
    if (F->site->kind != k)
        throw Error(Errc::SiteMismatch, std::string(what) + " expects a functor on " + kind_name(k));
}

void fail(bool& flag, std::string& witness, const std::string& why) {
    if (flag && witness.empty()) witness = why;
    flag = false;
}

Matrix section_of(const Field& fld, const Matrix& proj) {
    return factor_through(fld, proj, Matrix::identity(proj.rows));
}

}  // namespace

FunctorPtr boxtimes(const FunctorPtr& F, const FunctorPtr& G) {
    require_kind(F, SiteKind::E, "boxtimes");
    require_kind(G, SiteKind::Surj, "boxtimes");
    std::vector<SiteObject> objs;
    for (const auto& a : F->site->objects)
        for (const auto& b : G->site->objects) objs.push_back({a.n, b.n});
    int nmax = std::max(F->site->nmax, G->site->nmax);
    auto s = make_site(F->field(), SiteKind::Prod, nmax, {}, objs);
    auto R = std::make_shared<Functor>();
    R->site = s;
    R->name = F->name + "[x]" + G->name;
    for (const auto& o : s->objects) R->dim.push_back(dim_at(*F, {o.n}) * dim_at(*G, {o.b}));
    for (const auto& m : s->mors) {
        const auto& x = s->objects[m.src];
        const auto& y = s->objects[m.tgt];
        Matrix f = block(m.m, 0, 0, y.n, x.n);
        Matrix g = block(m.m, y.n, x.n, y.b, x.b);
        R->act.push_back(kron(F->field(), act_at(*F, {x.n}, {y.n}, f), act_at(*G, {x.b}, {y.b}, g)));
    }
    return R;
}

MonadData monad_build(const FunctorPtr& F) {
    require_kind(F, SiteKind::Prod, "monad");
    auto TF = T_of(F);
    auto TTF = T_of(TF);
    const auto& s2 = TTF->site;
    MonadData d;
    d.F = restrict_to(F, s2);
    d.T = restrict_to(TF, s2);
    d.TT = TTF;
    d.unit = restrict_nat(unit_of(F, TF), s2);
    d.mult = mult_of(F, TF, TTF);
    d.split = restrict_nat(split_of(F, TF), s2);
    d.delta = kernel(d.split);
    return d;
}

MonadReport monad_check(const FunctorPtr& F) {
    require_kind(F, SiteKind::Prod, "monad");
    MonadReport r;
    auto TF = T_of(F);
    auto TTF = T_of(TF);
    auto TTTF = T_of(TTF);
    const auto& s1 = TF->site;
    const auto& s2 = TTF->site;
    const auto& s3 = TTTF->site;
    auto F1 = restrict_to(F, s1);
    auto u = unit_of(F, TF);
    auto p = split_of(F, TF);
    auto mu = mult_of(F, TF, TTF);
    for (const auto* t : {&u, &p, &mu}) {
        auto c = check_natural(*t);
        r.checked += c.checked;
        if (!c.ok) fail(r.module, r.witness, "structure map not natural: " + c.witness);
    }

    if (!is_identity(compose(p, u))) fail(r.unit_split, r.witness, "p u is not the identity");

    auto u_T = unit_of(TF, TTF);
    if (!is_identity(compose(mu, u_T))) fail(r.left_unit, r.witness, "mu u_T is not the identity");

    auto Tu = precompose(u, T_of(F1), TTF, t_map());
    if (!is_identity(compose(mu, Tu))) fail(r.right_unit, r.witness, "mu T(u) is not the identity");

    auto mu3 = restrict_nat(mu, s3);
    auto Tmu = precompose(mu, TTTF, T_of(restrict_to(TF, s2)), t_map());
    auto mu_T = mult_of(TF, TTF, TTTF);
    if (!equal(compose(mu3, Tmu), compose(mu3, mu_T))) fail(r.assoc, r.witness, "mu T(mu) differs from mu mu_T");

    auto p2 = restrict_nat(p, s2);
    auto Tp = precompose(p, TTF, T_of(F1), t_map());
    if (!equal(compose(p2, mu), compose(p2, Tp))) fail(r.module, r.witness, "p mu differs from p T(p)");
    r.checked += s1->num_objects() + s2->num_objects() + s3->num_objects();
    return r;
}

ModuleData module_structure(const FunctorPtr& X) {
    require_kind(X, SiteKind::Gr, "module structure");
    auto sX = sigma(X);
    auto TsX = T_of(sX);
    ModuleData d;
    d.sX = restrict_to(sX, TsX->site);
    d.TsX = TsX;
    d.mtilde = make_nat(TsX, d.sX, [&](const SiteObject& x) {
        return act_at(*X, {2 * x.b + x.n, x.b}, {x.b + x.n, x.b}, mult_part(x.n, x.b));
    });
    d.delta = kernel(split_of(sX, TsX));
    d.m = compose(d.mtilde, d.delta.map);
    return d;
}

FunctorPtr eta(const FunctorPtr& X) {
    auto c = cokernel(module_structure(X).m);
    std::const_pointer_cast<Functor>(c.obj)->name = "eta(" + X->name + ")";
    return c.obj;
}

NatTrans detail::eta_nat(const NatTrans& t, const FunctorPtr& src, const FunctorPtr& tgt) {
    const Field& fld = t.src->field();
    auto mx = module_structure(t.src), my = module_structure(t.tgt);
    auto cx = cokernel(mx.m), cy = cokernel(my.m);
    auto st = precompose(t, mx.sX, my.sX, map_L());
    NatTrans r{src, tgt, {}};
    for (size_t x = 0; x < st.comp.size(); ++x)
        r.comp.push_back(
            mul(fld, cy.map.comp[x], mul(fld, st.comp[x], section_of(fld, cx.map.comp[x]))));
    return r;
}

ThetaModuleReport theta_as_module_check(const FunctorPtr& F) {
    require_kind(F, SiteKind::Prod, "theta module check");
    const Field& fld = F->field();
    ThetaModuleReport r;
    auto ms = module_structure(theta(F));
    for (size_t x = 0; x < ms.m.comp.size(); ++x) {
        ++r.checked;
        if (!ms.m.comp[x].is_zero())
            fail(r.m_zero, r.witness, "m is nonzero at " + ms.m.src->site->object_text(static_cast<int>(x)));
    }
    const Site& s = *F->site;
    for (const auto& o : s.objects) {
        int n = o.n, b = o.b;
        if (b > n || s.find_object({n + b, b}) < 0 || s.find_object({n - b, b}) < 0) continue;
        Matrix Ib = Matrix::identity(b);
        Matrix p(n, n + b), q(n, n + b), pi(n - b, n);
        for (int i = 0; i < n; ++i) p(i, i) = q(i, i) = 1;
        for (int i = 0; i < b; ++i) q(i, n + i) = 1;
        for (int i = 0; i < n - b; ++i) pi(i, b + i) = 1;
        Matrix Fp = act_at(*F, {n + b, b}, o, block_diag(p, Ib));
        Matrix Fq = act_at(*F, {n + b, b}, o, block_diag(q, Ib));
        Matrix Fpi = act_at(*F, o, {n - b, b}, block_diag(pi, Ib));
        Matrix d = sub(fld, Fp, Fq);
        int dim_mid = Fpi.cols, dim_right = Fpi.rows;
        int rpi = rank(fld, Fpi);
        ++r.checked;
        std::string at = object_text(SiteKind::Prod, o);
        if (rpi != dim_right) fail(r.pi_surjective, r.witness, "F(pi) not onto at " + at);
        if (!mul(fld, Fpi, d).is_zero() || rank(fld, d) != dim_mid - rpi)
            fail(r.sequence_exact, r.witness, "sequence not exact at " + at);
    }
    return r;
}

// ------------------------------------------------------------------ canonical resolution

namespace {

// (V, W) -> ((n+1) w + v, w): n+1 copies of W in front of V.
SiteMap c_map(int n) {
    return {"C" + std::to_string(n), SiteKind::Gr, SiteKind::Gr,
            [n](const SiteObject& o) -> std::optional<SiteObject> {
                return SiteObject{(n + 1) * o.b + o.n, o.b};
            },
            [n](const Matrix& m, const SiteObject& x, const SiteObject& y) {
                Matrix g = block(m, 0, 0, y.b, x.b);
                Matrix r = m;
                for (int i = 0; i <= n; ++i) r = block_diag(g, r);
                return r;
            }};
}

SiteObject c_obj(int n, const SiteObject& x) { return {(n + 1) * x.b + x.n, x.b}; }

// Drops the j-th copy of W (1 <= j <= n).
Matrix del(int j, int n, const SiteObject& x) {
    int w = x.b, src = (n + 1) * w + x.n;
    Matrix d(src - w, src);
    for (int i = 0, k = 0; i < src; ++i) {
        if (i >= j * w && i < (j + 1) * w) continue;
        d(k++, i) = 1;
    }
    return d;
}

// (r_0, ..., r_n, v) -> (r_0 - r_n, ..., r_{n-1} - r_n, v + r_n).
Matrix face(const Field& fld, int n, const SiteObject& x) {
    int w = x.b, v = x.n;
    Matrix e(n * w + v, (n + 1) * w + v);
    Elem m1 = fld.neg(1);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < w; ++i) {
            e(k * w + i, k * w + i) = 1;
            e(k * w + i, n * w + i) = m1;
        }
    for (int i = 0; i < v; ++i) e(n * w + i, (n + 1) * w + i) = 1;
    for (int i = 0; i < w; ++i) e(n * w + i, n * w + i) = fld.add(e(n * w + i, n * w + i), 1);
    return e;
}

}  // namespace

Resolution resolution_terms(const FunctorPtr& X, int max_terms) {
    require_kind(X, SiteKind::Gr, "canonical resolution");
    const Field& fld = X->field();
    Resolution R;
    std::vector<NatTrans> incl;
    for (int n = 0; n < max_terms; ++n) {
        auto C = precompose(X, X->site, c_map(n), "C" + std::to_string(n));
        if (C->site->num_objects() == 0) break;
        std::vector<Matrix> rows;
        for (const auto& x : C->site->objects) {
            Matrix K(0, dim_at(*C, x));
            for (int j = 1; j <= n; ++j)
                K = vstack(K, act_at(*X, c_obj(n, x), c_obj(n - 1, x), del(j, n, x)));
            rows.push_back(nullspace(fld, K));
        }
        auto sub = subfunctor(C, rows);
        auto term = std::const_pointer_cast<Functor>(sub.obj);
        term->name = "R" + std::to_string(n) + "(" + X->name + ")";
        const auto& s = term->site;
        if (n == 0) {
            R.augmentation = make_nat(term, restrict_to(X, s), [&](const SiteObject& x) {
                return mul(fld, act_at(*X, c_obj(0, x), x, face(fld, 0, x)),
                           sub.map.comp[s->find_object(x)]);
            });
        } else {
            const auto& prev = R.terms.back();
            const auto& pincl = incl.back();
            R.diffs.push_back(make_nat(term, restrict_to(prev, s), [&](const SiteObject& x) {
                Matrix img = mul(fld, act_at(*X, c_obj(n, x), c_obj(n - 1, x), face(fld, n, x)),
                                 sub.map.comp[s->find_object(x)]);
                return factor_through(fld, pincl.comp[prev->site->find_object(x)], img);
            }));
        }
        R.terms.push_back(term);
        incl.push_back(sub.map);
    }
    if (!R.terms.empty()) {
        const auto& s0 = R.terms[0]->site;
        R.zero_from.assign(s0->num_objects(), -1);
        for (int x = 0; x < s0->num_objects(); ++x)
            for (size_t n = 0; n < R.terms.size(); ++n) {
                int y = R.terms[n]->site->find_object(s0->objects[x]);
                if (y >= 0 && R.terms[n]->dim[y] == 0) {
                    R.zero_from[x] = static_cast<int>(n);
                    break;
                }
            }
    }
    return R;
}

ResolutionReport canonical_resolution(const FunctorPtr& X, int max_terms) {
    const Field& fld = X->field();
    ResolutionReport r;
    Resolution R;
    try {
        R = resolution_terms(X, max_terms);
    } catch (const Error& e) {
        if (e.code() != Errc::NotNatural) throw;
        r.complex = false;
        r.witness = std::string("differential leaves the next term: ") + e.what();
        return r;
    }
    if (R.terms.empty()) throw Error(Errc::InsufficientRange, "no term of the resolution fits in range");
    // maps[k] : R_k -> R_{k-1}, with R_{-1} = X and maps[0] the augmentation.
    std::vector<NatTrans> maps{R.augmentation};
    for (const auto& d : R.diffs) maps.push_back(d);
    for (const auto& t : maps) {
        auto c = check_natural(t);
        r.checked += c.checked;
        if (!c.ok) fail(r.complex, r.witness, "differential not natural: " + c.witness);
    }
    for (size_t k = 1; k < maps.size(); ++k) {
        const auto& s = maps[k].src->site;
        auto prev = restrict_nat(maps[k - 1], s);
        for (size_t x = 0; x < maps[k].comp.size(); ++x)
            if (!mul(fld, prev.comp[x], maps[k].comp[x]).is_zero())
                fail(r.complex, r.witness, "d d is nonzero at " + s->object_text(static_cast<int>(x)));
    }
    // Exactness at R_{k-1} (X for k = 0) on the objects where R_k is defined.
    for (size_t k = 0; k < maps.size(); ++k) {
        const auto& s = maps[k].src->site;
        for (int x = 0; x < s->num_objects(); ++x) {
            ++r.checked;
            int in = rank(fld, maps[k].comp[x]);
            int mid = maps[k].tgt->dim[x];
            int out = 0;
            if (k > 0) {
                const auto& o = maps[k - 1];
                out = rank(fld, o.comp[o.src->site->find_object(s->objects[x])]);
            }
            if (in != mid - out)
                fail(r.exact, r.witness,
                     "not exact at term " + std::to_string(static_cast<int>(k) - 1) + ", object " +
                         s->object_text(x));
        }
    }
    for (size_t n = 0; n < R.terms.size(); ++n)
        if (!R.terms[n]->is_zero()) r.length = static_cast<int>(n);
    r.degree = polynomial_degree(X);
    if (r.degree && r.length > *r.degree + 1) {
        r.length_bounded = false;
        if (r.witness.empty()) r.witness = "length exceeds degree + 1";
    }
    return r;
}

IsoReport eta_tensor_check(const FunctorPtr& X, const FunctorPtr& Y) {
    auto [Xc, Yc] = common_range(X, Y);
    const Field& fld = Xc->field();
    auto XY = tensor(Xc, Yc);
    auto mx = module_structure(Xc), my = module_structure(Yc), mxy = module_structure(XY);
    auto cx = cokernel(mx.m), cy = cokernel(my.m), cxy = cokernel(mxy.m);
    auto rhs = tensor(cx.obj, cy.obj);
    NatTrans t{cxy.obj, rhs, {}};
    std::string bad;
    for (size_t x = 0; x < cxy.map.comp.size(); ++x) {
        Matrix pp = kron(fld, cx.map.comp[x], cy.map.comp[x]);
        if (!mul(fld, pp, mxy.m.comp[x]).is_zero() && bad.empty())
            bad = "quotient map does not kill the image of m at " + cxy.obj->site->object_text(static_cast<int>(x));
        t.comp.push_back(mul(fld, pp, section_of(fld, cxy.map.comp[x])));
    }
    auto r = check_iso("eta tensor", t);
    if (!bad.empty()) {
        r.natural = false;
        r.witness = bad;
    }
    return r;
}

}  // namespace grf
