#include "grf/sites.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace grf {

const char* kind_name(SiteKind k) {
    switch (k) {
        case SiteKind::E: return "E";
        case SiteKind::Surj: return "E_surj";
        case SiteKind::Inj: return "E_inj";
        case SiteKind::Gr: return "E_Gr";
        case SiteKind::GrTilde: return "E_Gr_tilde";
        case SiteKind::BiGr: return "E_biGr";
        case SiteKind::Prod: return "E_x_E_surj";
    }
    return "?";
}

SiteKind kind_from_name(const std::string& s) {
    for (SiteKind k : {SiteKind::E, SiteKind::Surj, SiteKind::Inj, SiteKind::Gr, SiteKind::GrTilde,
                       SiteKind::BiGr, SiteKind::Prod})
        if (s == kind_name(k)) return k;
    if (s == "surj") return SiteKind::Surj;
    if (s == "inj") return SiteKind::Inj;
    if (s == "gr" || s == "Gr") return SiteKind::Gr;
    if (s == "gr_tilde") return SiteKind::GrTilde;
    if (s == "bigr") return SiteKind::BiGr;
    if (s == "prod") return SiteKind::Prod;
    throw Error(Errc::KindMismatch, "unknown site kind " + s);
}

bool SiteObject::operator<(const SiteObject& o) const {
    if (n != o.n) return n < o.n;
    if (b != o.b) return b < o.b;
    if (w != o.w) return w < o.w;
    return c < o.c;
}

std::string object_text(SiteKind k, const SiteObject& o) {
    std::ostringstream os;
    switch (k) {
        case SiteKind::E:
        case SiteKind::Surj:
        case SiteKind::Inj: os << "E" << o.n; break;
        case SiteKind::Gr:
        case SiteKind::GrTilde: os << "(E" << o.n << ",E" << o.b << ")"; break;
        case SiteKind::BiGr: os << "(E" << o.n << ",B" << o.b << ",W" << o.w << ",c" << o.c << ")"; break;
        case SiteKind::Prod: os << "(E" << o.n << ";E" << o.b << ")"; break;
    }
    return os.str();
}

int Site::find_object(const SiteObject& o) const {
    for (int i = 0; i < num_objects(); ++i)
        if (objects[i] == o) return i;
    return -1;
}

namespace {
std::string mor_key(int s, int t, const Matrix& m) {
    return std::to_string(s) + "," + std::to_string(t) + "," + m.key();
}
}  // namespace

int Site::find(int src, int tgt, const Matrix& m) const {
    auto it = lookup_.find(mor_key(src, tgt, m));
    return it == lookup_.end() ? -1 : it->second;
}

int Site::compose(int g, int f) const {
    if (mors[f].tgt != mors[g].src) throw Error(Errc::NotComposable, "target/source mismatch");
    Matrix m = mul(field, mors[g].m, mors[f].m);
    int r = find(mors[f].src, mors[g].tgt, m);
    if (r < 0) throw Error(Errc::NotComposable, "composite not found in hom set");
    return r;
}

int Site::ambient(int obj) const {
    const auto& o = objects[obj];
    return kind == SiteKind::Prod ? o.n + o.b : o.n;
}

void Site::finalize() {
    int N = num_objects();
    homs_.assign(static_cast<size_t>(N) * N, {});
    lookup_.clear();
    for (int i = 0; i < num_morphisms(); ++i) {
        homs_[mors[i].src * N + mors[i].tgt].push_back(i);
        lookup_[mor_key(mors[i].src, mors[i].tgt, mors[i].m)] = i;
    }
    ident.assign(N, -1);
    for (int x = 0; x < N; ++x) ident[x] = find(x, x, Matrix::identity(ambient(x)));
}

std::vector<SiteObject> standard_objects(SiteKind k, int nmax, const std::vector<int>& I) {
    auto inI = [&](int b) { return I.empty() || std::find(I.begin(), I.end(), b) != I.end(); };
    std::vector<SiteObject> out;
    for (int n = 0; n <= nmax; ++n) {
        switch (k) {
            case SiteKind::E:
            case SiteKind::Surj:
            case SiteKind::Inj: out.push_back({n, 0, 0, 0}); break;
            case SiteKind::Gr:
            case SiteKind::GrTilde:
                for (int b = 0; b <= n; ++b)
                    if (inI(b)) out.push_back({n, b, 0, 0});
                break;
            case SiteKind::BiGr:
                for (int b = 0; b <= n; ++b)
                    for (int w = 0; w <= n; ++w)
                        for (int c = 0; c <= std::min(b, w); ++c)
                            if (b + w - c <= n) out.push_back({n, b, w, c});
                break;
            case SiteKind::Prod:
                for (int b = 0; b <= nmax; ++b)
                    if (inI(b)) out.push_back({n, b, 0, 0});
                break;
        }
    }
    return out;
}

namespace {

Subspace bigr_B(const SiteObject& o) { return coordinate_subspace(o.n, 0, o.b); }
Subspace bigr_W(const SiteObject& o) { return coordinate_subspace(o.n, o.b - o.c, o.w); }

std::vector<Matrix> gr_homs(const Field& F, const SiteObject& x, const SiteObject& y, bool tilde,
                            int bound) {
    int n = x.n, b = x.b, np = y.n, bp = y.b;
    std::vector<Matrix> out;
    auto As = enum_maps(F, b, bp, tilde ? MapKind::All : MapKind::Epi, bound);
    auto Rs = enum_maps(F, n - b, np, MapKind::All, bound);
    for (const auto& A : As)
        for (const auto& R : Rs) {
            Matrix M(np, n);
            set_block(M, 0, 0, A);
            set_block(M, 0, b, R);
            out.push_back(std::move(M));
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Matrix> homs_between(const Field& F, SiteKind k, const SiteObject& x,
                                 const SiteObject& y, int bound) {
    switch (k) {
        case SiteKind::E: return enum_maps(F, x.n, y.n, MapKind::All, bound);
        case SiteKind::Surj: return enum_maps(F, x.n, y.n, MapKind::Epi, bound);
        case SiteKind::Inj: return enum_maps(F, x.n, y.n, MapKind::Mono, bound);
        case SiteKind::Gr: return gr_homs(F, x, y, false, bound);
        case SiteKind::GrTilde: return gr_homs(F, x, y, true, bound);
        case SiteKind::BiGr: {
            std::vector<Matrix> out;
            Subspace Bp = bigr_B(y), Wp = bigr_W(y), B = bigr_B(x), W = bigr_W(x);
            for (auto& m : enum_maps(F, x.n, y.n, MapKind::All, bound))
                if (image(F, m, B) == Bp && image(F, m, W) == Wp) out.push_back(std::move(m));
            return out;
        }
        case SiteKind::Prod: {
            std::vector<Matrix> out;
            auto fs = enum_maps(F, x.n, y.n, MapKind::All, bound);
            auto gs = enum_maps(F, x.b, y.b, MapKind::Epi, bound);
            for (const auto& f : fs)
                for (const auto& g : gs) out.push_back(block_diag(f, g));
            return out;
        }
    }
    return {};
}

}  // namespace

bool admissible(const Field& F, SiteKind k, const SiteObject& x, const SiteObject& y,
                const Matrix& m) {
    switch (k) {
        case SiteKind::E: return m.rows == y.n && m.cols == x.n;
        case SiteKind::Surj: return m.rows == y.n && m.cols == x.n && rank(F, m) == y.n;
        case SiteKind::Inj: return m.rows == y.n && m.cols == x.n && rank(F, m) == x.n;
        case SiteKind::Gr:
            return m.rows == y.n && m.cols == x.n &&
                   image(F, m, coordinate_subspace(x.n, 0, x.b)) == coordinate_subspace(y.n, 0, y.b);
        case SiteKind::GrTilde:
            return m.rows == y.n && m.cols == x.n &&
                   contains(F, coordinate_subspace(y.n, 0, y.b),
                            image(F, m, coordinate_subspace(x.n, 0, x.b)));
        case SiteKind::BiGr:
            return m.rows == y.n && m.cols == x.n && image(F, m, bigr_B(x)) == bigr_B(y) &&
                   image(F, m, bigr_W(x)) == bigr_W(y);
        case SiteKind::Prod: {
            if (m.rows != y.n + y.b || m.cols != x.n + x.b) return false;
            if (!block(m, 0, x.n, y.n, x.b).is_zero() || !block(m, y.n, 0, y.b, x.n).is_zero())
                return false;
            return rank(F, block(m, y.n, x.n, y.b, x.b)) == y.b;
        }
    }
    return false;
}

SitePtr make_site(const Field& F, SiteKind k, int nmax, const std::vector<int>& I,
                  std::vector<SiteObject> objects) {
    static std::mutex mu;
    static std::map<std::string, SitePtr> cache;
    std::sort(objects.begin(), objects.end());
    objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
    std::ostringstream key;
    key << kind_name(k) << "|q" << F.q() << "|N" << nmax << "|I";
    for (int i : I) key << i << ",";
    key << "|";
    for (const auto& o : objects) {
        int amb = k == SiteKind::Prod ? std::max(o.n, o.b) : o.n;
        if (amb > nmax) throw Error(Errc::TruncationExceeded, "object beyond nmax");
        key << o.n << "." << o.b << "." << o.w << "." << o.c << ";";
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
    auto s = std::make_shared<Site>();
    s->kind = k;
    s->field = F;
    s->nmax = nmax;
    s->I = I;
    s->objects = objects;
    s->id = key.str();
    for (int x = 0; x < s->num_objects(); ++x)
        for (int y = 0; y < s->num_objects(); ++y)
            for (auto& m : homs_between(F, k, objects[x], objects[y], nmax))
                s->mors.push_back({x, y, std::move(m)});
    s->finalize();
    cache[key.str()] = s;
    return s;
}

SitePtr standard_site(const Field& F, SiteKind k, int nmax, const std::vector<int>& I) {
    return make_site(F, k, nmax, I, standard_objects(k, nmax, I));
}

SitePtr subsite(const SitePtr& s, const std::function<bool(const SiteObject&)>& pred) {
    std::vector<SiteObject> objs;
    for (const auto& o : s->objects)
        if (pred(o)) objs.push_back(o);
    return make_site(s->field, s->kind, s->nmax, s->I, objs);
}

// ------------------------------------------------------------------ site maps

SiteMap map_D() {
    return {"D", SiteKind::Gr, SiteKind::E,
            [](const SiteObject& o) -> std::optional<SiteObject> { return SiteObject{o.n}; },
            [](const Matrix& m, const SiteObject&, const SiteObject&) { return m; }};
}

SiteMap map_B() {
    return {"B", SiteKind::Gr, SiteKind::Surj,
            [](const SiteObject& o) -> std::optional<SiteObject> { return SiteObject{o.b}; },
            [](const Matrix& m, const SiteObject& x, const SiteObject& y) {
                return block(m, 0, 0, y.b, x.b);
            }};
}

SiteMap map_K() {
    return {"K", SiteKind::Gr, SiteKind::E,
            [](const SiteObject& o) -> std::optional<SiteObject> { return SiteObject{o.n - o.b}; },
            [](const Matrix& m, const SiteObject& x, const SiteObject& y) {
                return block(m, y.b, x.b, y.n - y.b, x.n - x.b);
            }};
}

SiteMap map_L() {
    return {"L", SiteKind::Prod, SiteKind::Gr,
            [](const SiteObject& o) -> std::optional<SiteObject> {
                return SiteObject{o.n + o.b, o.b};
            },
            [](const Matrix& m, const SiteObject& x, const SiteObject& y) {
                Matrix f = block(m, 0, 0, y.n, x.n);
                Matrix g = block(m, y.n, x.n, y.b, x.b);
                return block_diag(g, f);
            }};
}

SiteMap map_diag() {
    return {"diag", SiteKind::Surj, SiteKind::Gr,
            [](const SiteObject& o) -> std::optional<SiteObject> { return SiteObject{o.n, o.n}; },
            [](const Matrix& m, const SiteObject&, const SiteObject&) { return m; }};
}

SiteMap map_DB() {
    return {"DxB", SiteKind::Gr, SiteKind::Prod,
            [](const SiteObject& o) -> std::optional<SiteObject> { return SiteObject{o.n, o.b}; },
            [](const Matrix& m, const SiteObject& x, const SiteObject& y) {
                return block_diag(m, block(m, 0, 0, y.b, x.b));
            }};
}

SiteMap map_KB() {
    return {"KxB", SiteKind::Gr, SiteKind::Prod,
            [](const SiteObject& o) -> std::optional<SiteObject> {
                return SiteObject{o.n - o.b, o.b};
            },
            [](const Matrix& m, const SiteObject& x, const SiteObject& y) {
                return block_diag(block(m, y.b, x.b, y.n - y.b, x.n - x.b),
                                  block(m, 0, 0, y.b, x.b));
            }};
}

SiteMap map_gr_to_tilde() {
    return {"incl", SiteKind::Gr, SiteKind::GrTilde,
            [](const SiteObject& o) -> std::optional<SiteObject> { return o; },
            [](const Matrix& m, const SiteObject&, const SiteObject&) { return m; }};
}

SiteMap map_tilde_reduce() {
    return {"K~", SiteKind::GrTilde, SiteKind::E,
            [](const SiteObject& o) -> std::optional<SiteObject> { return SiteObject{o.n - o.b}; },
            [](const Matrix& m, const SiteObject& x, const SiteObject& y) {
                return block(m, y.b, x.b, y.n - y.b, x.n - x.b);
            }};
}

SiteMap map_translate(int v) {
    return {"+E" + std::to_string(v), SiteKind::E, SiteKind::E,
            [v](const SiteObject& o) -> std::optional<SiteObject> { return SiteObject{o.n + v}; },
            [v](const Matrix& m, const SiteObject&, const SiteObject&) {
                return block_diag(m, Matrix::identity(v));
            }};
}

SiteMap map_translate_gr(int av, int aw) {
    return {"+(E" + std::to_string(av) + ",E" + std::to_string(aw) + ")", SiteKind::E, SiteKind::Gr,
            [av, aw](const SiteObject& o) -> std::optional<SiteObject> {
                return SiteObject{o.n + av, aw};
            },
            [av](const Matrix& m, const SiteObject&, const SiteObject&) {
                return block_diag(Matrix::identity(av), m);
            }};
}

SiteMap map_inclusion(SiteKind from, SiteKind to) {
    return {std::string("incl ") + kind_name(from) + "->" + kind_name(to), from, to,
            [](const SiteObject& o) -> std::optional<SiteObject> { return o; },
            [](const Matrix& m, const SiteObject&, const SiteObject&) { return m; }};
}

CheckResult check_site_map(const SitePtr& src, const SitePtr& tgt, const SiteMap& mp) {
    CheckResult r;
    std::vector<int> oimg(src->num_objects(), -1);
    for (int x = 0; x < src->num_objects(); ++x) {
        auto o = mp.on_object(src->objects[x]);
        if (o) oimg[x] = tgt->find_object(*o);
    }
    std::vector<int> mimg(src->num_morphisms(), -1);
    for (int i = 0; i < src->num_morphisms(); ++i) {
        const auto& f = src->mors[i];
        if (oimg[f.src] < 0 || oimg[f.tgt] < 0) continue;
        Matrix m = mp.on_morphism(f.m, src->objects[f.src], src->objects[f.tgt]);
        mimg[i] = tgt->find(oimg[f.src], oimg[f.tgt], m);
        ++r.checked;
        if (mimg[i] < 0) {
            r.ok = false;
            r.witness = mp.name + " sends " + f.m.hex() + " outside the target site";
            return r;
        }
    }
    for (int x = 0; x < src->num_objects(); ++x) {
        if (oimg[x] < 0) continue;
        if (mimg[src->ident[x]] != tgt->ident[oimg[x]]) {
            r.ok = false;
            r.witness = mp.name + " does not preserve the identity of " + src->object_text(x);
            return r;
        }
    }
    for (int g = 0; g < src->num_morphisms(); ++g) {
        if (mimg[g] < 0) continue;
        int mid = src->mors[g].src;
        for (int x = 0; x < src->num_objects(); ++x) {
            if (oimg[x] < 0) continue;
            for (int f : src->hom(x, mid)) {
                int gf = src->compose(g, f);
                ++r.checked;
                if (mimg[gf] != tgt->compose(mimg[g], mimg[f])) {
                    r.ok = false;
                    r.witness = mp.name + " breaks composition at " + src->mors[g].m.hex() +
                                " o " + src->mors[f].m.hex();
                    return r;
                }
            }
        }
    }
    return r;
}

CheckResult check_site_axioms(const SitePtr& s) {
    CheckResult r;
    const Field& F = s->field;
    for (int x = 0; x < s->num_objects(); ++x) {
        if (s->ident[x] < 0) {
            r.ok = false;
            r.witness = "missing identity at " + s->object_text(x);
            return r;
        }
    }
    for (int g = 0; g < s->num_morphisms(); ++g) {
        const auto& G = s->mors[g];
        if (!admissible(F, s->kind, s->objects[G.src], s->objects[G.tgt], G.m)) {
            r.ok = false;
            r.witness = "inadmissible morphism " + G.m.hex();
            return r;
        }
        if (s->compose(g, s->ident[G.src]) != g || s->compose(s->ident[G.tgt], g) != g) {
            r.ok = false;
            r.witness = "identity not neutral for " + G.m.hex();
            return r;
        }
        for (int x = 0; x < s->num_objects(); ++x)
            for (int f : s->hom(x, G.src)) {
                ++r.checked;
                Matrix m = mul(F, G.m, s->mors[f].m);
                if (s->find(x, G.tgt, m) < 0) {
                    r.ok = false;
                    r.witness = "composite " + m.hex() + " missing";
                    return r;
                }
            }
    }
    return r;
}

CheckResult check_base_dim_monotone(const SitePtr& s) {
    CheckResult r;
    for (const auto& m : s->mors) {
        ++r.checked;
        if (s->objects[m.tgt].b > s->objects[m.src].b) {
            r.ok = false;
            r.witness = "morphism raises base dimension: " + m.m.hex();
            return r;
        }
    }
    return r;
}

// ------------------------------------------------------------------ bijections

namespace {

// Deterministic sample: every k-th element so that at most cap remain.
template <class T>
std::vector<T> sample(const std::vector<T>& v, size_t cap) {
    if (v.size() <= cap) return v;
    std::vector<T> out;
    size_t step = (v.size() + cap - 1) / cap;
    for (size_t i = 0; i < v.size(); i += step) out.push_back(v[i]);
    return out;
}

void compare_sets(BijectionReport& R, const std::vector<std::string>& lhs_images,
                  const std::set<std::string>& rhs) {
    std::set<std::string> img;
    for (const auto& k : lhs_images) {
        if (!img.insert(k).second && R.bijective) {
            R.bijective = false;
            R.witness = "not injective: " + k;
        }
    }
    R.lhs += static_cast<long long>(lhs_images.size());
    R.rhs += static_cast<long long>(rhs.size());
    if (img != rhs && R.bijective) {
        R.bijective = false;
        for (const auto& k : rhs)
            if (!img.count(k)) {
                R.witness = "not surjective, missing " + k;
                break;
            }
        if (R.witness.empty())
            for (const auto& k : img)
                if (!rhs.count(k)) {
                    R.witness = "image outside target: " + k;
                    break;
                }
    }
    ++R.instances;
}

std::vector<Matrix> maps_with_image(const Field& F, int s, const Subspace& V, int bound) {
    std::vector<Matrix> out;
    for (auto& m : enum_maps(F, s, V.n, MapKind::All, bound))
        if (image(F, m, full_subspace(s)) == V) out.push_back(std::move(m));
    return out;
}

std::string epi_sum_key(const Subspace& V, const Subspace& W, const Matrix& g, const Matrix& h) {
    return V.text() + "|" + W.text() + "|" + g.key() + "|" + h.key();
}

}  // namespace

BijectionReport bijection_epi_sum(const Field& F, int a, int b, int e) {
    BijectionReport R;
    R.name = "epi_sum";
    const int bound = 2 * std::max({a, b, e, 1});
    auto phi = [&](const Matrix& f) {
        Matrix g = block(f, 0, 0, f.rows, a), h = block(f, 0, a, f.rows, b);
        return epi_sum_key(image(F, g, full_subspace(a)), image(F, h, full_subspace(b)), g, h);
    };
    auto lhs = enum_maps(F, a + b, e, MapKind::Epi, bound);
    std::vector<std::string> imgs;
    for (const auto& f : lhs) imgs.push_back(phi(f));
    std::set<std::string> rhs;
    const auto& G = grassmannian(F, e);
    for (const auto& V : G.subs)
        for (const auto& W : G.subs) {
            if (sum(F, V, W).dim() != e) continue;
            auto gs = maps_with_image(F, a, V, bound);
            auto hs = maps_with_image(F, b, W, bound);
            for (const auto& g : gs)
                for (const auto& h : hs) rhs.insert(epi_sum_key(V, W, g, h));
        }
    compare_sets(R, imgs, rhs);
    // naturality in E along epis u : E -> E'
    auto sl = sample(lhs, 24);
    for (int ep = 0; ep <= e; ++ep)
        for (const auto& u : sample(enum_maps(F, e, ep, MapKind::Epi, bound), 8))
            for (const auto& f : sl) {
                Matrix g = block(f, 0, 0, e, a), h = block(f, 0, a, e, b);
                Matrix ug = mul(F, u, g), uh = mul(F, u, h);
                std::string pushed = epi_sum_key(image(F, u, image(F, g, full_subspace(a))),
                                                 image(F, u, image(F, h, full_subspace(b))), ug, uh);
                ++R.naturality_checks;
                if (phi(mul(F, u, f)) != pushed && R.natural) {
                    R.natural = false;
                    R.witness = "naturality in E fails at " + u.hex();
                }
            }
    // naturality in A along epis alpha : A' -> A
    for (int a2 = a; a2 <= a + 1; ++a2)
        for (const auto& al : sample(enum_maps(F, a2, a, MapKind::Epi, bound), 8))
            for (const auto& f : sl) {
                Matrix g = block(f, 0, 0, e, a), h = block(f, 0, a, e, b);
                Matrix pre = block_diag(al, Matrix::identity(b));
                Matrix ga = mul(F, g, al);
                std::string pulled =
                    epi_sum_key(image(F, ga, full_subspace(a2)), image(F, h, full_subspace(b)), ga, h);
                Matrix fp = mul(F, f, pre);
                Matrix g2 = block(fp, 0, 0, e, a2), h2 = block(fp, 0, a2, e, b);
                std::string direct = epi_sum_key(image(F, g2, full_subspace(a2)),
                                                 image(F, h2, full_subspace(b)), g2, h2);
                ++R.naturality_checks;
                if (direct != pulled && R.natural) {
                    R.natural = false;
                    R.witness = "naturality in A fails at " + al.hex();
                }
            }
    return R;
}

BijectionReport bijection_hom_gr(const Field& F, int a, int b, int ap) {
    BijectionReport R;
    R.name = "hom_gr";
    const int bound = 2 * std::max({a, ap, 1});
    Subspace B = coordinate_subspace(a, 0, b);
    auto key = [](const Subspace& Bp, const Matrix& f) { return Bp.text() + "|" + f.key(); };
    auto lhs = enum_maps(F, a, ap, MapKind::All, bound);
    std::vector<std::string> imgs;
    for (const auto& f : lhs) imgs.push_back(key(image(F, f, B), f));
    // right side through the skeletal Gr hom sets transported by frames
    std::set<std::string> rhs;
    auto site = make_site(F, SiteKind::Gr, std::max(a, ap), {},
                          standard_objects(SiteKind::Gr, std::max(a, ap)));
    int x = site->find_object({a, b});
    const auto& G = grassmannian(F, ap);
    for (int i = 0; i < G.size(); ++i) {
        int y = site->find_object({ap, G.subs[i].dim()});
        for (int m : site->hom(x, y)) rhs.insert(key(G.subs[i], mul(F, G.frames[i], site->mors[m].m)));
    }
    compare_sets(R, imgs, rhs);
    // pushforward naturality in A'
    auto sl = sample(lhs, 32);
    for (int a2 = 0; a2 <= ap + 1; ++a2)
        for (const auto& u : sample(enum_maps(F, ap, a2, MapKind::All, bound), 8))
            for (const auto& f : sl) {
                ++R.naturality_checks;
                Matrix uf = mul(F, u, f);
                if (key(image(F, uf, B), uf) != key(image(F, u, image(F, f, B)), uf) && R.natural) {
                    R.natural = false;
                    R.witness = "pushforward naturality fails at " + u.hex();
                }
            }
    // naturality in (A, B) along Gr morphisms into (A, B)
    for (int y = 0; y < site->num_objects(); ++y)
        for (int g : sample(site->hom(y, x), 6))
            for (const auto& f : sl) {
                ++R.naturality_checks;
                const auto& gm = site->mors[g];
                Matrix fg = mul(F, f, gm.m);
                Subspace D = coordinate_subspace(site->objects[y].n, 0, site->objects[y].b);
                if (image(F, fg, D) != image(F, f, B) && R.natural) {
                    R.natural = false;
                    R.witness = "naturality in (A,B) fails at " + gm.m.hex();
                }
            }
    return R;
}

BijectionReport bijection_hom_sum_source(const Field& F, SiteObject ab, SiteObject apbp,
                                         SiteObject vw) {
    BijectionReport R;
    R.name = "hom_sum_source";
    const int a = ab.n, b = ab.b, ap = apbp.n, bp = apbp.b, v = vw.n, w = vw.b;
    const int bound = 2 * std::max({a, ap, v, 1});
    Subspace Bs = coordinate_subspace(a, 0, b), Bps = coordinate_subspace(ap, 0, bp);
    Subspace W = coordinate_subspace(v, 0, w);
    Matrix base(b + bp, a + ap);
    for (int i = 0; i < b; ++i) base(i, i) = 1;
    for (int i = 0; i < bp; ++i) base(b + i, a + i) = 1;
    Subspace BB = span(F, base, a + ap);
    auto key = [](const Subspace& W1, const Subspace& W2, const Matrix& g, const Matrix& h) {
        return W1.text() + "|" + W2.text() + "|" + g.key() + "|" + h.key();
    };
    std::vector<Matrix> lhs;
    for (auto& f : enum_maps(F, a + ap, v, MapKind::All, bound))
        if (image(F, f, BB) == W) lhs.push_back(std::move(f));
    auto phi = [&](const Matrix& f) {
        Matrix g = block(f, 0, 0, f.rows, a), h = block(f, 0, a, f.rows, ap);
        return key(image(F, g, Bs), image(F, h, Bps), g, h);
    };
    std::vector<std::string> imgs;
    for (const auto& f : lhs) imgs.push_back(phi(f));
    std::set<std::string> rhs;
    auto site = make_site(F, SiteKind::Gr, std::max({a, ap, v}), {},
                          standard_objects(SiteKind::Gr, std::max({a, ap, v})));
    int xa = site->find_object(ab), xap = site->find_object(apbp);
    const auto& G = grassmannian(F, v);
    for (int i = 0; i < G.size(); ++i) {
        if (!contains(F, W, G.subs[i])) continue;
        for (int j = 0; j < G.size(); ++j) {
            if (!contains(F, W, G.subs[j])) continue;
            if (sum(F, G.subs[i], G.subs[j]) != W) continue;
            int y1 = site->find_object({v, G.subs[i].dim()});
            int y2 = site->find_object({v, G.subs[j].dim()});
            for (int m1 : site->hom(xa, y1))
                for (int m2 : site->hom(xap, y2))
                    rhs.insert(key(G.subs[i], G.subs[j], mul(F, G.frames[i], site->mors[m1].m),
                                   mul(F, G.frames[j], site->mors[m2].m)));
        }
    }
    compare_sets(R, imgs, rhs);
    // naturality along Gr morphisms u : (V, W) -> (V', W')
    int xv = site->find_object(vw);
    auto sl = sample(lhs, 16);
    for (int y = 0; y < site->num_objects(); ++y)
        for (int u : sample(site->hom(xv, y), 4))
            for (const auto& f : sl) {
                const Matrix& um = site->mors[u].m;
                Matrix g = block(f, 0, 0, v, a), h = block(f, 0, a, v, ap);
                std::string pushed = key(image(F, um, image(F, g, Bs)), image(F, um, image(F, h, Bps)),
                                         mul(F, um, g), mul(F, um, h));
                ++R.naturality_checks;
                if (phi(mul(F, um, f)) != pushed && R.natural) {
                    R.natural = false;
                    R.witness = "naturality fails at " + um.hex();
                }
            }
    return R;
}

std::vector<Subspace> gr_of_pair(const Field& F, int b, int bp) {
    std::vector<Subspace> out;
    Matrix p1(b, b + bp), p2(bp, b + bp);
    for (int i = 0; i < b; ++i) p1(i, i) = 1;
    for (int i = 0; i < bp; ++i) p2(i, b + i) = 1;
    for (const auto& C : grassmannian(F, b + bp).subs)
        if (image(F, p1, C).dim() == b && image(F, p2, C).dim() == bp) out.push_back(C);
    return out;
}

BijectionReport bijection_hom_product_target(const Field& F, SiteObject vw, SiteObject ab,
                                             SiteObject apbp) {
    BijectionReport R;
    R.name = "hom_product_target";
    const int v = vw.n, w = vw.b, a = ab.n, b = ab.b, ap = apbp.n, bp = apbp.b;
    const int bound = 2 * std::max({a, ap, v, 1});
    auto site = make_site(F, SiteKind::Gr, std::max({a, ap, v}), {},
                          standard_objects(SiteKind::Gr, std::max({a, ap, v})));
    int xv = site->find_object(vw), xa = site->find_object(ab), xap = site->find_object(apbp);
    Subspace W = coordinate_subspace(v, 0, w);
    // embedding of B + B' into A + A'
    Matrix emb(a + ap, b + bp);
    for (int i = 0; i < b; ++i) emb(i, i) = 1;
    for (int i = 0; i < bp; ++i) emb(a + i, b + i) = 1;
    auto key = [](const Subspace& C, const Matrix& g) { return C.text() + "|" + g.key(); };
    std::vector<std::string> imgs;
    std::vector<Matrix> stacked;
    for (int m1 : site->hom(xv, xa))
        for (int m2 : site->hom(xv, xap)) {
            Matrix g = vstack(site->mors[m1].m, site->mors[m2].m);
            stacked.push_back(g);
            imgs.push_back(key(image(F, g, W), g));
        }
    std::set<std::string> rhs;
    auto all = enum_maps(F, v, a + ap, MapKind::All, bound);
    for (const auto& C0 : gr_of_pair(F, b, bp)) {
        Subspace C = image(F, emb, C0);
        for (const auto& g : all)
            if (image(F, g, W) == C) rhs.insert(key(C, g));
    }
    compare_sets(R, imgs, rhs);
    // pushforward naturality along u : (A, B) -> (A2, B2) acting on the first factor
    auto sl = sample(stacked, 16);
    for (int y = 0; y < site->num_objects(); ++y)
        for (int u : sample(site->hom(xa, y), 4))
            for (const auto& g : sl) {
                const Matrix& um = site->mors[u].m;
                Matrix uu = block_diag(um, Matrix::identity(ap));
                Matrix ug = mul(F, uu, g);
                ++R.naturality_checks;
                if (key(image(F, ug, W), ug) != key(image(F, uu, image(F, g, W)), ug) && R.natural) {
                    R.natural = false;
                    R.witness = "pushforward naturality fails at " + um.hex();
                }
            }
    return R;
}

BijectionReport site_adjunction_diag_B(const Field& F, int nmax) {
    BijectionReport R;
    R.name = "diag_B";
    auto gr = standard_site(F, SiteKind::Gr, nmax);
    auto su = standard_site(F, SiteKind::Surj, nmax);
    for (int A = 0; A <= nmax; ++A)
        for (int y = 0; y < gr->num_objects(); ++y) {
            const auto& o = gr->objects[y];
            int xa = gr->find_object({A, A});
            std::vector<std::string> imgs;
            for (int f : gr->hom(xa, y)) imgs.push_back(block(gr->mors[f].m, 0, 0, o.b, A).key());
            std::set<std::string> rhs;
            for (int e : su->hom(su->find_object({A}), su->find_object({o.b})))
                rhs.insert(su->mors[e].m.key());
            compare_sets(R, imgs, rhs);
            // the inverse e -> incl o e recovers f
            for (int f : gr->hom(xa, y)) {
                Matrix e = block(gr->mors[f].m, 0, 0, o.b, A);
                Matrix back(o.n, A);
                set_block(back, 0, 0, e);
                ++R.naturality_checks;
                if (back != gr->mors[f].m && R.natural) {
                    R.natural = false;
                    R.witness = "inverse does not recover " + gr->mors[f].m.hex();
                }
            }
        }
    return R;
}

BijectionReport site_adjunction_L_DB(const Field& F, int nmax) {
    BijectionReport R;
    R.name = "L_DxB";
    auto gr = standard_site(F, SiteKind::Gr, nmax);
    auto pr = make_site(F, SiteKind::Prod, nmax, {}, [&] {
        std::vector<SiteObject> o;
        for (int a = 0; a <= nmax; ++a)
            for (int b = 0; a + b <= nmax; ++b) o.push_back({a, b});
        return o;
    }());
    auto L = map_L();
    for (int x = 0; x < pr->num_objects(); ++x)
        for (int y = 0; y < gr->num_objects(); ++y) {
            const auto& ab = pr->objects[x];
            const auto& vw = gr->objects[y];
            int lx = gr->find_object(*L.on_object(ab));
            std::vector<std::string> imgs;
            for (int f : gr->hom(lx, y)) {
                const Matrix& m = gr->mors[f].m;
                Matrix fa = block(m, 0, ab.b, vw.n, ab.n);
                Matrix fb = block(m, 0, 0, vw.b, ab.b);
                imgs.push_back(fa.key() + "|" + fb.key());
            }
            std::set<std::string> rhs;
            for (const auto& fa : enum_maps(F, ab.n, vw.n, MapKind::All, nmax))
                for (const auto& fb : enum_maps(F, ab.b, vw.b, MapKind::Epi, nmax))
                    rhs.insert(fa.key() + "|" + fb.key());
            compare_sets(R, imgs, rhs);
        }
    // triangle identities on every object
    auto DB = map_DB();
    for (int x = 0; x < pr->num_objects(); ++x) {
        const auto& o = pr->objects[x];
        // unit (A, B) -> (B + A, B) then counit at L(A, B)
        Matrix ia(o.b + o.n, o.n);
        for (int i = 0; i < o.n; ++i) ia(o.b + i, i) = 1;
        Matrix unit = block_diag(ia, Matrix::identity(o.b));
        Matrix Lunit = L.on_morphism(unit, o, {o.b + o.n, o.b});
        int v = o.b + o.n, w = o.b;
        Matrix counit(v, w + v);
        for (int i = 0; i < w; ++i) counit(i, i) = 1;
        set_block(counit, 0, w, Matrix::identity(v));
        ++R.naturality_checks;
        if (mul(F, counit, Lunit) != Matrix::identity(v) && R.natural) {
            R.natural = false;
            R.witness = "triangle identity for L fails at " + object_text(SiteKind::Prod, o);
        }
    }
    for (int y = 0; y < gr->num_objects(); ++y) {
        const auto& o = gr->objects[y];
        Matrix ia(o.b + o.n, o.n);
        for (int i = 0; i < o.n; ++i) ia(o.b + i, i) = 1;
        Matrix unit = block_diag(ia, Matrix::identity(o.b));
        Matrix counit(o.n, o.b + o.n);
        for (int i = 0; i < o.b; ++i) counit(i, i) = 1;
        set_block(counit, 0, o.b, Matrix::identity(o.n));
        Matrix DBc = DB.on_morphism(counit, {o.b + o.n, o.b}, o);
        ++R.naturality_checks;
        if (mul(F, DBc, unit) != Matrix::identity(o.n + o.b) && R.natural) {
            R.natural = false;
            R.witness = "triangle identity for DxB fails at " + object_text(SiteKind::Gr, o);
        }
    }
    return R;
}

}  // namespace grf
