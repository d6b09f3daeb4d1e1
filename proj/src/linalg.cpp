#include "grf/linalg.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>
#include <sstream>

namespace grf {

namespace {
const char kHex[] = "0123456789abcdef";
}

Matrix::Matrix(int r, int c, std::vector<Elem> entries) : rows(r), cols(c), a(std::move(entries)) {
    if (a.size() != static_cast<size_t>(r) * c)
        throw Error(Errc::DimensionMismatch, "entry count does not match shape");
}

Matrix Matrix::identity(int n) {
    Matrix M(n, n);
    for (int i = 0; i < n; ++i) M(i, i) = 1;
    return M;
}

bool Matrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](Elem e) { return e == 0; });
}

bool Matrix::operator<(const Matrix& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    return a < o.a;
}

std::string Matrix::key() const {
    std::string s = std::to_string(rows) + "x" + std::to_string(cols) + ":";
    s.reserve(s.size() + a.size());
    for (Elem e : a) s.push_back(kHex[e]);
    return s;
}

std::string Matrix::hex() const {
    std::string s;
    for (int i = 0; i < rows; ++i) {
        if (i) s.push_back('.');
        for (int j = 0; j < cols; ++j) s.push_back(kHex[(*this)(i, j)]);
    }
    return s;
}

Matrix mul(const Field& F, const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw Error(Errc::DimensionMismatch, "mul shape");
    Matrix C(A.rows, B.cols);
    const bool char2 = F.p() == 2;
    for (int i = 0; i < A.rows; ++i) {
        Elem* c = C.row(i);
        const Elem* ar = A.row(i);
        for (int k = 0; k < A.cols; ++k) {
            Elem x = ar[k];
            if (!x) continue;
            const Elem* b = B.row(k);
            if (char2 && x == 1) {
                for (int j = 0; j < B.cols; ++j) c[j] ^= b[j];
            } else if (char2) {
                for (int j = 0; j < B.cols; ++j) c[j] ^= F.mul(x, b[j]);
            } else {
                for (int j = 0; j < B.cols; ++j) c[j] = F.add(c[j], F.mul(x, b[j]));
            }
        }
    }
    return C;
}

Matrix add(const Field& F, const Matrix& A, const Matrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw Error(Errc::DimensionMismatch, "add shape");
    Matrix C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
    return C;
}

Matrix sub(const Field& F, const Matrix& A, const Matrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw Error(Errc::DimensionMismatch, "sub shape");
    Matrix C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
    return C;
}

Matrix scale(const Field& F, Elem c, const Matrix& A) {
    Matrix C(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.mul(c, A.a[i]);
    return C;
}

Matrix transpose(const Matrix& A) {
    Matrix T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

Matrix kron(const Field& F, const Matrix& A, const Matrix& B) {
    Matrix K(A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            Elem x = A(i, j);
            if (!x) continue;
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l)
                    K(i * B.rows + k, j * B.cols + l) = F.mul(x, B(k, l));
        }
    return K;
}

Matrix hstack(const Matrix& A, const Matrix& B) {
    if (A.rows != B.rows) throw Error(Errc::DimensionMismatch, "hstack rows");
    Matrix C(A.rows, A.cols + B.cols);
    set_block(C, 0, 0, A);
    set_block(C, 0, A.cols, B);
    return C;
}

Matrix vstack(const Matrix& A, const Matrix& B) {
    if (A.cols != B.cols) throw Error(Errc::DimensionMismatch, "vstack cols");
    Matrix C(A.rows + B.rows, A.cols);
    set_block(C, 0, 0, A);
    set_block(C, A.rows, 0, B);
    return C;
}

Matrix block_diag(const Matrix& A, const Matrix& B) {
    Matrix C(A.rows + B.rows, A.cols + B.cols);
    set_block(C, 0, 0, A);
    set_block(C, A.rows, A.cols, B);
    return C;
}

Matrix block(const Matrix& A, int r0, int c0, int nr, int nc) {
    Matrix C(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) C(i, j) = A(r0 + i, c0 + j);
    return C;
}

void set_block(Matrix& A, int r0, int c0, const Matrix& B) {
    for (int i = 0; i < B.rows; ++i)
        std::memcpy(A.row(r0 + i) + c0, B.row(i), static_cast<size_t>(B.cols));
}

void add_block(const Field& F, Matrix& A, int r0, int c0, const Matrix& B, Elem c) {
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) {
            Elem x = B(i, j);
            if (x) A(r0 + i, c0 + j) = F.add(A(r0 + i, c0 + j), F.mul(c, x));
        }
}

Matrix select_rows(const Matrix& A, const std::vector<int>& idx) {
    Matrix C(static_cast<int>(idx.size()), A.cols);
    for (size_t i = 0; i < idx.size(); ++i)
        std::memcpy(C.row(static_cast<int>(i)), A.row(idx[i]), static_cast<size_t>(A.cols));
    return C;
}

Matrix select_cols(const Matrix& A, const std::vector<int>& idx) {
    Matrix C(A.rows, static_cast<int>(idx.size()));
    for (int i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < idx.size(); ++j) C(i, static_cast<int>(j)) = A(i, idx[j]);
    return C;
}

std::vector<int> rref_inplace(const Field& F, Matrix& M) {
    std::vector<int> piv;
    const bool char2 = F.p() == 2;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int sel = -1;
        for (int i = r; i < M.rows; ++i)
            if (M(i, c)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < M.cols; ++j) std::swap(M(sel, j), M(r, j));
        Elem* pr = M.row(r);
        if (pr[c] != 1) {
            Elem iv = F.inv(pr[c]);
            for (int j = c; j < M.cols; ++j) pr[j] = F.mul(iv, pr[j]);
        }
        for (int i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            Elem* ri = M.row(i);
            Elem x = ri[c];
            if (!x) continue;
            if (char2 && x == 1) {
                for (int j = c; j < M.cols; ++j) ri[j] ^= pr[j];
            } else {
                Elem nx = F.neg(x);
                for (int j = c; j < M.cols; ++j)
                    if (pr[j]) ri[j] = F.add(ri[j], F.mul(nx, pr[j]));
            }
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

Rref rref(const Field& F, const Matrix& M) {
    Rref R;
    R.m = M;
    R.pivots = rref_inplace(F, R.m);
    R.rank = static_cast<int>(R.pivots.size());
    return R;
}

int rank(const Field& F, const Matrix& M) {
    Matrix W = M;
    return static_cast<int>(rref_inplace(F, W).size());
}

Matrix nullspace(const Field& F, const Matrix& M) {
    Rref R = rref(F, M);
    std::vector<char> is_piv(M.cols, 0);
    for (int c : R.pivots) is_piv[c] = 1;
    std::vector<int> free;
    for (int c = 0; c < M.cols; ++c)
        if (!is_piv[c]) free.push_back(c);
    Matrix N(static_cast<int>(free.size()), M.cols);
    for (size_t k = 0; k < free.size(); ++k) {
        int f = free[k];
        N(static_cast<int>(k), f) = 1;
        for (int i = 0; i < R.rank; ++i) N(static_cast<int>(k), R.pivots[i]) = F.neg(R.m(i, f));
    }
    return N;
}

Matrix left_nullspace(const Field& F, const Matrix& M) { return nullspace(F, transpose(M)); }

bool is_invertible(const Field& F, const Matrix& M) {
    return M.rows == M.cols && rank(F, M) == M.rows;
}

Matrix inverse(const Field& F, const Matrix& M) {
    if (M.rows != M.cols) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
    int n = M.rows;
    Matrix A = hstack(M, Matrix::identity(n));
    auto piv = rref_inplace(F, A);
    if (static_cast<int>(piv.size()) < n || (n > 0 && piv[n - 1] != n - 1))
        throw Error(Errc::DimensionMismatch, "matrix is singular");
    return block(A, 0, n, n, n);
}

bool solve(const Field& F, const Matrix& A, const Matrix& B, Matrix& X) {
    if (A.rows != B.rows) throw Error(Errc::DimensionMismatch, "solve shape");
    Matrix Aug = hstack(A, B);
    auto piv = rref_inplace(F, Aug);
    X = Matrix(A.cols, B.cols);
    for (size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] >= A.cols) return false;
        for (int j = 0; j < B.cols; ++j) X(piv[i], j) = Aug(static_cast<int>(i), A.cols + j);
    }
    return true;
}

// ---------------------------------------------------------------- subspaces

std::vector<int> Subspace::pivots() const {
    std::vector<int> p;
    for (int i = 0; i < basis.rows; ++i)
        for (int j = 0; j < basis.cols; ++j)
            if (basis(i, j)) {
                p.push_back(j);
                break;
            }
    return p;
}

bool Subspace::operator<(const Subspace& o) const {
    if (n != o.n) return n < o.n;
    if (dim() != o.dim()) return dim() < o.dim();
    auto p1 = pivots(), p2 = o.pivots();
    if (p1 != p2) return p1 < p2;
    // free entries in row-major order
    std::vector<char> piv(n, 0);
    for (int c : p1) piv[c] = 1;
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < n; ++j) {
            if (piv[j]) continue;
            if (basis(i, j) != o.basis(i, j)) return basis(i, j) < o.basis(i, j);
        }
    return false;
}

std::string Subspace::text() const {
    return std::to_string(n) + ":" + std::to_string(dim()) + ":" + basis.hex();
}

Subspace Subspace::parse(const std::string& s) {
    auto c1 = s.find(':');
    auto c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw Error(Errc::DimensionMismatch, "malformed subspace text " + s);
    int n = std::stoi(s.substr(0, c1));
    int m = std::stoi(s.substr(c1 + 1, c2 - c1 - 1));
    std::string rows = s.substr(c2 + 1);
    Subspace W;
    W.n = n;
    W.basis = Matrix(m, n);
    int r = 0, c = 0;
    for (char ch : rows) {
        if (ch == '.') {
            ++r;
            c = 0;
            continue;
        }
        int v = (ch >= 'a') ? ch - 'a' + 10 : ch - '0';
        if (r >= m || c >= n) throw Error(Errc::DimensionMismatch, "malformed subspace text " + s);
        W.basis(r, c++) = static_cast<Elem>(v);
    }
    return W;
}

Subspace span(const Field& F, const Matrix& rows, int n) {
    if (rows.cols != n && rows.rows > 0) throw Error(Errc::DimensionMismatch, "span width");
    Subspace W;
    W.n = n;
    if (rows.rows == 0) {
        W.basis = Matrix(0, n);
        return W;
    }
    Matrix M = rows;
    auto piv = rref_inplace(F, M);
    W.basis = block(M, 0, 0, static_cast<int>(piv.size()), n);
    return W;
}

Subspace subspace_from_vectors(const Field& F, const std::vector<std::vector<Elem>>& vecs, int n) {
    Matrix M(static_cast<int>(vecs.size()), n);
    for (size_t i = 0; i < vecs.size(); ++i) {
        if (static_cast<int>(vecs[i].size()) != n)
            throw Error(Errc::DimensionMismatch, "vector length differs from ambient dimension");
        for (int j = 0; j < n; ++j) {
            if (vecs[i][j] >= F.q()) throw Error(Errc::DimensionMismatch, "entry outside field");
            M(static_cast<int>(i), j) = vecs[i][j];
        }
    }
    return span(F, M, n);
}

Subspace zero_subspace(int n) {
    Subspace W;
    W.n = n;
    W.basis = Matrix(0, n);
    return W;
}

Subspace full_subspace(int n) {
    Subspace W;
    W.n = n;
    W.basis = Matrix::identity(n);
    return W;
}

Subspace coordinate_subspace(int n, int lo, int len) {
    Subspace W;
    W.n = n;
    W.basis = Matrix(len, n);
    for (int i = 0; i < len; ++i) W.basis(i, lo + i) = 1;
    return W;
}

Subspace sum(const Field& F, const Subspace& A, const Subspace& B) {
    if (A.n != B.n) throw Error(Errc::DimensionMismatch, "sum of subspaces in different ambients");
    return span(F, vstack(A.basis, B.basis), A.n);
}

Subspace intersect(const Field& F, const Subspace& A, const Subspace& B) {
    if (A.n != B.n) throw Error(Errc::DimensionMismatch, "intersection in different ambients");
    // x A + y B = 0  gives x A in A n B
    Matrix S = vstack(A.basis, B.basis);
    Matrix N = left_nullspace(F, S);
    Matrix xs = block(N, 0, 0, N.rows, A.dim());
    return span(F, mul(F, xs, A.basis), A.n);
}

bool contains(const Field& F, const Subspace& A, const Subspace& B) {
    if (A.n != B.n) throw Error(Errc::DimensionMismatch, "containment in different ambients");
    return sum(F, A, B).dim() == A.dim();
}

bool contains_vector(const Field& F, const Subspace& A, const std::vector<Elem>& v) {
    Matrix r(1, A.n, v);
    return rank(F, vstack(A.basis, r)) == A.dim();
}

Subspace image(const Field& F, const Matrix& f, const Subspace& W) {
    if (f.cols != W.n) throw Error(Errc::DimensionMismatch, "image shape");
    if (W.dim() == 0) return zero_subspace(f.rows);
    return span(F, mul(F, W.basis, transpose(f)), f.rows);
}

Subspace kernel_subspace(const Field& F, const Matrix& f) {
    return span(F, nullspace(F, f), f.cols);
}

Subspace preimage(const Field& F, const Matrix& f, const Subspace& Wp) {
    if (f.rows != Wp.n) throw Error(Errc::DimensionMismatch, "preimage shape");
    Quotient Q = quotient(F, Wp.n, Wp);
    return kernel_subspace(F, mul(F, Q.projection, f));
}

Matrix frame(const Field& F, const Subspace& W) {
    (void)F;
    int n = W.n, m = W.dim();
    Matrix fr(n, n);
    std::vector<char> piv(n, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) fr(j, i) = W.basis(i, j);
    }
    for (int c : W.pivots()) piv[c] = 1;
    int col = m;
    for (int j = 0; j < n; ++j)
        if (!piv[j]) fr(j, col++) = 1;
    return fr;
}

Quotient quotient(const Field& F, int n, const Subspace& W) {
    if (W.n != n) throw Error(Errc::DimensionMismatch, "quotient ambient");
    Matrix fr = frame(F, W);
    Matrix fi = inverse(F, fr);
    int m = W.dim();
    Quotient Q;
    Q.qdim = n - m;
    Q.projection = block(fi, m, 0, n - m, n);
    Q.section = block(fr, 0, m, n, n - m);
    return Q;
}

Subspace orthogonal(const Field& F, const Subspace& W) {
    if (W.dim() == 0) return full_subspace(W.n);
    return span(F, nullspace(F, W.basis), W.n);
}

uint64_t gaussian_binomial(uint64_t q, int n, int m) {
    if (m < 0 || m > n) return 0;
    uint64_t num = 1, den = 1;
    for (int j = 0; j < m; ++j) {
        uint64_t a = 1, b = 1;
        for (int k = 0; k < n - j; ++k) a *= q;
        for (int k = 0; k < m - j; ++k) b *= q;
        num *= (a - 1);
        den *= (b - 1);
    }
    return num / den;
}

std::vector<Subspace> enum_subspaces(const Field& F, int n, int m, int bound) {
    if (n > bound) throw Error(Errc::TruncationExceeded, "ambient dimension exceeds bound");
    if (m < 0 || m > n) return {};
    std::vector<Subspace> out;
    std::vector<int> piv(m);
    for (int i = 0; i < m; ++i) piv[i] = i;
    const int q = F.q();
    while (true) {
        // free positions: row i, column j > piv[i], j not a pivot
        std::vector<char> isp(n, 0);
        for (int c : piv) isp[c] = 1;
        std::vector<std::pair<int, int>> freepos;
        for (int i = 0; i < m; ++i)
            for (int j = piv[i] + 1; j < n; ++j)
                if (!isp[j]) freepos.push_back({i, j});
        std::vector<int> cnt(freepos.size(), 0);
        while (true) {
            Subspace W;
            W.n = n;
            W.basis = Matrix(m, n);
            for (int i = 0; i < m; ++i) W.basis(i, piv[i]) = 1;
            for (size_t k = 0; k < freepos.size(); ++k)
                W.basis(freepos[k].first, freepos[k].second) = static_cast<Elem>(cnt[k]);
            out.push_back(std::move(W));
            int k = static_cast<int>(freepos.size()) - 1;
            while (k >= 0 && cnt[k] == q - 1) cnt[k--] = 0;
            if (k < 0) break;
            ++cnt[k];
        }
        int i = m - 1;
        while (i >= 0 && piv[i] == n - m + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < m; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

std::vector<Matrix> enum_maps(const Field& F, int s, int t, MapKind kind, int bound) {
    if (s > bound || t > bound) throw Error(Errc::TruncationExceeded, "map dimension exceeds bound");
    const int q = F.q();
    const int N = s * t;
    std::vector<Matrix> out;
    std::vector<Elem> cnt(N, 0);
    while (true) {
        Matrix M(t, s, cnt);
        bool keep = true;
        if (kind != MapKind::All) {
            int r = rank(F, M);
            if (kind == MapKind::Epi) keep = r == t;
            if (kind == MapKind::Mono) keep = r == s;
            if (kind == MapKind::Iso) keep = r == s && r == t;
        }
        if (keep) out.push_back(std::move(M));
        int k = N - 1;
        while (k >= 0 && cnt[k] == q - 1) cnt[k--] = 0;
        if (k < 0) break;
        ++cnt[k];
    }
    return out;
}

std::vector<int> line_sum_class_sizes(const Field& F, int l, int i, const std::vector<Elem>& a) {
    Subspace A = subspace_from_vectors(F, {a}, l);
    std::map<std::string, int> cls;
    std::vector<std::string> order;
    for (const auto& W : enum_subspaces(F, l, i, l)) {
        if (contains(F, W, A)) continue;
        std::string k = sum(F, W, A).key();
        if (!cls.count(k)) order.push_back(k);
        ++cls[k];
    }
    std::vector<int> out;
    for (const auto& k : order) out.push_back(cls[k]);
    return out;
}

int Grassmannian::index(const Subspace& W) const {
    auto it = index_of.find(W.key());
    if (it == index_of.end()) throw Error(Errc::DimensionMismatch, "subspace not in grassmannian");
    return it->second;
}

const Grassmannian& grassmannian(const Field& F, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Grassmannian>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(F.q(), n);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto G = std::make_unique<Grassmannian>();
    G->n = n;
    G->dim_offset.push_back(0);
    for (int m = 0; m <= n; ++m) {
        for (auto& W : enum_subspaces(F, n, m, n)) G->subs.push_back(std::move(W));
        G->dim_offset.push_back(static_cast<int>(G->subs.size()));
    }
    for (int i = 0; i < G->size(); ++i) {
        G->index_of[G->subs[i].key()] = i;
        G->frames.push_back(frame(F, G->subs[i]));
        G->frame_inv.push_back(inverse(F, G->frames.back()));
    }
    auto& ref = *G;
    cache[key] = std::move(G);
    return ref;
}

}  // namespace grf
