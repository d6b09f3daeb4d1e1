#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "grf/field.hpp"

namespace grf {

// Dense row-major matrix. A linear map F_q^n -> F_q^m is an m x n matrix
// acting on column vectors.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<Elem> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    Matrix(int r, int c, std::vector<Elem> entries);

    static Matrix zero(int r, int c) { return Matrix(r, c); }
    static Matrix identity(int n);

    Elem& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    Elem operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    const Elem* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }
    Elem* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }

    bool is_zero() const;
    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool operator<(const Matrix& o) const;

    // Compact key: "rxc:" followed by one hex digit per entry.
    std::string key() const;
    std::string hex() const;
};

Matrix mul(const Field& F, const Matrix& A, const Matrix& B);
Matrix add(const Field& F, const Matrix& A, const Matrix& B);
Matrix sub(const Field& F, const Matrix& A, const Matrix& B);
Matrix scale(const Field& F, Elem c, const Matrix& A);
Matrix transpose(const Matrix& A);
Matrix kron(const Field& F, const Matrix& A, const Matrix& B);
Matrix hstack(const Matrix& A, const Matrix& B);
Matrix vstack(const Matrix& A, const Matrix& B);
Matrix block_diag(const Matrix& A, const Matrix& B);
Matrix block(const Matrix& A, int r0, int c0, int nr, int nc);
void set_block(Matrix& A, int r0, int c0, const Matrix& B);
// A += c * B placed at (r0, c0).
void add_block(const Field& F, Matrix& A, int r0, int c0, const Matrix& B, Elem c = 1);
Matrix select_rows(const Matrix& A, const std::vector<int>& idx);
Matrix select_cols(const Matrix& A, const std::vector<int>& idx);

struct Rref {
    Matrix m;
    int rank = 0;
    std::vector<int> pivots;
};

Rref rref(const Field& F, const Matrix& M);
// In-place reduction; returns pivot columns. Rows beyond rank are zero.
std::vector<int> rref_inplace(const Field& F, Matrix& M);
int rank(const Field& F, const Matrix& M);
// Rows form a basis of {x : M x = 0}.
Matrix nullspace(const Field& F, const Matrix& M);
// Rows form a basis of {y : y M = 0}.
Matrix left_nullspace(const Field& F, const Matrix& M);
bool is_invertible(const Field& F, const Matrix& M);
// Throws DimensionMismatch when M is not square invertible.
Matrix inverse(const Field& F, const Matrix& M);
// Returns X with A X = B, or false when no solution exists.
bool solve(const Field& F, const Matrix& A, const Matrix& B, Matrix& X);

// Subspace of F_q^n stored by its reduced row echelon basis (dim x n).
struct Subspace {
    int n = 0;
    Matrix basis;

    int dim() const { return basis.rows; }
    bool operator==(const Subspace& o) const { return n == o.n && basis == o.basis; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    // Total order: dimension, then pivot profile, then free entries.
    bool operator<(const Subspace& o) const;
    std::vector<int> pivots() const;

    // Text form n:m:hex-rows, rows separated by '.', one hex digit per entry.
    std::string text() const;
    static Subspace parse(const std::string& s);
    std::string key() const { return text(); }
};

Subspace span(const Field& F, const Matrix& rows, int n);
Subspace subspace_from_vectors(const Field& F, const std::vector<std::vector<Elem>>& vecs, int n);
Subspace zero_subspace(int n);
Subspace full_subspace(int n);
// span(e_lo, ..., e_{lo+len-1}) in F_q^n, zero-based coordinates.
Subspace coordinate_subspace(int n, int lo, int len);
Subspace sum(const Field& F, const Subspace& A, const Subspace& B);
Subspace intersect(const Field& F, const Subspace& A, const Subspace& B);
// B is contained in A.
bool contains(const Field& F, const Subspace& A, const Subspace& B);
bool contains_vector(const Field& F, const Subspace& A, const std::vector<Elem>& v);
// f(W) for f an m x n matrix.
Subspace image(const Field& F, const Matrix& f, const Subspace& W);
// f^{-1}(W') for f an m x n matrix, W' in F_q^m.
Subspace preimage(const Field& F, const Matrix& f, const Subspace& Wp);
// The kernel of f as a subspace.
Subspace kernel_subspace(const Field& F, const Matrix& f);

struct Quotient {
    int qdim = 0;
    Matrix projection;  // qdim x n, kernel W
    Matrix section;     // n x qdim, projection * section = identity
};
Quotient quotient(const Field& F, int n, const Subspace& W);

// Annihilator of W in the dual space, written in the dual basis.
Subspace orthogonal(const Field& F, const Subspace& W);

// Invertible n x n matrix whose first dim W columns are the echelon rows of W
// and whose remaining columns are e_j for the non-pivot j. It carries E_m onto W.
Matrix frame(const Field& F, const Subspace& W);

uint64_t gaussian_binomial(uint64_t q, int n, int m);

// All m-dimensional subspaces in lexicographic order of (pivot profile, free
// entries). Throws TruncationExceeded when n > bound.
std::vector<Subspace> enum_subspaces(const Field& F, int n, int m, int bound);

enum class MapKind { All, Epi, Mono, Iso };
// All target x source matrices of the requested kind, in lexicographic order of
// the row-major entry string.
std::vector<Matrix> enum_maps(const Field& F, int source_dim, int target_dim, MapKind kind,
                              int bound);

// Classes of {W in Gr_i(F^l) : a not in W} under W ~ W' iff W + ka = W' + ka,
// returned as the list of class sizes in order of first appearance.
std::vector<int> line_sum_class_sizes(const Field& F, int l, int i, const std::vector<Elem>& a);

// Cached Grassmannian of F_q^n: every subspace with its frame and inverse frame.
struct Grassmannian {
    int n = 0;
    std::vector<Subspace> subs;         // ordered by dimension, then enumeration order
    std::vector<int> dim_offset;        // first index of each dimension, size n+2
    std::vector<Matrix> frames, frame_inv;
    std::unordered_map<std::string, int> index_of;

    int size() const { return static_cast<int>(subs.size()); }
    int index(const Subspace& W) const;
    int count(int m) const { return dim_offset[m + 1] - dim_offset[m]; }
};

const Grassmannian& grassmannian(const Field& F, int n);

}  // namespace grf
