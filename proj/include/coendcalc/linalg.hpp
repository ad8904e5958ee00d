#pragma once

#include <stdexcept>
#include <vector>

#include "matrix.hpp"

// Exact echelon machinery: rank, kernels, cokernels, inverses. Pivoting is
// deterministic (first nonzero row, columns left to right) so every basis and
// section the engine emits is reproducible. Kernels depend only on the row
// space of the input and cokernels only on the column space, which is what
// makes independently assembled presentations of the same (co)limit agree.

namespace coendcalc {

struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

template <class F>
struct Echelon {
    Mat<F> rref;                 // reduced row echelon form
    std::vector<int> pivot_cols; // increasing
    std::vector<int> free_cols;  // increasing
    int rank = 0;
};

template <class F>
Echelon<F> echelon(const Mat<F>& m) {
    const F& f = m.field();
    const int rows = m.rows(), cols = m.cols();
    std::vector<typename F::Elem> a = m.dense_rows();
    auto at = [&](int i, int j) -> typename F::Elem& { return a[static_cast<std::size_t>(i) * cols + j]; };

    Echelon<F> e;
    std::vector<int> nz;  // nonzero columns of the pivot row
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!f.is_zero(at(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < cols; ++j) std::swap(at(piv, j), at(r, j));
        typename F::Elem inv = f.inv(at(r, c));
        nz.clear();
        for (int j = c; j < cols; ++j) {
            if (f.is_zero(at(r, j))) continue;
            at(r, j) = f.mul(at(r, j), inv);
            nz.push_back(j);
        }
        for (int i = 0; i < rows; ++i) {
            if (i == r || f.is_zero(at(i, c))) continue;
            typename F::Elem factor = at(i, c);
            for (int j : nz) at(i, j) = f.sub(at(i, j), f.mul(factor, at(r, j)));
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.rank = r;
    {
        std::size_t k = 0;
        for (int c = 0; c < cols; ++c) {
            if (k < e.pivot_cols.size() && e.pivot_cols[k] == c) { ++k; continue; }
            e.free_cols.push_back(c);
        }
    }
    typename Mat<F>::Builder b(f, rows, cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j)
            if (!f.is_zero(at(i, j))) b.set(i, j, at(i, j));
    e.rref = b.build();
    return e;
}

// Fraction-free Gauss-Jordan over the integers for the rational field:
// denominators are cleared per row up front, elimination keeps every entry a
// minor of the scaled matrix (single-step Bareiss recurrence, applied above
// and below the pivot), and the reduced rational form is recovered by one
// division per row at the end. Exact divisibility is checked, not assumed.
inline Echelon<Rationals> echelon(const Mat<Rationals>& m) {
    const Rationals f;
    const int rows = m.rows(), cols = m.cols();
    std::vector<mpz_class> a(static_cast<std::size_t>(rows) * cols);
    auto at = [&](int i, int j) -> mpz_class& { return a[static_cast<std::size_t>(i) * cols + j]; };
    for (int i = 0; i < rows; ++i) {
        mpz_class scale = 1;
        for (int j = 0; j < cols; ++j) {
            mpq_class v = m.at(i, j);
            if (v != 0) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den().get_mpz_t());
        }
        for (int j = 0; j < cols; ++j) {
            mpq_class v = m.at(i, j);
            at(i, j) = v.get_num() * (scale / v.get_den());
        }
    }

    Echelon<Rationals> e;
    mpz_class tmp, rem;
    auto exact_div = [&](mpz_class& target, const mpz_class& num, const mpz_class& den) {
        mpz_tdiv_qr(target.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (rem != 0) throw consistency_error("echelon: fraction-free division was not exact");
    };

    // phase 1: forward Bareiss; every row below the pivot is updated each
    // step (rows with a zero pivot-column entry just change stage by p/prev)
    {
        mpz_class prev = 1;
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (at(i, c) != 0) { piv = i; break; }
            if (piv < 0) continue;
            if (piv != r)
                for (int j = c; j < cols; ++j) std::swap(at(piv, j), at(r, j));
            const mpz_class p = at(r, c);
            for (int i = r + 1; i < rows; ++i) {
                const mpz_class factor = at(i, c);
                for (int j = c; j < cols; ++j) {
                    if (factor != 0 && at(r, j) != 0) {
                        tmp = at(i, j) * p - factor * at(r, j);
                    } else if (at(i, j) != 0) {
                        tmp = at(i, j) * p;
                    } else {
                        continue;
                    }
                    exact_div(at(i, j), tmp, prev);
                }
            }
            prev = p;
            e.pivot_cols.push_back(c);
            ++r;
        }
        e.rank = r;
    }

    // phase 2: fraction-free Jordan on the compacted echelon (rank rows),
    // updating every row uniformly at every step
    {
        const int r = e.rank;
        mpz_class prev = 1;
        for (int k = 0; k < r; ++k) {
            const int c = e.pivot_cols[k];
            const mpz_class p = at(k, c);
            for (int i = 0; i < r; ++i) {
                if (i == k) continue;
                const mpz_class factor = at(i, c);
                for (int j = 0; j < cols; ++j) {
                    if (factor != 0 && at(k, j) != 0) {
                        tmp = at(i, j) * p - factor * at(k, j);
                    } else if (at(i, j) != 0) {
                        tmp = at(i, j) * p;
                    } else {
                        continue;
                    }
                    exact_div(at(i, j), tmp, prev);
                }
            }
            prev = p;
        }
    }
    {
        std::size_t k = 0;
        for (int c = 0; c < cols; ++c) {
            if (k < e.pivot_cols.size() && e.pivot_cols[k] == c) { ++k; continue; }
            e.free_cols.push_back(c);
        }
    }
    typename Mat<Rationals>::Builder b(f, rows, cols);
    for (int i = 0; i < e.rank; ++i) {
        const mpz_class& p = at(i, e.pivot_cols[i]);
        for (int j = e.pivot_cols[i]; j < cols; ++j)
            if (at(i, j) != 0) {
                mpq_class q(at(i, j), p);
                q.canonicalize();
                b.set(i, j, q);
            }
    }
    e.rref = b.build();
    return e;
}

template <class F>
int rank(const Mat<F>& m) {
    return echelon(m).rank;
}

// True iff m is square of full rank. Every isomorphism verdict in the engine
// is this exact rank fact.
template <class F>
bool is_iso(const Mat<F>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

template <class F>
Mat<F> inverse(const Mat<F>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    const F& f = m.field();
    const int n = m.rows();
    Echelon<F> e = echelon(Mat<F>::hcat({m, Mat<F>::identity(f, n)}, f, n));
    if (e.rank != n || (n > 0 && e.pivot_cols[n - 1] != n - 1))
        throw std::invalid_argument("inverse: singular matrix");
    std::vector<int> right(n);
    for (int j = 0; j < n; ++j) right[j] = n + j;
    return e.rref.select_cols(right);
}

// A subspace of k^ambient given by a basis in the columns. unit_rows are the
// coordinates where the basis restricts to the identity, giving a retraction
// for free.
template <class F>
struct SubspaceInclusion {
    int ambient = 0;
    Mat<F> basis;                // ambient x dim, full column rank
    std::vector<int> unit_rows;  // basis.select_rows(unit_rows) == I

    int dim() const { return basis.cols(); }
    Mat<F> retraction() const { return Mat<F>::identity(basis.field(), ambient).select_rows(unit_rows); }
};

// A quotient of k^source with a chosen section; proj * section == I exactly.
template <class F>
struct QuotientProjection {
    int source = 0;
    Mat<F> proj;     // dim x source, full row rank
    Mat<F> section;  // source x dim

    int dim() const { return proj.rows(); }
};

// Exact kernel: columns span { v : m v = 0 }. Basis vectors are indexed by
// the free columns of the reduced echelon form and carry a unit coordinate
// there.
template <class F>
SubspaceInclusion<F> kernel(const Mat<F>& m) {
    const F& f = m.field();
    Echelon<F> e = echelon(m);
    SubspaceInclusion<F> k;
    k.ambient = m.cols();
    k.unit_rows = e.free_cols;
    typename Mat<F>::Builder b(f, m.cols(), static_cast<int>(e.free_cols.size()));
    for (int j = 0; j < static_cast<int>(e.free_cols.size()); ++j) {
        int fc = e.free_cols[j];
        b.set(fc, j, f.one());
        for (int i = 0; i < e.rank; ++i) {
            typename F::Elem v = e.rref.at(i, fc);
            if (!f.is_zero(v)) b.set(e.pivot_cols[i], j, f.neg(v));
        }
    }
    k.basis = b.build();
    return k;
}

// Exact cokernel of m : k^cols -> k^rows, presented on the pivot-free
// coordinates of the reduced echelon form of m^T. proj * m == 0 and
// proj * section == I.
template <class F>
QuotientProjection<F> cokernel(const Mat<F>& m) {
    const F& f = m.field();
    Echelon<F> e = echelon(m.transpose());
    QuotientProjection<F> q;
    q.source = m.rows();
    const int dim = static_cast<int>(e.free_cols.size());
    typename Mat<F>::Builder pb(f, dim, m.rows());
    typename Mat<F>::Builder sb(f, m.rows(), dim);
    for (int i = 0; i < dim; ++i) {
        int fc = e.free_cols[i];
        pb.set(i, fc, f.one());
        sb.set(fc, i, f.one());
        for (int r = 0; r < e.rank; ++r) {
            typename F::Elem v = e.rref.at(r, fc);
            if (!f.is_zero(v)) pb.set(i, e.pivot_cols[r], f.neg(v));
        }
    }
    q.proj = pb.build();
    q.section = sb.build();
    return q;
}

// Transpose in the coordinate dual bases: realizes (-)^* on maps.
template <class F>
Mat<F> dual_map(const Mat<F>& m) {
    return m.transpose();
}

// The invertible map V^* (x) W -> [V,W] sending e_i^* (x) f_j to the matrix
// unit E_{j,i}. Under the fixed flattening conventions this is the
// permutation (i*w + j) -> (j*v + i).
template <class F>
Mat<F> hom_iso(F f, int v_dim, int w_dim) {
    std::vector<int> perm(static_cast<std::size_t>(v_dim) * w_dim);
    for (int i = 0; i < v_dim; ++i)
        for (int j = 0; j < w_dim; ++j) perm[i * w_dim + j] = j * v_dim + i;
    return Mat<F>::permutation(std::move(f), perm);
}

// Evaluation V^* (x) V -> k on the dual basis.
template <class F>
Mat<F> evaluation(F f, int v_dim) {
    typename Mat<F>::Builder b(f, 1, v_dim * v_dim);
    for (int i = 0; i < v_dim; ++i) b.set(0, i * v_dim + i, f.one());
    return b.build();
}

// Induced map between two quotients of the "same" total space: given
// surjections qa : Ta ->> A, qb : Tb ->> B and sigma : Ta -> Tb compatible
// with the relations, the descended map A -> B. Compatibility is asserted
// exactly, not assumed: qb sigma == descended qa must hold on the nose.
template <class F>
Mat<F> descend(const QuotientProjection<F>& qa, const QuotientProjection<F>& qb, const Mat<F>& sigma,
               const std::string& what) {
    Mat<F> ind = qb.proj * (sigma * qa.section);
    if (qb.proj * sigma != ind * qa.proj)
        throw consistency_error("descend(" + what + "): map does not respect the relations");
    return ind;
}

// Dual primitive for subobjects: sigma must carry A's subspace into B's.
template <class F>
Mat<F> corestrict(const SubspaceInclusion<F>& ka, const SubspaceInclusion<F>& kb, const Mat<F>& sigma,
                  const std::string& what) {
    Mat<F> ind = kb.retraction() * (sigma * ka.basis);
    if (sigma * ka.basis != kb.basis * ind)
        throw consistency_error("corestrict(" + what + "): image leaves the subspace");
    return ind;
}

}  // namespace coendcalc
