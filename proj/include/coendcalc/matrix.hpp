#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

// Exact matrices over a field F. Storage is dense (row major) up to a
// configurable entry-count cutoff and sparse (sorted triplets) above it; all
// algorithms go through the same accessors, so the representation never
// affects a result. Values are immutable after construction; use Builder to
// assemble entries.
//
// Basis conventions, fixed once and used by every module:
//   * kron(a,b) acts on V (x) W whose basis is v_i (x) w_j ordered with the
//     left factor's index slowest: index = i*dim(W) + j.
//   * dual spaces use the coordinate dual basis; the dual of a map is its
//     transpose.
//   * [V,W] is the space of dim(W) x dim(V) matrices flattened row major.

namespace coendcalc {

enum class Rep { Auto, Dense, Sparse };

namespace detail {
// Process-wide default cutoff (total entry count) above which Auto selects
// the sparse representation. Configuration, not computation state.
inline std::atomic<std::size_t>& sparse_cutoff() {
    static std::atomic<std::size_t> c{4096};
    return c;
}
}  // namespace detail

template <class F>
class Mat {
  public:
    using Elem = typename F::Elem;
    struct Triplet {
        int r, c;
        Elem v;
    };

    Mat() : rows_(0), cols_(0), dense_(false) {}
    Mat(F f, int rows, int cols, Rep rep = Rep::Auto)
        : field_(std::move(f)), rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
        dense_ = pick_dense(rows, cols, rep);
        if (dense_) data_.assign(static_cast<std::size_t>(rows) * cols, field_.zero());
    }

    static Mat zero(F f, int rows, int cols, Rep rep = Rep::Auto) { return Mat(std::move(f), rows, cols, rep); }

    static Mat identity(F f, int n, Rep rep = Rep::Auto) {
        Builder b(f, n, n);
        for (int i = 0; i < n; ++i) b.set(i, i, f.one());
        return b.build(rep);
    }

    static Mat scalar(F f, Elem v) {
        Builder b(f, 1, 1);
        b.set(0, 0, std::move(v));
        return b.build();
    }

    // perm[s] = t builds the matrix with entry 1 at (t, s): source basis
    // vector s is sent to target basis vector perm[s].
    static Mat permutation(F f, const std::vector<int>& perm, int target_dim = -1) {
        int n = static_cast<int>(perm.size());
        int m = target_dim < 0 ? n : target_dim;
        Builder b(f, m, n);
        for (int s = 0; s < n; ++s) b.set(perm[s], s, f.one());
        return b.build();
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const F& field() const { return field_; }
    bool is_dense() const { return dense_; }

    Elem at(int i, int j) const {
        if (dense_) return data_[static_cast<std::size_t>(i) * cols_ + j];
        auto it = std::lower_bound(trips_.begin(), trips_.end(), std::pair<int, int>{i, j},
                                   [](const Triplet& t, const std::pair<int, int>& k) {
                                       return t.r != k.first ? t.r < k.first : t.c < k.second;
                                   });
        if (it != trips_.end() && it->r == i && it->c == j) return it->v;
        return field_.zero();
    }

    template <class Fn>
    void for_each_nonzero(Fn&& fn) const {
        if (dense_) {
            for (int i = 0; i < rows_; ++i)
                for (int j = 0; j < cols_; ++j) {
                    const Elem& v = data_[static_cast<std::size_t>(i) * cols_ + j];
                    if (!field_.is_zero(v)) fn(i, j, v);
                }
        } else {
            for (const Triplet& t : trips_) fn(t.r, t.c, t.v);
        }
    }

    std::size_t nonzero_count() const {
        std::size_t n = 0;
        for_each_nonzero([&](int, int, const Elem&) { ++n; });
        return n;
    }

    bool is_zero() const {
        bool z = true;
        for_each_nonzero([&](int, int, const Elem&) { z = false; });
        return z;
    }

    bool operator==(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
        bool eq = true;
        for_each_nonzero([&](int i, int j, const Elem& v) {
            if (!field_.eq(v, o.at(i, j))) eq = false;
        });
        if (!eq) return false;
        o.for_each_nonzero([&](int i, int j, const Elem& v) {
            if (!field_.eq(v, at(i, j))) eq = false;
        });
        return eq;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator*(const Mat& o) const {
        check_field(o);
        if (cols_ != o.rows_)
            throw std::invalid_argument("Mat: product shape mismatch " + shape() + " * " + o.shape());
        std::vector<Elem> acc(static_cast<std::size_t>(rows_) * o.cols_, field_.zero());
        for_each_nonzero([&](int i, int k, const Elem& v) {
            Elem* row = acc.data() + static_cast<std::size_t>(i) * o.cols_;
            o.row_apply(k, [&](int j, const Elem& w) { row[j] = field_.add(row[j], field_.mul(v, w)); });
        });
        return from_dense(field_, rows_, o.cols_, std::move(acc), Rep::Auto);
    }

    Mat operator+(const Mat& o) const {
        check_shape(o, "+");
        std::vector<Elem> acc = dense_rows();
        o.for_each_nonzero([&](int i, int j, const Elem& v) {
            Elem& e = acc[static_cast<std::size_t>(i) * cols_ + j];
            e = field_.add(e, v);
        });
        return from_dense(field_, rows_, cols_, std::move(acc), Rep::Auto);
    }

    Mat operator-(const Mat& o) const {
        check_shape(o, "-");
        std::vector<Elem> acc = dense_rows();
        o.for_each_nonzero([&](int i, int j, const Elem& v) {
            Elem& e = acc[static_cast<std::size_t>(i) * cols_ + j];
            e = field_.sub(e, v);
        });
        return from_dense(field_, rows_, cols_, std::move(acc), Rep::Auto);
    }

    Mat operator-() const {
        Mat m = *this;
        if (m.dense_) {
            for (Elem& e : m.data_) e = field_.neg(e);
        } else {
            for (Triplet& t : m.trips_) t.v = field_.neg(t.v);
        }
        return m;
    }

    Mat scaled(const Elem& c) const {
        if (field_.is_zero(c)) return Mat(field_, rows_, cols_);
        Mat m = *this;
        if (m.dense_) {
            for (Elem& e : m.data_) e = field_.mul(c, e);
        } else {
            for (Triplet& t : m.trips_) t.v = field_.mul(c, t.v);
        }
        return m;
    }

    Mat transpose() const {
        std::vector<Triplet> ts;
        ts.reserve(nonzero_count());
        for_each_nonzero([&](int i, int j, const Elem& v) { ts.push_back({j, i, v}); });
        std::sort(ts.begin(), ts.end(), [](const Triplet& a, const Triplet& b) {
            return a.r != b.r ? a.r < b.r : a.c < b.c;
        });
        return from_triplets(field_, cols_, rows_, std::move(ts), Rep::Auto);
    }

    static Mat kron(const Mat& a, const Mat& b) {
        a.check_field(b);
        std::vector<Triplet> ts;
        ts.reserve(a.nonzero_count() * b.nonzero_count());
        a.for_each_nonzero([&](int i, int k, const Elem& v) {
            b.for_each_nonzero([&](int j, int l, const Elem& w) {
                ts.push_back({i * b.rows_ + j, k * b.cols_ + l, a.field_.mul(v, w)});
            });
        });
        std::sort(ts.begin(), ts.end(), [](const Triplet& x, const Triplet& y) {
            return x.r != y.r ? x.r < y.r : x.c < y.c;
        });
        return from_triplets(a.field_, a.rows_ * b.rows_, a.cols_ * b.cols_, std::move(ts), Rep::Auto);
    }

    static Mat hcat(const std::vector<Mat>& parts, F f, int rows) {
        int cols = 0;
        for (const Mat& m : parts) {
            if (m.rows_ != rows) throw std::invalid_argument("Mat::hcat: row mismatch");
            cols += m.cols_;
        }
        Builder b(f, rows, cols);
        int off = 0;
        for (const Mat& m : parts) {
            m.for_each_nonzero([&](int i, int j, const Elem& v) { b.set(i, off + j, v); });
            off += m.cols_;
        }
        return b.build();
    }

    static Mat vcat(const std::vector<Mat>& parts, F f, int cols) {
        int rows = 0;
        for (const Mat& m : parts) {
            if (m.cols_ != cols) throw std::invalid_argument("Mat::vcat: column mismatch");
            rows += m.rows_;
        }
        Builder b(f, rows, cols);
        int off = 0;
        for (const Mat& m : parts) {
            m.for_each_nonzero([&](int i, int j, const Elem& v) { b.set(off + i, j, v); });
            off += m.rows_;
        }
        return b.build();
    }

    static Mat block_diag(const std::vector<Mat>& parts, F f) {
        int rows = 0, cols = 0;
        for (const Mat& m : parts) { rows += m.rows_; cols += m.cols_; }
        Builder b(f, rows, cols);
        int ro = 0, co = 0;
        for (const Mat& m : parts) {
            m.for_each_nonzero([&](int i, int j, const Elem& v) { b.set(ro + i, co + j, v); });
            ro += m.rows_;
            co += m.cols_;
        }
        return b.build();
    }

    Mat select_rows(const std::vector<int>& rows) const {
        Builder b(field_, static_cast<int>(rows.size()), cols_);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i)
            row_apply(rows[i], [&](int j, const Elem& v) { b.set(i, j, v); });
        return b.build();
    }

    Mat select_cols(const std::vector<int>& cols) const {
        std::vector<int> pos(cols_, -1);
        for (int j = 0; j < static_cast<int>(cols.size()); ++j) pos[cols[j]] = j;
        Builder b(field_, rows_, static_cast<int>(cols.size()));
        for_each_nonzero([&](int i, int j, const Elem& v) {
            if (pos[j] >= 0) b.set(i, pos[j], v);
        });
        return b.build();
    }

    // Column j as a rows x 1 matrix.
    Mat col(int j) const { return select_cols({j}); }

    std::vector<Elem> dense_rows() const {
        std::vector<Elem> d(static_cast<std::size_t>(rows_) * cols_, field_.zero());
        for_each_nonzero([&](int i, int j, const Elem& v) { d[static_cast<std::size_t>(i) * cols_ + j] = v; });
        return d;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    class Builder {
      public:
        Builder(F f, int rows, int cols) : field_(std::move(f)), rows_(rows), cols_(cols) {
            if (rows < 0 || cols < 0) throw std::invalid_argument("Mat::Builder: negative dimension");
        }
        void set(int i, int j, Elem v) {
            bound_check(i, j);
            ops_.push_back({i, j, std::move(v), true});
        }
        void add(int i, int j, const Elem& v) {
            bound_check(i, j);
            if (!field_.is_zero(v)) ops_.push_back({i, j, v, false});
        }
        Mat build(Rep rep = Rep::Auto) {
            std::stable_sort(ops_.begin(), ops_.end(), [](const Op& a, const Op& b) {
                return a.r != b.r ? a.r < b.r : a.c < b.c;
            });
            std::vector<Triplet> ts;
            ts.reserve(ops_.size());
            for (std::size_t i = 0; i < ops_.size();) {
                std::size_t j = i;
                Elem acc = field_.zero();
                while (j < ops_.size() && ops_[j].r == ops_[i].r && ops_[j].c == ops_[i].c) {
                    if (ops_[j].overwrite) acc = ops_[j].v;
                    else acc = field_.add(acc, ops_[j].v);
                    ++j;
                }
                if (!field_.is_zero(acc)) ts.push_back({ops_[i].r, ops_[i].c, std::move(acc)});
                i = j;
            }
            ops_.clear();
            return from_triplets(field_, rows_, cols_, std::move(ts), rep);
        }

      private:
        struct Op {
            int r, c;
            Elem v;
            bool overwrite;
        };
        void bound_check(int i, int j) const {
            if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
                throw std::invalid_argument("Mat::Builder: index out of range");
        }
        F field_;
        int rows_, cols_;
        std::vector<Op> ops_;
    };

    void check_field(const Mat& o) const {
        if (field_ != o.field_) throw std::invalid_argument("Mat: field mismatch");
    }

  private:
    static bool pick_dense(int rows, int cols, Rep rep) {
        if (rep == Rep::Dense) return true;
        if (rep == Rep::Sparse) return false;
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) <= detail::sparse_cutoff().load();
    }

    // assemble from a full dense buffer, compressing if the target is sparse
    static Mat from_dense(F f, int rows, int cols, std::vector<Elem>&& data, Rep rep) {
        Mat m(f, rows, cols, rep);
        if (m.dense_) {
            m.data_ = std::move(data);
        } else {
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) {
                    Elem& v = data[static_cast<std::size_t>(i) * cols + j];
                    if (!f.is_zero(v)) m.trips_.push_back({i, j, std::move(v)});
                }
        }
        return m;
    }

    // assemble from row-major sorted triplets with distinct positions
    static Mat from_triplets(F f, int rows, int cols, std::vector<Triplet>&& ts, Rep rep) {
        Mat m(f, rows, cols, rep);
        if (m.dense_) {
            for (Triplet& t : ts) m.data_[static_cast<std::size_t>(t.r) * cols + t.c] = std::move(t.v);
        } else {
            m.trips_ = std::move(ts);
        }
        return m;
    }

    template <class Fn>
    void row_apply(int i, Fn&& fn) const {
        if (dense_) {
            for (int j = 0; j < cols_; ++j) {
                const Elem& v = data_[static_cast<std::size_t>(i) * cols_ + j];
                if (!field_.is_zero(v)) fn(j, v);
            }
        } else {
            auto it = std::lower_bound(trips_.begin(), trips_.end(), i,
                                       [](const Triplet& t, int r) { return t.r < r; });
            for (; it != trips_.end() && it->r == i; ++it) fn(it->c, it->v);
        }
    }

    void check_shape(const Mat& o, const char* op) const {
        check_field(o);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("Mat: shape mismatch in ") + op);
    }

    F field_;
    int rows_, cols_;
    bool dense_;
    std::vector<Elem> data_;      // dense, row major
    std::vector<Triplet> trips_;  // sparse, sorted (r, c)
};

// Layout of a direct sum: component dims, offsets, total.
struct Layout {
    std::vector<int> dims;
    std::vector<int> offsets;
    int total = 0;

    Layout() = default;
    explicit Layout(std::vector<int> d) : dims(std::move(d)) {
        offsets.resize(dims.size());
        for (std::size_t i = 0; i < dims.size(); ++i) {
            offsets[i] = total;
            total += dims[i];
        }
    }
    int count() const { return static_cast<int>(dims.size()); }
};

// Permutation matrix swapping the tensor factors: V (x) W -> W (x) V.
template <class F>
Mat<F> swap_factors(F f, int dim_v, int dim_w) {
    std::vector<int> perm(static_cast<std::size_t>(dim_v) * dim_w);
    for (int i = 0; i < dim_v; ++i)
        for (int j = 0; j < dim_w; ++j) perm[i * dim_w + j] = j * dim_v + i;
    return Mat<F>::permutation(std::move(f), perm);
}

// Permutation matrix A (x) B (x) C -> A (x) C (x) B.
template <class F>
Mat<F> swap_last_two(F f, int da, int db, int dc) {
    std::vector<int> perm(static_cast<std::size_t>(da) * db * dc);
    for (int a = 0; a < da; ++a)
        for (int b = 0; b < db; ++b)
            for (int c = 0; c < dc; ++c)
                perm[(a * db + b) * dc + c] = (a * dc + c) * db + b;
    return Mat<F>::permutation(std::move(f), perm);
}

}  // namespace coendcalc
