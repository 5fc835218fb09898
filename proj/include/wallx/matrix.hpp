#pragma once

#include <stdexcept>
#include <vector>

#include "wallx/rational.hpp"

namespace wallx {

using Vec = std::vector<Rat>;

/// Small dense matrix over the rationals.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows * cols), Rat(0)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Mat outer(const Vec& col, const Vec& row) {
        Mat m(static_cast<int>(col.size()), static_cast<int>(row.size()));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = col[static_cast<size_t>(i)] * row[static_cast<size_t>(j)];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rat& at(int i, int j) { return a_[static_cast<size_t>(i * c_ + j)]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i * c_ + j)]; }

    Mat operator+(const Mat& o) const {
        check_same(o);
        Mat m = *this;
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
        return m;
    }
    Mat operator-(const Mat& o) const {
        check_same(o);
        Mat m = *this;
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
        return m;
    }
    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw std::invalid_argument("matrix shape mismatch");
        Mat m(r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const Rat& x = at(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.c_; ++j) m.at(i, j) += x * o.at(k, j);
            }
        return m;
    }
    Mat operator*(const Rat& s) const {
        Mat m = *this;
        for (auto& x : m.a_) x *= s;
        return m;
    }
    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    Mat transpose() const {
        Mat m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }
    Rat trace() const {
        Rat t = 0;
        for (int i = 0; i < std::min(r_, c_); ++i) t += at(i, i);
        return t;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }
    Rat max_abs() const {
        Rat m = 0;
        for (const auto& x : a_)
            if (abs(x) > m) m = abs(x);
        return m;
    }

    Vec apply(const Vec& x) const {  // column vector
        if (static_cast<int>(x.size()) != c_) throw std::invalid_argument("matrix shape mismatch");
        Vec y(static_cast<size_t>(r_), Rat(0));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) y[static_cast<size_t>(i)] += at(i, j) * x[static_cast<size_t>(j)];
        return y;
    }
    Vec apply_left(const Vec& x) const {  // row covector: x * M
        if (static_cast<int>(x.size()) != r_) throw std::invalid_argument("matrix shape mismatch");
        Vec y(static_cast<size_t>(c_), Rat(0));
        for (int j = 0; j < c_; ++j)
            for (int i = 0; i < r_; ++i) y[static_cast<size_t>(j)] += x[static_cast<size_t>(i)] * at(i, j);
        return y;
    }

private:
    void check_same(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
    }
    int r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

inline Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// Incremental row-echelon basis over Q; insert returns true when the vector
/// enlarged the span.
class EchelonBasis {
public:
    explicit EchelonBasis(int dim) : dim_(dim) {}

    bool insert(Vec v) {
        if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("vector size mismatch");
        for (const auto& [piv, row] : rows_) {
            if (v[static_cast<size_t>(piv)] == 0) continue;
            const Rat f = v[static_cast<size_t>(piv)];
            for (int j = 0; j < dim_; ++j) v[static_cast<size_t>(j)] -= f * row[static_cast<size_t>(j)];
        }
        int piv = -1;
        for (int j = 0; j < dim_; ++j)
            if (v[static_cast<size_t>(j)] != 0) {
                piv = j;
                break;
            }
        if (piv < 0) return false;
        const Rat inv = Rat(1) / v[static_cast<size_t>(piv)];
        for (auto& x : v) x *= inv;
        rows_.emplace_back(piv, std::move(v));
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    std::vector<Vec> basis() const {
        std::vector<Vec> out;
        for (const auto& [piv, row] : rows_) out.push_back(row);
        return out;
    }

private:
    int dim_;
    std::vector<std::pair<int, Vec>> rows_;
};

/// Smallest subspace containing the seeds and invariant under the operators.
inline std::vector<Vec> span_closure(const std::vector<Vec>& seeds, const std::vector<Mat>& ops,
                                     int dim) {
    EchelonBasis basis(dim);
    std::vector<Vec> queue;
    for (const auto& s : seeds)
        if (basis.insert(s)) queue.push_back(s);
    while (!queue.empty()) {
        Vec v = std::move(queue.back());
        queue.pop_back();
        for (const auto& op : ops) {
            Vec w = op.apply(v);
            if (basis.insert(w)) queue.push_back(std::move(w));
        }
    }
    return basis.basis();
}

}  // namespace wallx
