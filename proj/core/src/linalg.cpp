#include "cnc/linalg.hpp"

#include <sstream>

#include "cnc/polymat.hpp"

namespace cnc {

FieldMatrix::FieldMatrix(const FieldCtx& ctx, int rows, int cols)
    : ctx_(&ctx), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * static_cast<size_t>(cols), ctx.zero()) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

size_t FieldMatrix::index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw DimensionError("matrix index (" + std::to_string(r) + ", " + std::to_string(c) +
                             ") out of range for " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    return static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c);
}

FieldMatrix FieldMatrix::identity(const FieldCtx& ctx, int n) {
    FieldMatrix m(ctx, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ctx.one();
    return m;
}

FieldMatrix FieldMatrix::from_rows(const FieldCtx& ctx,
                                   const std::vector<std::vector<uint32_t>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    FieldMatrix m(ctx, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c)
            throw DimensionError("ragged row list");
        for (int j = 0; j < c; ++j)
            m(i, j) = ctx.make(rows[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
    return m;
}

bool FieldMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

FieldMatrix& FieldMatrix::operator+=(const FieldMatrix& rhs) {
    if (!ctx_->same_field(*rhs.ctx_)) throw FieldMismatchError("matrix sum across fields");
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionError("matrix sum dimension mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
    return *this;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (!a.ctx_->same_field(*b.ctx_)) throw FieldMismatchError("matrix product across fields");
    if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
    FieldMatrix out(*a.ctx_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const FieldElement aik = a(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldElement& s) {
    FieldMatrix out = a;
    for (auto& x : out.e_) x *= s;
    return out;
}

std::vector<FieldElement> FieldMatrix::apply(const std::vector<FieldElement>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw DimensionError("matrix-vector dimension mismatch");
    std::vector<FieldElement> out(static_cast<size_t>(rows_), ctx_->zero());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            out[static_cast<size_t>(i)] += (*this)(i, j) * v[static_cast<size_t>(j)];
    return out;
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    if (!a.ctx_->same_field(*b.ctx_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t i = 0; i < a.e_.size(); ++i)
        if (a.e_[i].value() != b.e_[i].value()) return false;
    return true;
}

std::string FieldMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).value();
        os << "]";
    }
    os << "]";
    return os.str();
}

RrefResult rref(const FieldMatrix& m) {
    FieldMatrix r = m;
    std::vector<int> pivots;
    int lead = 0;
    for (int col = 0; col < r.cols() && lead < r.rows(); ++col) {
        int pivot = -1;
        for (int i = lead; i < r.rows(); ++i)
            if (!r(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != lead)
            for (int j = 0; j < r.cols(); ++j) std::swap(r(pivot, j), r(lead, j));
        const FieldElement inv = r(lead, col).inv();
        for (int j = 0; j < r.cols(); ++j) r(lead, j) *= inv;
        for (int i = 0; i < r.rows(); ++i) {
            if (i == lead || r(i, col).is_zero()) continue;
            const FieldElement f = r(i, col);
            for (int j = 0; j < r.cols(); ++j) r(i, j) += f * r(lead, j);
        }
        pivots.push_back(col);
        ++lead;
    }
    return {std::move(r), std::move(pivots)};
}

int rank(const FieldMatrix& m) { return static_cast<int>(rref(m).pivots.size()); }

std::vector<std::vector<FieldElement>> nullspace(const FieldMatrix& m) {
    const auto [r, pivots] = rref(m);
    const FieldCtx& ctx = m.ctx();
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;

    std::vector<std::vector<FieldElement>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        std::vector<FieldElement> v(static_cast<size_t>(m.cols()), ctx.zero());
        v[static_cast<size_t>(f)] = ctx.one();
        // x_pivot = -R(row, f) * x_f; characteristic 2 drops the sign.
        for (size_t row = 0; row < pivots.size(); ++row)
            v[static_cast<size_t>(pivots[row])] = r(static_cast<int>(row), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Poly char_poly(const FieldMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("characteristic polynomial of non-square matrix");
    const FieldCtx& ctx = a.ctx();
    PolyMatrix t_minus_a(ctx, a.rows(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.rows(); ++j) {
            std::vector<FieldElement> coeffs{a(i, j)};  // char 2: -A == A
            if (i == j) coeffs.push_back(ctx.one());
            t_minus_a(i, j) = Poly(ctx, std::move(coeffs));
        }
    return det(t_minus_a);
}

FieldMatrix eval_poly(const Poly& p, const FieldMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("polynomial of a non-square matrix");
    const FieldCtx& ctx = a.ctx();
    FieldMatrix acc(ctx, a.rows(), a.rows());
    if (p.is_zero()) return acc;
    for (int k = *p.degree(); k >= 0; --k) {
        acc = acc * a;
        const FieldElement c = p.coeff(k);
        if (!c.is_zero())
            for (int i = 0; i < a.rows(); ++i) acc(i, i) += c;
    }
    return acc;
}

}  // namespace cnc
