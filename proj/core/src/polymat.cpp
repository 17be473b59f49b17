#include "cnc/polymat.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cnc {

namespace {

void check_guards(int rows, int cols, int degree) {
    if (rows > kMaxPolyMatrixDim || cols > kMaxPolyMatrixDim)
        throw LimitError("polynomial matrix exceeds configured dimension limit (" +
                         std::to_string(kMaxPolyMatrixDim) + ")");
    if (degree > kMaxPolyEntryDegree)
        throw LimitError("polynomial matrix entry degree exceeds configured limit (" +
                         std::to_string(kMaxPolyEntryDegree) + ")");
}

}  // namespace

PolyMatrix::PolyMatrix(const FieldCtx& ctx, int rows, int cols)
    : ctx_(&ctx), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * static_cast<size_t>(cols), Poly(ctx)) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

size_t PolyMatrix::index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw DimensionError("matrix index out of range");
    return static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c);
}

PolyMatrix PolyMatrix::identity(const FieldCtx& ctx, int n) {
    PolyMatrix m(ctx, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Poly(ctx, {1});
    return m;
}

PolyMatrix PolyMatrix::from_coefficients(const std::vector<FieldMatrix>& coeffs) {
    if (coeffs.empty()) throw DimensionError("no coefficient matrices given");
    const FieldCtx& ctx = coeffs[0].ctx();
    const int r = coeffs[0].rows(), c = coeffs[0].cols();
    PolyMatrix out(ctx, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            std::vector<FieldElement> cs;
            cs.reserve(coeffs.size());
            for (const auto& mk : coeffs) {
                if (mk.rows() != r || mk.cols() != c)
                    throw DimensionError("coefficient matrices differ in shape");
                cs.push_back(mk(i, j));
            }
            out(i, j) = Poly(ctx, std::move(cs));
        }
    return out;
}

int PolyMatrix::max_degree() const {
    int d = -1;
    for (const auto& p : e_)
        if (auto deg = p.degree()) d = std::max(d, *deg);
    return d;
}

FieldMatrix PolyMatrix::coeff(int k) const {
    FieldMatrix m(*ctx_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).coeff(k);
    return m;
}

FieldMatrix PolyMatrix::evaluate_at(const FieldElement& x) const {
    FieldMatrix m(*ctx_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(x);
    return m;
}

PolyMatrix PolyMatrix::select_rows(const std::vector<int>& rows) const {
    PolyMatrix out(*ctx_, static_cast<int>(rows.size()), cols_);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols_; ++j) out(static_cast<int>(i), j) = (*this)(rows[i], j);
    return out;
}

PolyMatrix PolyMatrix::select_cols(const std::vector<int>& cols) const {
    PolyMatrix out(*ctx_, rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols.size(); ++j) out(i, static_cast<int>(j)) = (*this)(i, cols[j]);
    return out;
}

std::vector<Poly> PolyMatrix::column(int c) const {
    std::vector<Poly> col;
    col.reserve(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) col.push_back((*this)(i, c));
    return col;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& rhs) {
    if (!ctx_->same_field(*rhs.ctx_)) throw FieldMismatchError("matrix sum across fields");
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionError("matrix sum dimension mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
    return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (!a.ctx_->same_field(*b.ctx_)) throw FieldMismatchError("matrix product across fields");
    if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
    check_guards(a.rows_, b.cols_, a.max_degree() + std::max(b.max_degree(), 0));
    PolyMatrix out(*a.ctx_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Poly& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

PolyMatrix operator*(const PolyMatrix& a, const Poly& s) {
    PolyMatrix out = a;
    for (auto& p : out.e_) p = p * s;
    return out;
}

PolyMatrix operator*(const PolyMatrix& a, const FieldElement& s) {
    PolyMatrix out = a;
    for (auto& p : out.e_) p = p * s;
    return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    if (!a.ctx_->same_field(*b.ctx_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t i = 0; i < a.e_.size(); ++i)
        if (a.e_[i] != b.e_[i]) return false;
    return true;
}

std::string PolyMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << ", ";
        os << "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << (*this)(i, j).to_string();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

PolyMatrix PolyMatrix::parse(const FieldCtx& ctx, std::string_view text) {
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(std::string("expected '") + c + "' in matrix text");
        ++pos;
    };

    expect('[');
    std::vector<std::vector<Poly>> rows;
    skip_ws();
    if (pos < text.size() && text[pos] == ']') {
        ++pos;
    } else {
        for (;;) {
            expect('[');
            std::vector<Poly> row;
            for (;;) {
                skip_ws();
                size_t start = pos;
                while (pos < text.size() && text[pos] != ',' && text[pos] != ']') ++pos;
                if (pos >= text.size()) throw ParseError("unterminated matrix row");
                row.push_back(Poly::parse(ctx, text.substr(start, pos - start)));
                if (text[pos] == ']') {
                    ++pos;
                    break;
                }
                ++pos;  // ','
            }
            rows.push_back(std::move(row));
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            expect(']');
            break;
        }
    }
    skip_ws();
    if (pos != text.size()) throw ParseError("trailing characters after matrix text");

    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    PolyMatrix out(ctx, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c)
            throw ParseError("ragged matrix rows");
        for (int j = 0; j < c; ++j)
            out(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return out;
}

Poly det(const PolyMatrix& g) {
    if (g.rows() != g.cols()) throw DimensionError("determinant of non-square matrix");
    const FieldCtx& ctx = g.ctx();
    const int n = g.rows();
    if (n == 0) return Poly(ctx, {1});
    check_guards(n, n, g.max_degree());

    // Bareiss one-step fraction-free elimination; every division below is
    // exact in F[z]. Row swaps need no sign bookkeeping in characteristic 2.
    PolyMatrix m = g;
    Poly prev(ctx, {1});
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k).is_zero()) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m(i, k).is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return Poly(ctx);
            for (int j = k; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) + m(i, k) * m(k, j)).exact_div(prev);
            m(i, k) = Poly(ctx);
        }
        prev = m(k, k);
    }
    return m(n - 1, n - 1);
}

PolyMatrix adjugate(const PolyMatrix& g) {
    if (g.rows() != g.cols()) throw DimensionError("adjugate of non-square matrix");
    const FieldCtx& ctx = g.ctx();
    const int n = g.rows();
    if (n == 0) return PolyMatrix(ctx, 0, 0);
    PolyMatrix adj(ctx, n, n);
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int k = 0; k < n; ++k) {
                if (k != j) rows.push_back(k);
                if (k != i) cols.push_back(k);
            }
            // Cofactor sign (-1)^(i+j) is 1 in characteristic 2.
            adj(i, j) = det(g.select_rows(rows).select_cols(cols));
        }
    return adj;
}

int rank_over_ring(const PolyMatrix& g) {
    const FieldCtx& ctx = g.ctx();
    check_guards(g.rows(), g.cols(), g.max_degree());
    PolyMatrix m = g;
    Poly prev(ctx, {1});
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pivot = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = c; j < m.cols(); ++j) std::swap(m(r, j), m(pivot, j));
        for (int i = r + 1; i < m.rows(); ++i) {
            for (int j = c + 1; j < m.cols(); ++j)
                m(i, j) = (m(i, j) * m(r, c) + m(i, c) * m(r, j)).exact_div(prev);
            m(i, c) = Poly(ctx);
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

bool columns_independent(const std::vector<std::vector<Poly>>& cols) {
    if (cols.empty()) return true;
    const size_t dim = cols[0].size();
    for (const auto& c : cols)
        if (c.size() != dim) throw DimensionError("column vectors differ in dimension");
    if (cols.size() > dim) return false;
    const FieldCtx& ctx = cols[0][0].ctx();
    PolyMatrix m(ctx, static_cast<int>(dim), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < dim; ++i) m(static_cast<int>(i), static_cast<int>(j)) = cols[j][i];
    return rank_over_ring(m) == static_cast<int>(cols.size());
}

RowSelection select_full_rank_rows(const PolyMatrix& g) {
    const int target = g.cols();
    if (rank_over_ring(g) != target)
        throw UndecodableError("matrix does not have full column rank over F[z]");
    // Greedy by ascending row index; row independence is a matroid, so this
    // yields the lexicographically first valid subset.
    std::vector<int> kept;
    for (int i = 0; i < g.rows() && static_cast<int>(kept.size()) < target; ++i) {
        std::vector<int> trial = kept;
        trial.push_back(i);
        if (rank_over_ring(g.select_rows(trial)) == static_cast<int>(trial.size())) kept = trial;
    }
    if (static_cast<int>(kept.size()) != target)
        throw UndecodableError("failed to select a nonsingular row subset");
    return {g.select_rows(kept), kept};
}

std::vector<FieldElement> apply_shift_operator(const PolyMatrix& g, const SymbolSequence& c,
                                               long n) {
    if (!g.ctx().same_field(c.ctx()))
        throw FieldMismatchError("operator matrix and sequence over different fields");
    if (g.cols() != c.dim())
        throw DimensionError("operator matrix has " + std::to_string(g.cols()) +
                             " columns but sequence vectors have dimension " +
                             std::to_string(c.dim()));
    std::vector<FieldElement> acc(static_cast<size_t>(g.rows()), g.ctx().zero());
    const int deg = g.max_degree();
    for (int k = 0; k <= deg; ++k) {
        const FieldMatrix gk = g.coeff(k);
        if (gk.is_zero()) continue;
        const auto v = gk.apply(c.at(n + k));
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
    }
    return acc;
}

}  // namespace cnc
