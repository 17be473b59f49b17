#ifndef CNC_POLYMAT_HPP
#define CNC_POLYMAT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "cnc/linalg.hpp"
#include "cnc/poly.hpp"

namespace cnc {

// Size guards for exact polynomial-matrix work; generous for desk scale.
inline constexpr int kMaxPolyMatrixDim = 32;
inline constexpr int kMaxPolyEntryDegree = 64;

/// Dense matrix over the polynomial ring F[z].
class PolyMatrix {
   public:
    PolyMatrix(const FieldCtx& ctx, int rows, int cols);
    static PolyMatrix identity(const FieldCtx& ctx, int n);
    /// Builds sum_k C[k] z^k from field-matrix coefficients.
    static PolyMatrix from_coefficients(const std::vector<FieldMatrix>& coeffs);

    const FieldCtx& ctx() const { return *ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Poly& operator()(int r, int c) { return e_[index(r, c)]; }
    const Poly& operator()(int r, int c) const { return e_[index(r, c)]; }

    /// Largest entry degree, or -1 for the zero matrix.
    int max_degree() const;

    /// Coefficient matrix of z^k across all entries.
    FieldMatrix coeff(int k) const;
    FieldMatrix evaluate_at(const FieldElement& x) const;

    PolyMatrix select_rows(const std::vector<int>& rows) const;
    PolyMatrix select_cols(const std::vector<int>& cols) const;
    std::vector<Poly> column(int c) const;

    PolyMatrix& operator+=(const PolyMatrix& rhs);
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { a += b; return a; }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const PolyMatrix& a, const Poly& s);
    friend PolyMatrix operator*(const PolyMatrix& a, const FieldElement& s);

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    /// "[[113*z + 57*z^2, 84 + 231*z^3], [24 + 185*z + 157*z^3, 228*z^2]]"
    std::string to_string() const;
    static PolyMatrix parse(const FieldCtx& ctx, std::string_view text);

   private:
    size_t index(int r, int c) const;

    const FieldCtx* ctx_;
    int rows_, cols_;
    std::vector<Poly> e_;
};

/// Exact determinant in F[z] by fraction-free (Bareiss) elimination.
Poly det(const PolyMatrix& g);

/// Adjugate satisfying adj(G) G = G adj(G) = det(G) I exactly.
/// Convention: the adjugate of a 1x1 matrix is [1].
PolyMatrix adjugate(const PolyMatrix& g);

/// Rank over the fraction field F(z) — equivalently the maximal size of a
/// square submatrix with nonzero determinant, which decides linear
/// independence over the ring F[z] itself.
int rank_over_ring(const PolyMatrix& g);

bool columns_independent(const std::vector<std::vector<Poly>>& cols);

struct RowSelection {
    PolyMatrix matrix;       // the square row-submatrix
    std::vector<int> rows;   // retained row indices, ascending
};

/// Picks the lexicographically first row subset of size cols(G) whose square
/// submatrix is nonsingular. Requires full column rank.
RowSelection select_full_rank_rows(const PolyMatrix& g);

/// (G(z)c)[n] = sum_k G_k c[n+k] with matrix coefficients.
std::vector<FieldElement> apply_shift_operator(const PolyMatrix& g, const SymbolSequence& c,
                                               long n);

}  // namespace cnc

#endif
