#ifndef CNC_LINALG_HPP
#define CNC_LINALG_HPP

#include <string>
#include <vector>

#include "cnc/field.hpp"
#include "cnc/poly.hpp"

namespace cnc {

/// Dense row-major matrix over GF(2^m). All entries share one context.
class FieldMatrix {
   public:
    FieldMatrix(const FieldCtx& ctx, int rows, int cols);
    static FieldMatrix identity(const FieldCtx& ctx, int n);
    static FieldMatrix from_rows(const FieldCtx& ctx,
                                 const std::vector<std::vector<uint32_t>>& rows);

    const FieldCtx& ctx() const { return *ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    FieldElement& operator()(int r, int c) { return e_[index(r, c)]; }
    const FieldElement& operator()(int r, int c) const { return e_[index(r, c)]; }

    bool is_zero() const;

    FieldMatrix& operator+=(const FieldMatrix& rhs);
    friend FieldMatrix operator+(FieldMatrix a, const FieldMatrix& b) { a += b; return a; }
    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
    friend FieldMatrix operator*(const FieldMatrix& a, const FieldElement& s);
    friend FieldMatrix operator*(const FieldElement& s, const FieldMatrix& a) { return a * s; }
    std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const;  // M v

    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);
    friend bool operator!=(const FieldMatrix& a, const FieldMatrix& b) { return !(a == b); }

    std::string to_string() const;  // diagnostic form, rows of integers

   private:
    size_t index(int r, int c) const;

    const FieldCtx* ctx_;
    int rows_, cols_;
    std::vector<FieldElement> e_;
};

struct RrefResult {
    FieldMatrix mat;
    std::vector<int> pivots;  // pivot column per pivot row, strictly increasing
};

/// Reduced row-echelon form by Gauss-Jordan elimination with exact field
/// division.
RrefResult rref(const FieldMatrix& m);

int rank(const FieldMatrix& m);

/// Canonical kernel basis: one vector per free column in ascending order;
/// each has a 1 at its free column and 0 at every other free column.
std::vector<std::vector<FieldElement>> nullspace(const FieldMatrix& m);

/// Characteristic polynomial det(tI - A), monic of degree n. Computed by
/// treating tI - A as a polynomial matrix and taking its exact determinant.
Poly char_poly(const FieldMatrix& a);

/// P(A) by Horner's rule.
FieldMatrix eval_poly(const Poly& p, const FieldMatrix& a);

}  // namespace cnc

#endif
