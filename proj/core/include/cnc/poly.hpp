#ifndef CNC_POLY_HPP
#define CNC_POLY_HPP

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnc/field.hpp"

namespace cnc {

/// Univariate polynomial over GF(2^m) in the time-shift operator z.
/// Coefficients are stored by ascending power with trailing zeros trimmed;
/// the zero polynomial has an empty coefficient list and no degree.
class Poly {
   public:
    explicit Poly(const FieldCtx& ctx) : ctx_(&ctx) {}
    Poly(const FieldCtx& ctx, std::vector<FieldElement> coeffs);
    /// Convenience: raw coefficient values by ascending power.
    Poly(const FieldCtx& ctx, std::initializer_list<uint32_t> coeffs);
    Poly(const FieldCtx& ctx, const std::vector<uint16_t>& coeffs);

    static Poly monomial(const FieldCtx& ctx, uint32_t coeff, int power);

    const FieldCtx& ctx() const { return *ctx_; }
    bool is_zero() const { return c_.empty(); }

    /// Degree, or nullopt for the zero polynomial.
    std::optional<int> degree() const {
        if (c_.empty()) return std::nullopt;
        return static_cast<int>(c_.size()) - 1;
    }

    /// Coefficient of z^k (zero beyond the stored range).
    FieldElement coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return ctx_->zero();
        return c_[static_cast<size_t>(k)];
    }

    FieldElement leading() const;

    FieldElement eval(const FieldElement& x) const;

    Poly& operator+=(const Poly& rhs);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a += b; return a; }  // char 2
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const FieldElement& s);
    friend Poly operator*(const FieldElement& s, const Poly& a) { return a * s; }

    /// Quotient and remainder of a / b, b nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    /// Division known to be exact; throws Error if a remainder appears.
    Poly exact_div(const Poly& b) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Textual form "c0 + c1*z + ck*z^k", zero terms omitted, unit
    /// coefficients printed bare ("z^5"). Zero polynomial prints "0".
    std::string to_string() const;
    /// Accepts the printed form plus compact variants like "209z^2+z^5".
    static Poly parse(const FieldCtx& ctx, std::string_view text);

   private:
    void trim();
    void check_same(const Poly& rhs) const;

    const FieldCtx* ctx_;
    std::vector<FieldElement> c_;
};

/// Time-indexed sequence of fixed-dimension vectors over the field.
/// Entries before start_time are implicitly zero; reading past the last
/// stored entry throws NeedsMoreSymbolsError.
class SymbolSequence {
   public:
    SymbolSequence(const FieldCtx& ctx, int dim, long start_time = 0)
        : ctx_(&ctx), dim_(dim), start_(start_time) {}

    const FieldCtx& ctx() const { return *ctx_; }
    int dim() const { return dim_; }
    long start_time() const { return start_; }
    /// Last time index with a stored value; start_time - 1 when empty.
    long defined_until() const { return start_ + static_cast<long>(vals_.size()) - 1; }
    size_t size() const { return vals_.size(); }

    void append(std::vector<FieldElement> v);
    void append_values(const std::vector<uint16_t>& raw);

    /// Value at time n: implicit zeros before start_time, throws past the end.
    std::vector<FieldElement> at(long n) const;
    /// Like at(), but zero after the end as well (for finished recordings).
    std::vector<FieldElement> at_or_zero(long n) const;

   private:
    const FieldCtx* ctx_;
    int dim_;
    long start_;
    std::vector<std::vector<FieldElement>> vals_;
};

/// Applies the shift-operator polynomial to a sequence at one time index:
/// (P(z)c)[n] = sum_k P_k * c[n+k], acting componentwise on vectors.
std::vector<FieldElement> apply_shift_operator(const Poly& p, const SymbolSequence& c, long n);

}  // namespace cnc

#endif
