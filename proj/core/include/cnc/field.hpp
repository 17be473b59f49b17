#ifndef CNC_FIELD_HPP
#define CNC_FIELD_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cnc/errors.hpp"

namespace cnc {

class FieldElement;

/// Arithmetic context for GF(2^m), 1 <= m <= 16, defined by a primitive
/// polynomial over GF(2). Elements are integers in [0, 2^m) whose bit k is
/// the coefficient of t^k. Construction builds log/antilog tables; a
/// shift-and-reduce multiply is kept as an independent cross-check route.
///
/// A context is immutable after construction and safe to share across
/// threads. Identity is by (m, primitive_poly) value, so two separately
/// constructed contexts over the same polynomial are interchangeable.
class FieldCtx {
   public:
    FieldCtx(int m, uint32_t primitive_poly);

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    /// Process-wide cache of contexts, keyed by (m, primitive_poly).
    /// File loaders use this so returned objects never dangle.
    static const FieldCtx& shared(int m, uint32_t primitive_poly);

    /// Parses "gf2^<m>:0x<hex>" (e.g. "gf2^8:0x11D") into a shared context.
    static const FieldCtx& parse(std::string_view spec);

    std::string to_string() const;  // "gf2^8:0x11D"

    int degree() const { return m_; }
    uint32_t primitive_poly() const { return prim_; }
    uint32_t order() const { return q_; }  // 2^m

    bool same_field(const FieldCtx& other) const {
        return m_ == other.m_ && prim_ == other.prim_;
    }

    // Raw-value arithmetic. Values must be < 2^m.
    uint16_t add(uint16_t a, uint16_t b) const { return a ^ b; }
    uint16_t mul(uint16_t a, uint16_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    uint16_t inv(uint16_t a) const;
    uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }

    /// Table-free multiply (carry-less product reduced mod primitive_poly).
    uint16_t mul_shift_reduce(uint16_t a, uint16_t b) const;

    FieldElement make(uint32_t value) const;
    FieldElement zero() const;
    FieldElement one() const;

   private:
    int m_;
    uint32_t prim_;
    uint32_t q_;
    std::vector<uint16_t> exp_;  // size 2(q-1), doubled so mul needs no mod
    std::vector<uint16_t> log_;  // size q, log_[0] unused
};

/// A single element of GF(2^m), bound to its FieldCtx. Mixed-context
/// arithmetic throws FieldMismatchError; contexts compare by value.
class FieldElement {
   public:
    FieldElement(const FieldCtx& ctx, uint16_t value) : ctx_(&ctx), v_(value) {}

    uint16_t value() const { return v_; }
    const FieldCtx& ctx() const { return *ctx_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    FieldElement inv() const {
        return FieldElement(*ctx_, ctx_->inv(v_));
    }

    FieldElement& operator+=(const FieldElement& rhs) {
        check_same(rhs);
        v_ = ctx_->add(v_, rhs.v_);
        return *this;
    }
    FieldElement& operator*=(const FieldElement& rhs) {
        check_same(rhs);
        v_ = ctx_->mul(v_, rhs.v_);
        return *this;
    }

    friend FieldElement operator+(FieldElement a, const FieldElement& b) {
        a += b;
        return a;
    }
    // Characteristic 2: subtraction and addition coincide.
    friend FieldElement operator-(FieldElement a, const FieldElement& b) {
        a += b;
        return a;
    }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) {
        a *= b;
        return a;
    }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) {
        a *= b.inv();
        return a;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.ctx_->same_field(*b.ctx_) && a.v_ == b.v_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) {
        return !(a == b);
    }

   private:
    void check_same(const FieldElement& rhs) const {
        if (!ctx_->same_field(*rhs.ctx_))
            throw FieldMismatchError("field elements belong to different contexts");
    }

    const FieldCtx* ctx_;
    uint16_t v_;
};

inline FieldElement FieldCtx::zero() const { return FieldElement(*this, 0); }
inline FieldElement FieldCtx::one() const { return FieldElement(*this, 1); }

}  // namespace cnc

#endif
