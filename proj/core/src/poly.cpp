#include "cnc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cnc {

Poly::Poly(const FieldCtx& ctx, std::vector<FieldElement> coeffs)
    : ctx_(&ctx), c_(std::move(coeffs)) {
    for (const auto& e : c_)
        if (!e.ctx().same_field(ctx))
            throw FieldMismatchError("polynomial coefficient from a different field");
    trim();
}

Poly::Poly(const FieldCtx& ctx, std::initializer_list<uint32_t> coeffs) : ctx_(&ctx) {
    c_.reserve(coeffs.size());
    for (uint32_t v : coeffs) c_.push_back(ctx.make(v));
    trim();
}

Poly::Poly(const FieldCtx& ctx, const std::vector<uint16_t>& coeffs) : ctx_(&ctx) {
    c_.reserve(coeffs.size());
    for (uint16_t v : coeffs) c_.push_back(ctx.make(v));
    trim();
}

Poly Poly::monomial(const FieldCtx& ctx, uint32_t coeff, int power) {
    Poly p(ctx);
    if (coeff == 0) return p;
    if (power < 0) throw Error("monomial power must be nonnegative");
    p.c_.assign(static_cast<size_t>(power) + 1, ctx.zero());
    p.c_.back() = ctx.make(coeff);
    return p;
}

FieldElement Poly::leading() const {
    if (c_.empty()) throw Error("zero polynomial has no leading coefficient");
    return c_.back();
}

FieldElement Poly::eval(const FieldElement& x) const {
    FieldElement acc = ctx_->zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void Poly::check_same(const Poly& rhs) const {
    if (!ctx_->same_field(*rhs.ctx_))
        throw FieldMismatchError("polynomials over different fields");
}

Poly& Poly::operator+=(const Poly& rhs) {
    check_same(rhs);
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), ctx_->zero());
    for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly out(*a.ctx_);
    if (a.is_zero() || b.is_zero()) return out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, a.ctx_->zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    out.trim();
    return out;
}

Poly operator*(const Poly& a, const FieldElement& s) {
    if (!s.ctx().same_field(*a.ctx_))
        throw FieldMismatchError("scaling polynomial by element of a different field");
    Poly out(*a.ctx_);
    if (s.is_zero()) return out;
    out.c_ = a.c_;
    for (auto& e : out.c_) e *= s;
    out.trim();
    return out;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    a.check_same(b);
    if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    Poly q(*a.ctx_), r = a;
    const int db = *b.degree();
    const FieldElement lead_inv = b.leading().inv();
    while (!r.is_zero() && *r.degree() >= db) {
        const int k = *r.degree() - db;
        const FieldElement c = r.leading() * lead_inv;
        Poly t = monomial(*a.ctx_, 1, k) * c;
        q += t;
        r += t * b;  // char 2: subtraction is addition
    }
    return {q, r};
}

Poly Poly::exact_div(const Poly& b) const {
    auto [q, r] = divmod(*this, b);
    if (!r.is_zero()) throw Error("polynomial division expected to be exact left a remainder");
    return q;
}

bool operator==(const Poly& a, const Poly& b) {
    if (!a.ctx_->same_field(*b.ctx_) || a.c_.size() != b.c_.size()) return false;
    for (size_t k = 0; k < a.c_.size(); ++k)
        if (a.c_[k].value() != b.c_[k].value()) return false;
    return true;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        const uint16_t v = c_[k].value();
        if (k == 0) {
            os << v;
        } else {
            if (v != 1) os << v << "*";
            os << "z";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

Poly Poly::parse(const FieldCtx& ctx, std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty polynomial text");

    std::vector<uint16_t> coeffs;
    auto add_term = [&](uint32_t coeff, int power) {
        if (coeff >= ctx.order())
            throw ParseError("polynomial coefficient " + std::to_string(coeff) +
                             " out of range for " + ctx.to_string());
        if (power >= static_cast<int>(coeffs.size())) coeffs.resize(power + 1, 0);
        coeffs[power] = static_cast<uint16_t>(coeffs[power] ^ coeff);
    };

    size_t pos = 0;
    while (pos < s.size()) {
        size_t end = s.find('+', pos);
        if (end == std::string::npos) end = s.size();
        std::string term = s.substr(pos, end - pos);
        pos = end + 1;
        if (term.empty()) throw ParseError("empty term in polynomial '" + std::string(text) + "'");

        size_t i = 0;
        uint32_t coeff = 1;
        bool have_digits = false;
        uint64_t num = 0;
        while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
            num = num * 10 + static_cast<uint64_t>(term[i] - '0');
            if (num > 0xFFFFFFFFull) throw ParseError("coefficient too large");
            have_digits = true;
            ++i;
        }
        if (have_digits) coeff = static_cast<uint32_t>(num);
        if (i < term.size() && term[i] == '*') ++i;
        int power = 0;
        if (i < term.size()) {
            if (term[i] != 'z') throw ParseError("unexpected character in term '" + term + "'");
            ++i;
            power = 1;
            if (i < term.size()) {
                if (term[i] != '^') throw ParseError("expected '^' in term '" + term + "'");
                ++i;
                if (i == term.size()) throw ParseError("missing exponent in term '" + term + "'");
                uint64_t p = 0;
                while (i < term.size()) {
                    if (!std::isdigit(static_cast<unsigned char>(term[i])))
                        throw ParseError("bad exponent in term '" + term + "'");
                    p = p * 10 + static_cast<uint64_t>(term[i] - '0');
                    if (p > 4096) throw ParseError("exponent too large in term '" + term + "'");
                    ++i;
                }
                power = static_cast<int>(p);
            }
        } else if (!have_digits) {
            throw ParseError("empty term in polynomial '" + std::string(text) + "'");
        }
        add_term(coeff, power);
    }
    return Poly(ctx, coeffs);
}

void SymbolSequence::append(std::vector<FieldElement> v) {
    if (static_cast<int>(v.size()) != dim_)
        throw DimensionError("sequence value has dimension " + std::to_string(v.size()) +
                             ", expected " + std::to_string(dim_));
    for (const auto& e : v)
        if (!e.ctx().same_field(*ctx_))
            throw FieldMismatchError("sequence value from a different field");
    vals_.push_back(std::move(v));
}

void SymbolSequence::append_values(const std::vector<uint16_t>& raw) {
    std::vector<FieldElement> v;
    v.reserve(raw.size());
    for (uint16_t x : raw) v.push_back(ctx_->make(x));
    append(std::move(v));
}

std::vector<FieldElement> SymbolSequence::at(long n) const {
    if (n < start_) return std::vector<FieldElement>(dim_, ctx_->zero());
    const long idx = n - start_;
    if (idx >= static_cast<long>(vals_.size()))
        throw NeedsMoreSymbolsError("sequence read at time " + std::to_string(n) +
                                    " but only defined up to " + std::to_string(defined_until()));
    return vals_[static_cast<size_t>(idx)];
}

std::vector<FieldElement> SymbolSequence::at_or_zero(long n) const {
    if (n < start_ || n - start_ >= static_cast<long>(vals_.size()))
        return std::vector<FieldElement>(dim_, ctx_->zero());
    return vals_[static_cast<size_t>(n - start_)];
}

std::vector<FieldElement> apply_shift_operator(const Poly& p, const SymbolSequence& c, long n) {
    if (!p.ctx().same_field(c.ctx()))
        throw FieldMismatchError("operator polynomial and sequence over different fields");
    std::vector<FieldElement> acc(c.dim(), p.ctx().zero());
    if (p.is_zero()) return acc;
    const int deg = *p.degree();
    for (int k = 0; k <= deg; ++k) {
        const FieldElement a = p.coeff(k);
        if (a.is_zero()) continue;
        auto v = c.at(n + k);
        for (int i = 0; i < c.dim(); ++i) acc[static_cast<size_t>(i)] += a * v[static_cast<size_t>(i)];
    }
    return acc;
}

}  // namespace cnc
