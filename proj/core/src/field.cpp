#include "cnc/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace cnc {

FieldCtx::FieldCtx(int m, uint32_t primitive_poly) : m_(m), prim_(primitive_poly) {
    if (m < 1 || m > 16) throw Error("field extension degree must be in [1, 16]");
    if ((prim_ >> m) != 1u)
        throw Error("primitive polynomial must have degree exactly m (bit m set, none above)");
    q_ = 1u << m;

    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0xFFFF);

    // Walk the powers of t. A primitive polynomial makes this a full cycle
    // of length 2^m - 1; anything shorter (or a fall into 0) means the
    // polynomial does not define the field we need.
    uint32_t x = 1;
    for (uint32_t i = 0; i < q_ - 1; ++i) {
        if (x == 0 || log_[x] != 0xFFFF)
            throw Error("polynomial 0x" + [&] {
                std::ostringstream os;
                os << std::hex << std::uppercase << prim_;
                return os.str();
            }() + " is not primitive over GF(2)");
        exp_[i] = static_cast<uint16_t>(x);
        log_[x] = static_cast<uint16_t>(i);
        x <<= 1;
        if (x & q_) x ^= prim_;
    }
    for (uint32_t i = 0; i < q_ - 1; ++i) exp_[q_ - 1 + i] = exp_[i];
}

uint16_t FieldCtx::inv(uint16_t a) const {
    if (a == 0) throw DivisionByZeroError("inverse of zero field element");
    return exp_[q_ - 1 - log_[a]];
}

uint16_t FieldCtx::mul_shift_reduce(uint16_t a, uint16_t b) const {
    uint32_t acc = 0;
    for (int i = 0; i < m_; ++i)
        if ((b >> i) & 1u) acc ^= static_cast<uint32_t>(a) << i;
    for (int bit = 2 * m_ - 2; bit >= m_; --bit)
        if ((acc >> bit) & 1u) acc ^= prim_ << (bit - m_);
    return static_cast<uint16_t>(acc);
}

FieldElement FieldCtx::make(uint32_t value) const {
    if (value >= q_) throw Error("field element value out of range for GF(2^" +
                                 std::to_string(m_) + ")");
    return FieldElement(*this, static_cast<uint16_t>(value));
}

const FieldCtx& FieldCtx::shared(int m, uint32_t primitive_poly) {
    static std::mutex mu;
    static std::map<std::pair<int, uint32_t>, std::unique_ptr<FieldCtx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, primitive_poly);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<FieldCtx>(new FieldCtx(m, primitive_poly))).first;
    return *it->second;
}

const FieldCtx& FieldCtx::parse(std::string_view spec) {
    constexpr std::string_view prefix = "gf2^";
    if (spec.substr(0, prefix.size()) != prefix)
        throw ParseError("field spec must look like gf2^<m>:0x<hex>, got '" +
                         std::string(spec) + "'");
    std::string rest(spec.substr(prefix.size()));
    auto colon = rest.find(':');
    if (colon == std::string::npos)
        throw ParseError("field spec missing ':' separator: '" + std::string(spec) + "'");
    int m = 0;
    uint32_t prim = 0;
    try {
        m = std::stoi(rest.substr(0, colon));
        std::string p = rest.substr(colon + 1);
        prim = static_cast<uint32_t>(std::stoul(p, nullptr, 0));  // accepts 0x... and decimal
    } catch (const std::exception&) {
        throw ParseError("malformed field spec '" + std::string(spec) + "'");
    }
    try {
        return shared(m, prim);
    } catch (const Error& e) {
        throw ParseError("invalid field spec '" + std::string(spec) + "': " + e.what());
    }
}

std::string FieldCtx::to_string() const {
    std::ostringstream os;
    os << "gf2^" << m_ << ":0x" << std::hex << std::uppercase << prim_;
    return os.str();
}

}  // namespace cnc
