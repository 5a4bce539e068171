#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace maxarc {

// Element of GF(2^m) in polynomial-basis coordinates: bit i is the
// coefficient of x^i. Valid elements keep all bits at positions >= m clear.
using gf_elem = std::uint32_t;

// A binary field described by its extension degree and irreducible modulus.
// Bit i of `modulus` is the coefficient of x^i; bits m and 0 are always set.
struct FieldSpec {
    int m = 0;
    std::uint32_t modulus = 0;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline constexpr int kMaxDegree = 24;  // every element fits one machine word

namespace detail {

inline int poly_degree(std::uint64_t p) {
    return p == 0 ? -1 : 63 - __builtin_clzll(p);
}

inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t p) {
    const int dp = poly_degree(p);
    for (int da = poly_degree(a); da >= dp; da = poly_degree(a))
        a ^= p << (da - dp);
    return a;
}

inline std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// Carry-less product in F2[x]; operands of degree < 32.
inline std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

}  // namespace detail

// Deterministic irreducibility test: f of degree m with f(0) != 0 is
// irreducible over F2 iff gcd(f, x^(2^k) - x) = 1 for all k <= m/2.
inline bool is_irreducible(int m, std::uint32_t f) {
    if (m < 1 || detail::poly_degree(f) != m || (f & 1u) == 0) return false;
    std::uint64_t s = 2;  // the polynomial x
    for (int k = 1; 2 * k <= m; ++k) {
        s = detail::poly_mod(detail::poly_mul(s, s), f);
        if (detail::poly_gcd(f, s ^ 2u) != 1) return false;
    }
    return true;
}

// The nth-smallest irreducible degree-m modulus when bit vectors are read as
// integers. n = 0 gives the canonical modulus used across the toolkit.
inline FieldSpec find_modulus(int m, int nth = 0) {
    if (m < 1 || m > kMaxDegree) throw std::invalid_argument("find_modulus: degree out of range [1,24]");
    for (std::uint32_t f = (1u << m) | 1u; f < (2u << m); f += 2) {
        if (is_irreducible(m, f) && nth-- == 0) return FieldSpec{m, f};
    }
    throw std::invalid_argument("find_modulus: no such modulus");
}

// Arithmetic engine for one FieldSpec. Pure and immutable after
// construction; shareable across threads without synchronization.
class Field {
public:
    explicit Field(const FieldSpec& fs) : m_(fs.m), modulus_(fs.modulus) {
        if (m_ < 1 || m_ > kMaxDegree) throw std::invalid_argument("Field: degree out of range [1,24]");
        if (!is_irreducible(m_, modulus_)) throw std::invalid_argument("Field: modulus is not irreducible");
        mask_ = (m_ == 32) ? ~0u : ((1u << m_) - 1);
        for (int i = 0; i < m_; ++i)
            sq_[i] = reduce_from(static_cast<std::uint64_t>(1) << (2 * i));
        trace_mask_ = 0;
        for (int i = 0; i < m_; ++i)
            if (trace_slow(1u << i)) trace_mask_ |= 1u << i;
    }

    explicit Field(int m) : Field(find_modulus(m)) {}

    int m() const { return m_; }
    std::uint32_t modulus() const { return modulus_; }
    FieldSpec spec() const { return FieldSpec{m_, modulus_}; }
    gf_elem mask() const { return mask_; }
    std::uint64_t order() const { return std::uint64_t{1} << m_; }

    bool valid(gf_elem a) const { return (a & ~mask_) == 0; }

    static gf_elem add(gf_elem a, gf_elem b) { return a ^ b; }

    gf_elem mul(gf_elem a, gf_elem b) const {
        std::uint32_t r = 0;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if (a >> m_ & 1) a ^= modulus_;
        }
        return r;
    }

    gf_elem sqr(gf_elem a) const {
        gf_elem r = 0;
        while (a) {
            const int i = __builtin_ctz(a);
            r ^= sq_[i];
            a &= a - 1;
        }
        return r;
    }

    gf_elem pow(gf_elem a, std::uint64_t e) const {
        gf_elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = sqr(a);
            e >>= 1;
        }
        return r;
    }

    gf_elem inv(gf_elem a) const {
        if (a == 0) throw std::domain_error("inv: division by zero");
        return pow(a, order() - 2);
    }

    // a^(2^j); the Frobenius shift. Reads j modulo m, so frob(a, m) = a.
    gf_elem frob(gf_elem a, int j) const {
        j %= m_;
        if (j < 0) j += m_;
        for (int i = 0; i < j; ++i) a = sqr(a);
        return a;
    }

    // Absolute trace GF(2^m) -> F2.
    int trace(gf_elem a) const { return __builtin_popcount(a & trace_mask_) & 1; }

    // Relative trace onto the subfield GF(2^k); requires k | m.
    gf_elem trace_rel(gf_elem a, int k) const {
        if (k < 1 || m_ % k != 0) throw std::invalid_argument("trace_rel: k must divide m");
        gf_elem s = 0, t = a;
        for (int j = 0; j < m_ / k; ++j) {
            s ^= t;
            t = frob(t, k);
        }
        return s;
    }

private:
    gf_elem reduce_from(std::uint64_t v) const {
        return static_cast<gf_elem>(detail::poly_mod(v, modulus_));
    }

    int trace_slow(gf_elem a) const {
        gf_elem s = 0, t = a;
        for (int j = 0; j < m_; ++j) {
            s ^= t;
            t = mul(t, t);
        }
        if (s != 0 && s != 1) throw std::logic_error("trace not in F2");
        return static_cast<int>(s);
    }

    int m_;
    std::uint32_t modulus_;
    gf_elem mask_;
    gf_elem trace_mask_;
    std::array<gf_elem, kMaxDegree> sq_{};
};

// Lowercase-hex serialization of coordinate integers, e.g. "1f".
inline std::string hex_str(std::uint32_t v) {
    if (v == 0) return "0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    while (v) {
        s.insert(s.begin(), digits[v & 0xf]);
        v >>= 4;
    }
    return s;
}

inline std::uint32_t parse_hex(const std::string& s) {
    if (s.empty() || s.size() > 8) throw std::invalid_argument("parse_hex: bad literal '" + s + "'");
    std::uint32_t v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else throw std::invalid_argument("parse_hex: bad literal '" + s + "'");
        v = (v << 4) | static_cast<std::uint32_t>(d);
    }
    return v;
}

}  // namespace maxarc
