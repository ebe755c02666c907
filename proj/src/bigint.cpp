#include "ktori/bigint.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace kt {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    sign_ = v < 0 ? -1 : 1;
    unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ull
                                 : static_cast<unsigned long long>(v);
    while (m != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffull));
        m >>= 32;
    }
}

BigInt BigInt::from_string(const std::string& s) {
    BigInt out;
    std::size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty literal");
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        out = out * BigInt(10) + BigInt(s[i] - '0');
    }
    if (!out.is_zero()) out.sign_ = sign;
    return out;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 1;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.is_zero()) r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.sign_ = 1;
    return r;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

int BigInt::cmp_abs(const BigInt& a, const BigInt& b) { return cmp_mag(a.limbs_, b.limbs_); }

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return sa >= 0 ? c : -c;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r[i] = static_cast<std::uint32_t>(s & 0xffffffffull);
        carry = s >> 32;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) {
            s += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = r[i + j] + ai * b[j] + carry;
            r[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
        }
        std::size_t k = i + b.size();
        while (carry != 0) {
            std::uint64_t cur = r[k] + carry;
            r[k] = static_cast<std::uint32_t>(cur & 0xffffffffull);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
        r.sign_ = a.sign_;
    } else {
        int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.limbs_ = BigInt::sub_mag(a.limbs_, b.limbs_);
            r.sign_ = a.sign_;
        } else {
            r.limbs_ = BigInt::sub_mag(b.limbs_, a.limbs_);
            r.sign_ = b.sign_;
        }
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    r.limbs_ = BigInt::mul_mag(a.limbs_, b.limbs_);
    r.sign_ = a.sign_ * b.sign_;
    r.trim();
    return r;
}

// Knuth algorithm D on normalized limbs. u/v are magnitudes, v has >= 2 limbs
// and u >= v.
void BigInt::divmod_mag(const std::vector<std::uint32_t>& u_in,
                        const std::vector<std::uint32_t>& v_in,
                        std::vector<std::uint32_t>& q,
                        std::vector<std::uint32_t>& r) {
    if (v_in.size() == 1) {
        std::uint64_t d = v_in[0];
        q.assign(u_in.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = u_in.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | u_in[i];
            q[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        r.clear();
        if (rem != 0) r.push_back(static_cast<std::uint32_t>(rem));
        while (!q.empty() && q.back() == 0) q.pop_back();
        return;
    }

    int shift = 0;
    std::uint32_t top = v_in.back();
    while ((top & 0x80000000u) == 0) {
        top <<= 1;
        ++shift;
    }
    const std::size_t n = v_in.size();
    const std::size_t m = u_in.size() - n;

    auto shl = [shift](const std::vector<std::uint32_t>& x, bool extra) {
        std::vector<std::uint32_t> y(x.size() + (extra ? 1 : 0), 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] |= shift == 0 ? x[i] : (x[i] << shift);
            if (shift != 0 && i + 1 < y.size()) y[i + 1] = x[i] >> (32 - shift);
        }
        return y;
    };
    std::vector<std::uint32_t> un = shl(u_in, true);
    std::vector<std::uint32_t> vn = shl(v_in, false);
    if (un.size() < m + n + 1) un.resize(m + n + 1, 0);

    q.assign(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
        std::uint64_t num = (static_cast<std::uint64_t>(un[j + n]) << 32) | un[j + n - 1];
        std::uint64_t qhat = num / vn[n - 1];
        std::uint64_t rhat = num % vn[n - 1];
        while (qhat >= kBase ||
               qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
            --qhat;
            rhat += vn[n - 1];
            if (rhat >= kBase) break;
        }
        // Multiply-subtract qhat * vn from un[j .. j+n].
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t prod = qhat * vn[i] + carry;
            carry = prod >> 32;
            std::int64_t sub = static_cast<std::int64_t>(un[i + j]) -
                               static_cast<std::int64_t>(prod & 0xffffffffull) - borrow;
            if (sub < 0) {
                sub += static_cast<std::int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            un[i + j] = static_cast<std::uint32_t>(sub);
        }
        std::int64_t sub = static_cast<std::int64_t>(un[j + n]) -
                           static_cast<std::int64_t>(carry) - borrow;
        if (sub < 0) {
            // qhat one too large: add divisor back.
            sub += static_cast<std::int64_t>(kBase);
            --qhat;
            std::uint64_t c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s = static_cast<std::uint64_t>(un[i + j]) + vn[i] + c;
                un[i + j] = static_cast<std::uint32_t>(s & 0xffffffffull);
                c = s >> 32;
            }
            sub += static_cast<std::int64_t>(c);
            sub &= 0xffffffffll;
        }
        un[j + n] = static_cast<std::uint32_t>(sub);
        q[j] = static_cast<std::uint32_t>(qhat);
    }

    r.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = un[i] >> shift;
        if (shift != 0 && i + 1 < un.size()) r[i] |= un[i + 1] << (32 - shift);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    while (!q.empty() && q.back() == 0) q.pop_back();
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c < 0) {
        q = BigInt();
        r = a;
        return;
    }
    std::vector<std::uint32_t> qm, rm;
    divmod_mag(a.limbs_, b.limbs_, qm, rm);
    q.limbs_ = std::move(qm);
    q.sign_ = a.sign_ * b.sign_;
    q.trim();
    r.limbs_ = std::move(rm);
    r.sign_ = a.sign_;
    r.trim();
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    BigInt x = a.abs(), y = b.abs();
    while (!y.is_zero()) {
        BigInt q, r;
        divmod(x, y, q, r);
        x = y;
        y = r;
    }
    return x;
}

BigInt BigInt::lcm(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    return (a.abs() / gcd(a, b)) * b.abs();
}

double BigInt::to_double() const {
    double v = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0 + limbs_[i];
    return sign_ < 0 ? -v : v;
}

long long BigInt::to_int64() const {
    if (limbs_.size() > 2) throw std::overflow_error("BigInt: does not fit in int64");
    unsigned long long m = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) m = (m << 32) | limbs_[i];
    if (sign_ > 0 && m > 0x7fffffffffffffffull) throw std::overflow_error("BigInt: does not fit in int64");
    if (sign_ < 0 && m > 0x8000000000000000ull) throw std::overflow_error("BigInt: does not fit in int64");
    return sign_ < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> digits;  // base 1e9 chunks
    BigInt x = abs();
    BigInt chunk(1000000000ll);
    while (!x.is_zero()) {
        BigInt q, r;
        divmod(x, chunk, q, r);
        digits.push_back(r.is_zero() ? 0u : static_cast<std::uint32_t>(r.to_int64()));
        x = q;
    }
    std::string out = sign_ < 0 ? "-" : "";
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%u", digits.back());
    out += buf;
    for (std::size_t i = digits.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof(buf), "%09u", digits[i]);
        out += buf;
    }
    return out;
}

}  // namespace kt
