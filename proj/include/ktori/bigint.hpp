#ifndef KTORI_BIGINT_HPP
#define KTORI_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace kt {

// Arbitrary-precision signed integer, sign/magnitude with base-2^32 limbs.
// Covers exactly what the exact elimination needs: ring arithmetic, divmod,
// gcd and decimal printing. Magnitude is little-endian with no leading zeros.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    static BigInt from_string(const std::string& s);

    bool is_zero() const { return limbs_.empty(); }
    bool is_one() const { return sign_ > 0 && limbs_.size() == 1 && limbs_[0] == 1; }
    int sign() const { return limbs_.empty() ? 0 : sign_; }

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    // Quotient truncated toward zero, remainder has the sign of a.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    static BigInt gcd(const BigInt& a, const BigInt& b);
    static BigInt lcm(const BigInt& a, const BigInt& b);

    static int cmp(const BigInt& a, const BigInt& b);
    static int cmp_abs(const BigInt& a, const BigInt& b);
    bool operator==(const BigInt& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const BigInt& o) const { return cmp(*this, o) != 0; }
    bool operator<(const BigInt& o) const { return cmp(*this, o) < 0; }
    bool operator>(const BigInt& o) const { return cmp(*this, o) > 0; }
    bool operator<=(const BigInt& o) const { return cmp(*this, o) <= 0; }
    bool operator>=(const BigInt& o) const { return cmp(*this, o) >= 0; }

    double to_double() const;
    // Throws std::overflow_error when the value does not fit.
    long long to_int64() const;
    std::string to_string() const;

    std::size_t limb_count() const { return limbs_.size(); }

private:
    int sign_ = 1;
    std::vector<std::uint32_t> limbs_;

    void trim();
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static int cmp_mag(const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b);
    static void divmod_mag(const std::vector<std::uint32_t>& u,
                           const std::vector<std::uint32_t>& v,
                           std::vector<std::uint32_t>& q,
                           std::vector<std::uint32_t>& r);
};

}  // namespace kt

#endif
