// bigint.hpp
// Arbitrary-precision signed integers and exact rationals.
// Magnitudes are little-endian base-2^32 limb vectors; all arithmetic is
// schoolbook, which is plenty at the matrix sizes this library works with.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoflag {

class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) { assign(v); }

    void assign(long long v) {
        mag_.clear();
        sign_ = 0;
        unsigned long long m = 0;
        if (v > 0) { sign_ = 1; m = static_cast<unsigned long long>(v); }
        if (v < 0) { sign_ = -1; m = ~static_cast<unsigned long long>(v) + 1ULL; }
        while (m) { mag_.push_back(static_cast<uint32_t>(m & 0xffffffffULL)); m >>= 32; }
    }

    static BigInt from_string(const std::string& s) {
        BigInt r;
        size_t i = 0;
        int sgn = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) { sgn = s[i] == '-' ? -1 : 1; ++i; }
        if (i >= s.size()) throw std::invalid_argument("BigInt: empty literal");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
            r.mul_small(10);
            r.add_small(static_cast<uint32_t>(s[i] - '0'));
        }
        if (!r.mag_.empty()) r.sign_ = sgn;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    bool fits_ll() const {
        if (mag_.size() > 2) return false;
        unsigned long long m = ull();
        if (sign_ >= 0) return m <= 0x7fffffffffffffffULL;
        return m <= 0x8000000000000000ULL;
    }
    long long to_ll() const {
        if (!fits_ll()) throw std::overflow_error("BigInt: does not fit in long long");
        unsigned long long m = ull();
        return sign_ >= 0 ? static_cast<long long>(m) : -static_cast<long long>(m - 1) - 1;
    }

    friend int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c : -c;
    }
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) { r.mag_ = sub_mag(a.mag_, b.mag_); r.sign_ = a.sign_; }
            else { r.mag_ = sub_mag(b.mag_, a.mag_); r.sign_ = b.sign_; }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (size_t i = 0; i < a.mag_.size(); ++i) {
            unsigned long long carry = 0;
            for (size_t j = 0; j < b.mag_.size(); ++j) {
                unsigned long long cur = r.mag_[i + j] +
                    static_cast<unsigned long long>(a.mag_[i]) * b.mag_[j] + carry;
                r.mag_[i + j] = static_cast<uint32_t>(cur & 0xffffffffULL);
                carry = cur >> 32;
            }
            size_t k = i + b.mag_.size();
            while (carry) {
                unsigned long long cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<uint32_t>(cur & 0xffffffffULL);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    // Truncated division (quotient rounds toward zero, remainder has dividend's sign).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        q = BigInt();
        r = BigInt();
        if (a.sign_ == 0) return;
        if (cmp_mag(a.mag_, b.mag_) < 0) { r = a; return; }
        // bitwise long division on magnitudes
        size_t bits = a.mag_.size() * 32;
        std::vector<uint32_t> rem, quo(a.mag_.size(), 0);
        for (size_t i = bits; i-- > 0;) {
            shl1(rem);
            if ((a.mag_[i / 32] >> (i % 32)) & 1u) {
                if (rem.empty()) rem.push_back(1);
                else rem[0] |= 1u;
            }
            if (cmp_mag(rem, b.mag_) >= 0) {
                rem = sub_mag(rem, b.mag_);
                quo[i / 32] |= (1u << (i % 32));
            }
        }
        q.mag_ = quo; q.trim();
        r.mag_ = rem; r.trim();
        if (!q.mag_.empty()) q.sign_ = a.sign_ * b.sign_;
        if (!r.mag_.empty()) r.sign_ = a.sign_;
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a = a.abs(); b = b.abs();
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        return a;
    }

    // Integer square root of a perfect square; returns false if not a perfect square.
    static bool sqrt_exact(const BigInt& a, BigInt& root) {
        if (a.sign_ < 0) return false;
        if (a.is_zero()) { root = BigInt(); return true; }
        BigInt x = a, y = (a + BigInt(1)) / BigInt(2);
        while (y < x) {
            x = y;
            y = (x + a / x) / BigInt(2);
        }
        if (x * x == a) { root = x; return true; }
        return false;
    }

    std::string str() const {
        if (sign_ == 0) return "0";
        BigInt t = abs();
        std::string digits;
        while (!t.is_zero()) {
            uint32_t rem = t.divmod_small(10);
            digits.push_back(static_cast<char>('0' + rem));
        }
        if (sign_ < 0) digits.push_back('-');
        return std::string(digits.rbegin(), digits.rend());
    }

private:
    int sign_ = 0;                 // -1, 0, +1
    std::vector<uint32_t> mag_;    // little-endian, no trailing zeros

    unsigned long long ull() const {
        unsigned long long m = 0;
        if (mag_.size() > 0) m = mag_[0];
        if (mag_.size() > 1) m |= static_cast<unsigned long long>(mag_[1]) << 32;
        return m;
    }
    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }
    void mul_small(uint32_t k) {
        unsigned long long carry = 0;
        for (auto& limb : mag_) {
            unsigned long long cur = static_cast<unsigned long long>(limb) * k + carry;
            limb = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<uint32_t>(carry));
        trim();
        if (!mag_.empty() && sign_ == 0) sign_ = 1;
    }
    void add_small(uint32_t k) {
        if (k == 0) return;
        unsigned long long carry = k;
        for (auto& limb : mag_) {
            unsigned long long cur = limb + carry;
            limb = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
            if (!carry) break;
        }
        if (carry) mag_.push_back(static_cast<uint32_t>(carry));
        if (sign_ == 0) sign_ = 1;
    }
    uint32_t divmod_small(uint32_t k) {
        unsigned long long rem = 0;
        for (size_t i = mag_.size(); i-- > 0;) {
            unsigned long long cur = (rem << 32) | mag_[i];
            mag_[i] = static_cast<uint32_t>(cur / k);
            rem = cur % k;
        }
        trim();
        return static_cast<uint32_t>(rem);
    }
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
        unsigned long long carry = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            unsigned long long cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            r[i] = static_cast<uint32_t>(cur & 0xffffffffULL);
            carry = cur >> 32;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r = a;
        long long borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            long long cur = static_cast<long long>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
            borrow = 0;
            if (cur < 0) { cur += (1LL << 32); borrow = 1; }
            r[i] = static_cast<uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    static void shl1(std::vector<uint32_t>& v) {
        uint32_t carry = 0;
        for (auto& limb : v) {
            uint32_t nc = limb >> 31;
            limb = (limb << 1) | carry;
            carry = nc;
        }
        if (carry) v.push_back(carry);
    }
};

// Reduced fraction with positive denominator.
class BigRat {
public:
    BigRat() : num_(0), den_(1) {}
    BigRat(long long v) : num_(v), den_(1) {}
    BigRat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    static BigRat from_string(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return BigRat(BigInt::from_string(s), BigInt(1));
        return BigRat(BigInt::from_string(s.substr(0, slash)),
                      BigInt::from_string(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend BigRat operator+(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRat operator-(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRat operator*(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend BigRat operator/(const BigRat& a, const BigRat& b) {
        if (b.is_zero()) throw std::domain_error("BigRat: division by zero");
        return BigRat(a.num_ * b.den_, a.den_ * b.num_);
    }
    BigRat operator-() const {
        BigRat r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend bool operator==(const BigRat& a, const BigRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const BigRat& a, const BigRat& b) { return !(a == b); }

    BigRat inv() const {
        if (is_zero()) throw std::domain_error("BigRat: inverse of zero");
        return BigRat(den_, num_);
    }

    // Exact square root; throws if the value is not a square of a rational.
    BigRat sqrt() const {
        BigInt rn, rd;
        if (!BigInt::sqrt_exact(num_, rn) || !BigInt::sqrt_exact(den_, rd))
            throw std::domain_error("BigRat: not a perfect square");
        return BigRat(rn, rd);
    }
    bool is_square() const {
        BigInt rn, rd;
        return num_.sign() >= 0 && BigInt::sqrt_exact(num_, rn) && BigInt::sqrt_exact(den_, rd);
    }

    std::string str() const {
        if (den_ == BigInt(1)) return num_.str();
        return num_.str() + "/" + den_.str();
    }

private:
    BigInt num_, den_;

    void reduce() {
        if (den_.is_zero()) throw std::domain_error("BigRat: zero denominator");
        if (num_.is_zero()) { den_ = BigInt(1); return; }
        if (den_.sign() < 0) { num_ = -num_; den_ = -den_; }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

} // namespace isoflag
