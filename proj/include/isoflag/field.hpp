// field.hpp
// The two coefficient fields: GF(p) for odd primes p, and the rationals.
// Both expose the same value interface so the linear algebra can be written
// once. Elements carry their field descriptor; mixing fields throws.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "isoflag/bigint.hpp"

namespace isoflag {

struct field_error : std::runtime_error {
    explicit field_error(const std::string& m) : std::runtime_error(m) {}
};

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Prime field GF(p), p an odd prime. Values are canonical representatives 0..p-1.
class Fp {
public:
    Fp() : v_(0), p_(3) {}
    Fp(long long v, long long p) : p_(p) {
        if (p < 3 || !is_prime(p))
            throw field_error("GF(p): p must be an odd prime, got " + std::to_string(p));
        v_ = v % p;
        if (v_ < 0) v_ += p;
    }

    long long val() const { return v_; }
    long long prime() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }
    Fp from_int(long long k) const { return Fp(k, p_); }

    friend Fp operator+(const Fp& a, const Fp& b) { a.check(b); return Fp(a.v_ + b.v_, a.p_); }
    friend Fp operator-(const Fp& a, const Fp& b) { a.check(b); return Fp(a.v_ - b.v_, a.p_); }
    friend Fp operator*(const Fp& a, const Fp& b) { a.check(b); return Fp(a.v_ * b.v_, a.p_); }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }
    Fp operator-() const { return Fp(-v_, p_); }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    friend bool operator==(const Fp& a, const Fp& b) { a.check(b); return a.v_ == b.v_; }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    Fp inv() const {
        if (v_ == 0) throw field_error("GF(p): inverse of zero");
        long long t = 0, nt = 1, r = p_, nr = v_;
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        return Fp(t, p_);
    }

    bool is_square() const {
        for (long long s = 0; s < p_; ++s)
            if (s * s % p_ == v_) return true;
        return false;
    }
    // Some square root when one exists (p is tiny here; a scan is fine).
    Fp sqrt() const {
        for (long long s = 0; s < p_; ++s)
            if (s * s % p_ == v_) return Fp(s, p_);
        throw field_error("GF(p): not a square");
    }

    std::string str() const { return std::to_string(v_); }
    static Fp parse(const std::string& s, long long p) {
        return Fp(std::stoll(s), p);
    }

private:
    long long v_, p_;
    void check(const Fp& o) const {
        if (p_ != o.p_) throw field_error("GF(p): mixed fields " + std::to_string(p_) + " vs " + std::to_string(o.p_));
    }
};

// Smallest generator of GF(p)^x.
inline long long primitive_root(long long p) {
    for (long long g = 2; g < p; ++g) {
        long long x = 1;
        bool gen = true;
        for (long long k = 1; k < p - 1; ++k) {
            x = x * g % p;
            if (x == 1) { gen = false; break; }
        }
        if (gen && x * g % p == 1) return g;
    }
    throw field_error("no primitive root (p not prime?)");
}

// The rationals, wrapping BigRat with the shared field-element interface.
class Rat {
public:
    Rat() : r_(0) {}
    Rat(long long v) : r_(v) {}
    explicit Rat(BigRat r) : r_(std::move(r)) {}

    const BigRat& value() const { return r_; }
    bool is_zero() const { return r_.is_zero(); }

    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    Rat from_int(long long k) const { return Rat(k); }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.r_ + b.r_); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.r_ - b.r_); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.r_ * b.r_); }
    friend Rat operator/(const Rat& a, const Rat& b) { return Rat(a.r_ / b.r_); }
    Rat operator-() const { return Rat(-r_); }
    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.r_ == b.r_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

    Rat inv() const { return Rat(r_.inv()); }
    bool is_square() const { return r_.is_square(); }
    Rat sqrt() const { return Rat(r_.sqrt()); }

    std::string str() const { return r_.str(); }
    static Rat parse(const std::string& s) { return Rat(BigRat::from_string(s)); }

private:
    BigRat r_;
};

} // namespace isoflag
