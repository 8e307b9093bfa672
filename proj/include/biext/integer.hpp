// Exact integer with an int64 fast path that promotes to GMP on overflow.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace biext {

class Integer {
public:
    Integer() noexcept = default;
    Integer(int v) noexcept : small_(v) {}
    Integer(long v) noexcept : small_(v) {}
    Integer(long long v) noexcept : small_(v) {}
    Integer(unsigned v) noexcept : small_(v) {}
    Integer(unsigned long v) : small_(0) { assign_big(mpz_class(v)); }
    Integer(unsigned long long v) : Integer(static_cast<unsigned long>(v)) {}
    explicit Integer(const mpz_class& v) { assign_big(v); }
    explicit Integer(const std::string& s) { assign_big(mpz_class(s, 10)); }

    Integer(const Integer& o) : small_(o.small_) {
        if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
    }
    Integer(Integer&&) noexcept = default;
    Integer& operator=(const Integer& o) {
        if (this != &o) {
            small_ = o.small_;
            big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Integer& operator=(Integer&&) noexcept = default;

    bool is_small() const noexcept { return !big_; }
    std::int64_t small() const noexcept { return small_; }

    mpz_class to_mpz() const {
        if (big_) return *big_;
        mpz_class r;
        mpz_set_si(r.get_mpz_t(), static_cast<long>(small_));
        return r;
    }

    bool fits_int64() const noexcept { return !big_; }
    std::int64_t to_int64() const {
        if (big_) throw std::overflow_error("Integer does not fit in int64");
        return small_;
    }

    int sign() const noexcept {
        if (big_) return sgn(*big_);
        return (small_ > 0) - (small_ < 0);
    }
    bool is_zero() const noexcept { return !big_ && small_ == 0; }
    explicit operator bool() const noexcept { return !is_zero(); }

    std::string str() const { return big_ ? big_->get_str() : std::to_string(small_); }

    Integer operator-() const {
        if (!big_ && small_ != INT64_MIN) return Integer(-small_);
        return Integer(mpz_class(-to_mpz()));
    }

    Integer& operator+=(const Integer& o) {
        std::int64_t r;
        if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
        assign_big(to_mpz() + o.to_mpz());
        return *this;
    }
    Integer& operator-=(const Integer& o) {
        std::int64_t r;
        if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
        assign_big(to_mpz() - o.to_mpz());
        return *this;
    }
    Integer& operator*=(const Integer& o) {
        std::int64_t r;
        if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
        assign_big(to_mpz() * o.to_mpz());
        return *this;
    }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

    // Floor division and the matching nonnegative-for-positive-divisor remainder.
    friend Integer floor_div(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        if (a.is_small() && b.is_small() && !(a.small_ == INT64_MIN && b.small_ == -1)) {
            std::int64_t q = a.small_ / b.small_, r = a.small_ % b.small_;
            if (r != 0 && ((r < 0) != (b.small_ < 0))) --q;
            return Integer(q);
        }
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(q);
    }
    friend Integer floor_mod(const Integer& a, const Integer& b) { return a - floor_div(a, b) * b; }

    // Exact division (caller guarantees b | a).
    friend Integer exact_div(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small() && !(a.small_ == INT64_MIN && b.small_ == -1))
            return Integer(a.small_ / b.small_);
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(q);
    }

    friend bool divides(const Integer& d, const Integer& a) {
        if (d.is_zero()) return a.is_zero();
        return floor_mod(a, d).is_zero();
    }

    friend Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

    friend Integer gcd(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small() && a.small_ != INT64_MIN && b.small_ != INT64_MIN) {
            std::int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
            std::int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
            while (y) {
                std::int64_t t = x % y;
                x = y;
                y = t;
            }
            return Integer(x);
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Integer(g);
    }
    friend Integer lcm(const Integer& a, const Integer& b) {
        if (a.is_zero() || b.is_zero()) return Integer(0);
        return abs(exact_div(a, gcd(a, b)) * b);
    }

    friend bool operator==(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small()) return a.small_ == b.small_;
        return cmp(a.to_mpz(), b.to_mpz()) == 0;
    }
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
        if (a.is_small() && b.is_small()) return a.small_ <=> b.small_;
        int c = cmp(a.to_mpz(), b.to_mpz());
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.str(); }

private:
    void assign_big(const mpz_class& v) {
        if (mpz_fits_slong_p(v.get_mpz_t())) {
            small_ = mpz_get_si(v.get_mpz_t());
            big_.reset();
        } else {
            big_ = std::make_unique<mpz_class>(v);
            small_ = 0;
        }
    }

    std::int64_t small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<Integer, Integer, Integer> xgcd(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small() && a.small() != INT64_MIN && b.small() != INT64_MIN) {
        std::int64_t r0 = a.small(), r1 = b.small(), s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t r2 = r0 - q * r1, s2 = s0 - q * s1, t2 = t0 - q * t1;
            r0 = r1; r1 = r2; s0 = s1; s1 = s2; t0 = t1; t1 = t2;
        }
        if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
        return {Integer(r0), Integer(s0), Integer(t0)};
    }
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return {Integer(g), Integer(s), Integer(t)};
}

} // namespace biext

template <>
struct std::hash<biext::Integer> {
    std::size_t operator()(const biext::Integer& a) const {
        if (a.is_small()) return std::hash<std::int64_t>{}(a.small());
        return std::hash<std::string>{}(a.str());
    }
};
