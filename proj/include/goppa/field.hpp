#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "goppa/errors.hpp"

namespace goppa {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// primality (deterministic for the whole uint64_t range)
// ---------------------------------------------------------------------------

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Trial division below 1000, then Miller-Rabin with a witness set that is
/// deterministic for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d < 1000; ++d) {
        if (d * d > n) return true;
        if (n % d == 0) return n == d;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                            29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// Square root mod an odd prime (Tonelli-Shanks, deterministic non-residue
/// search).  Returns the smaller of the two roots; nullopt for non-residues.
inline std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod_u64(a, (p - 1) / 2, p) != 1) return std::nullopt;
    std::uint64_t q = p - 1, s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod_u64(z, q, p);
    std::uint64_t t = powmod_u64(a, q, p);
    std::uint64_t r = powmod_u64(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod_u64(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod_u64(b, b, p);
        m = i;
        c = mulmod_u64(b, b, p);
        t = mulmod_u64(t, c, p);
        r = mulmod_u64(r, b, p);
    }
    return std::min(r, p - r);
}

// ---------------------------------------------------------------------------
// shared digit-string parsing: -?[0-9]+(/[0-9]+)?
// ---------------------------------------------------------------------------

struct parsed_fraction {
    bool negative = false;
    std::string num;  // digits only
    std::string den;  // digits only, "1" when absent
};

inline parsed_fraction parse_fraction_literal(const std::string& s) {
    parsed_fraction out;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        out.negative = (s[i] == '-');
        ++i;
    }
    std::size_t num_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_start) fail(errc::parse_error, "expected digits in '" + s + "'");
    out.num = s.substr(num_start, i - num_start);
    out.den = "1";
    if (i < s.size() && s[i] == '/') {
        ++i;
        std::size_t den_start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_start) fail(errc::parse_error, "expected denominator digits in '" + s + "'");
        out.den = s.substr(den_start, i - den_start);
    }
    if (i != s.size()) fail(errc::parse_error, "trailing junk in '" + s + "'");
    bool den_zero = out.den.find_first_not_of('0') == std::string::npos;
    if (den_zero) fail(errc::division_by_zero, "zero denominator in '" + s + "'");
    return out;
}

// ---------------------------------------------------------------------------
// rationals
// ---------------------------------------------------------------------------

struct RationalField;

/// Arbitrary-precision rational, always reduced with positive denominator
/// (cpp_rational maintains that canonical form).
class Rational {
  public:
    using field_type = RationalField;

    Rational() : v_(0) {}
    explicit Rational(long long n) : v_(n) {}
    explicit Rational(const bigrat& v) : v_(v) {}
    Rational(const bigint& num, const bigint& den) {
        if (den == 0) fail(errc::division_by_zero, "rational with zero denominator");
        v_ = bigrat(num) / bigrat(den);  // division canonicalizes sign and gcd
    }

    field_type field() const;

    bool is_zero() const { return v_ == 0; }

    Rational operator+(const Rational& o) const { return Rational(bigrat(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(bigrat(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(bigrat(v_ * o.v_)); }
    Rational operator-() const { return Rational(bigrat(-v_)); }

    Rational inv() const {
        if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
        return Rational(bigrat(1 / v_));
    }
    Rational operator/(const Rational& o) const { return *this * o.inv(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

    bigint num() const { return numerator(v_); }
    bigint den() const { return denominator(v_); }
    const bigrat& value() const { return v_; }

    std::string to_string() const {
        std::string s = num().str();
        if (den() != 1) s += "/" + den().str();
        return s;
    }

  private:
    bigrat v_;
};

struct RationalField {
    using element = Rational;

    Rational zero() const { return Rational(); }
    Rational one() const { return Rational(1); }
    Rational from_int(long long n) const { return Rational(n); }

    Rational parse(const std::string& s) const {
        parsed_fraction f = parse_fraction_literal(s);
        bigint num(f.num), den(f.den);
        if (f.negative) num = -num;
        return Rational(num, den);
    }

    /// Small-height random element; used by the general-position samplers,
    /// where tiny integers are as general as anything else.
    template <class Rng>
    Rational sample(Rng& rng) const {
        long long n = static_cast<long long>(rng() % 101) - 50;
        return Rational(n);
    }

    bool finite() const { return false; }
    bool operator==(const RationalField&) const { return true; }
};

inline RationalField Rational::field() const { return RationalField{}; }

// ---------------------------------------------------------------------------
// prime fields, p < 2^63, runtime modulus carried by the element
// ---------------------------------------------------------------------------

struct PrimeField;

class Fp {
  public:
    using field_type = PrimeField;

    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

    field_type field() const;

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const {
        check(o);
        std::uint64_t s = v_ + o.v_;  // p < 2^63, no overflow
        if (s >= p_) s -= p_;
        return raw(s, p_);
    }
    Fp operator-(const Fp& o) const {
        check(o);
        return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_);
    }
    Fp operator*(const Fp& o) const {
        check(o);
        return raw(mulmod_u64(v_, o.v_, p_), p_);
    }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }

    Fp inv() const {
        if (v_ == 0) fail(errc::division_by_zero, "inverse of zero");
        // extended Euclid; residues fit in int64 because p < 2^63
        long long t = 0, newt = 1;
        long long r = static_cast<long long>(p_), newr = static_cast<long long>(v_);
        while (newr != 0) {
            long long q = r / newr;
            t = std::exchange(newt, t - q * newt);
            r = std::exchange(newr, r - q * newr);
        }
        if (t < 0) t += static_cast<long long>(p_);
        return raw(static_cast<std::uint64_t>(t), p_);
    }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    bool operator==(const Fp& o) const {
        check(o);
        return v_ == o.v_;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }
    bool operator<(const Fp& o) const {
        check(o);
        return v_ < o.v_;
    }

    std::string to_string() const { return std::to_string(v_); }

  private:
    static Fp raw(std::uint64_t v, std::uint64_t p) {
        Fp e;
        e.v_ = v;
        e.p_ = p;
        return e;
    }
    void check(const Fp& o) const {
        if (p_ != o.p_) throw std::logic_error("mixed moduli in Fp arithmetic");
    }

    std::uint64_t v_;
    std::uint64_t p_;
};

struct PrimeField {
    using element = Fp;

    std::uint64_t p = 0;

    Fp zero() const { return Fp(0, p); }
    Fp one() const { return Fp(1 % p, p); }
    Fp from_int(long long n) const {
        long long r = n % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    /// Accepts the same literals as the rationals; a/b means a * b^{-1} mod p.
    Fp parse(const std::string& s) const {
        parsed_fraction f = parse_fraction_literal(s);
        bigint num(f.num), den(f.den);
        bigint bp(p);
        Fp n(static_cast<std::uint64_t>(num % bp), p);
        Fp d(static_cast<std::uint64_t>(den % bp), p);
        if (d.is_zero()) fail(errc::division_by_zero, "denominator divisible by p in '" + s + "'");
        Fp r = n / d;
        return f.negative ? -r : r;
    }

    template <class Rng>
    Fp sample(Rng& rng) const {
        return Fp(rng() % p, p);
    }

    bool finite() const { return true; }
    bool operator==(const PrimeField& o) const { return p == o.p; }
};

inline PrimeField Fp::field() const { return PrimeField{p_}; }

inline Fp pow(Fp a, std::uint64_t e) {
    Fp r = a.field().one();
    while (e) {
        if (e & 1) r *= a;
        a *= a;
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// runtime field description (what the CLI reads from config files)
// ---------------------------------------------------------------------------

struct FieldSpec {
    enum class Kind { rational, prime };

    Kind kind = Kind::rational;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return FieldSpec{Kind::rational, 0}; }

    static FieldSpec prime(std::uint64_t p) {
        if (p >= (1ull << 63))
            fail(errc::not_prime, "modulus " + std::to_string(p) + " out of range (need p < 2^63)");
        if (!is_prime_u64(p))
            fail(errc::not_prime, std::to_string(p) + " is not prime");
        return FieldSpec{Kind::prime, p};
    }

    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }

    std::string describe() const {
        return kind == Kind::rational ? "QQ" : "GF(" + std::to_string(p) + ")";
    }
};

/// Run `fn` with the concrete field handle selected by `spec`.
template <class Fn>
auto with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::rational) return fn(RationalField{});
    return fn(PrimeField{spec.p});
}

}  // namespace goppa
