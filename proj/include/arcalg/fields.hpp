#pragma once

// Exact coefficient fields: arbitrary-precision rationals and prime fields
// F_p with p < 2^61.  The prime-field modulus is a process-wide runtime
// setting in the style of a modular-arithmetic context; computations over
// different primes run sequentially.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace arcalg {

using Rational = boost::multiprecision::cpp_rational;

struct Fp {
    uint64_t v = 0;

    static uint64_t& modulus() {
        static uint64_t p = 0;
        return p;
    }

    static void set_modulus(uint64_t p) {
        if (p < 2 || p >= (uint64_t(1) << 61)) throw std::invalid_argument("Fp: modulus out of range");
        modulus() = p;
    }

    Fp() = default;
    explicit Fp(long long x) {
        long long r = x % static_cast<long long>(modulus());
        if (r < 0) r += static_cast<long long>(modulus());
        v = static_cast<uint64_t>(r);
    }

    friend Fp operator+(Fp a, Fp b) {
        uint64_t s = a.v + b.v;
        if (s >= modulus()) s -= modulus();
        return from_raw(s);
    }
    friend Fp operator-(Fp a, Fp b) {
        uint64_t s = a.v >= b.v ? a.v - b.v : a.v + modulus() - b.v;
        return from_raw(s);
    }
    friend Fp operator*(Fp a, Fp b) {
        return from_raw(static_cast<uint64_t>((unsigned __int128)a.v * b.v % modulus()));
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
    Fp operator-() const { return from_raw(v == 0 ? 0 : modulus() - v); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

    Fp inv() const {
        if (v == 0) throw std::domain_error("Fp: division by zero");
        // extended Euclid on (v, p)
        int64_t t0 = 0, t1 = 1;
        uint64_t r0 = modulus(), r1 = v;
        while (r1 != 0) {
            uint64_t q = r0 / r1;
            uint64_t r2 = r0 - q * r1;
            int64_t t2 = t0 - static_cast<int64_t>(q) * t1;
            r0 = r1;
            r1 = r2;
            t0 = t1;
            t1 = t2;
        }
        int64_t t = t0;
        if (t < 0) t += static_cast<int64_t>(modulus());
        return from_raw(static_cast<uint64_t>(t));
    }

    static Fp from_raw(uint64_t x) {
        Fp r;
        r.v = x;
        return r;
    }
};

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_long(long long x) { return Rational(x); }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational inv(const Rational& x) {
        if (x == 0) throw std::domain_error("Rational: division by zero");
        return Rational(1) / x;
    }
    static std::string str(const Rational& x) { return x.str(); }
    static Rational parse(const std::string& s) {
        return Rational(s);
    }
    static unsigned long long characteristic() { return 0; }
    static std::string name() { return "Q"; }
};

template <>
struct FieldTraits<Fp> {
    static Fp zero() { return Fp::from_raw(0); }
    static Fp one() { return Fp(1); }
    static Fp from_long(long long x) { return Fp(x); }
    static bool is_zero(Fp x) { return x.v == 0; }
    static Fp inv(Fp x) { return x.inv(); }
    static std::string str(Fp x) { return std::to_string(x.v) + " mod " + std::to_string(Fp::modulus()); }
    static Fp parse(const std::string& s) {
        size_t pos = s.find(" mod ");
        std::string num = (pos == std::string::npos) ? s : s.substr(0, pos);
        if (pos != std::string::npos) {
            unsigned long long p = std::stoull(s.substr(pos + 5));
            if (p != Fp::modulus()) throw std::invalid_argument("Fp: coefficient modulus mismatch");
        }
        return Fp(std::stoll(num));
    }
    static unsigned long long characteristic() { return Fp::modulus(); }
    static std::string name() { return "F" + std::to_string(Fp::modulus()); }
};

}  // namespace arcalg
