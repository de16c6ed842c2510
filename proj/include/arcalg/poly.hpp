#pragma once

// Single-variable integer polynomials in q, dense coefficient vector.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace arcalg {

struct Poly {
    std::vector<long long> c;  // c[k] is the coefficient of q^k; no trailing zeros

    Poly() = default;
    explicit Poly(long long constant) {
        if (constant != 0) c.push_back(constant);
    }

    static Poly q_power(int k, long long coeff = 1) {
        Poly p;
        if (coeff != 0) {
            p.c.assign(k + 1, 0);
            p.c[k] = coeff;
        }
        return p;
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for 0

    long long coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : 0;
    }

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        Poly r;
        r.c.resize(std::max(c.size(), o.c.size()), 0);
        for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
        r.trim();
        return r;
    }

    Poly operator-(const Poly& o) const {
        Poly r;
        r.c.resize(std::max(c.size(), o.c.size()), 0);
        for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = coeff(static_cast<int>(k)) - o.coeff(static_cast<int>(k));
        r.trim();
        return r;
    }

    Poly operator*(const Poly& o) const {
        Poly r;
        if (is_zero() || o.is_zero()) return r;
        r.c.assign(c.size() + o.c.size() - 1, 0);
        for (size_t a = 0; a < c.size(); ++a)
            for (size_t b = 0; b < o.c.size(); ++b) r.c[a + b] += c[a] * o.c[b];
        r.trim();
        return r;
    }

    Poly times_q(int k = 1) const {
        Poly r;
        if (is_zero()) return r;
        r.c.assign(c.size() + k, 0);
        for (size_t a = 0; a < c.size(); ++a) r.c[a + k] = c[a];
        return r;
    }

    // q -> -q
    Poly alternate() const {
        Poly r = *this;
        for (size_t k = 1; k < r.c.size(); k += 2) r.c[k] = -r.c[k];
        return r;
    }

    long long eval_at_one() const {
        long long s = 0;
        for (long long x : c) s += x;
        return s;
    }

    bool nonneg_coeffs() const {
        for (long long x : c)
            if (x < 0) return false;
        return true;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            long long a = c[k];
            if (a == 0) continue;
            if (!first) os << (a > 0 ? " + " : " - ");
            else if (a < 0) os << "-";
            long long mag = a > 0 ? a : -a;
            if (mag != 1 || k == 0) os << mag;
            if (k >= 1) {
                os << "q";
                if (k > 1) os << "^" << k;
            }
            first = false;
        }
        return os.str();
    }
};

}  // namespace arcalg
