#pragma once

#include <cassert>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace kk {

/// A prime characteristic, validated at construction.
class PrimeField {
  public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime(p))
            throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    }

    std::uint32_t characteristic() const { return p_; }

    bool operator==(const PrimeField& other) const { return p_ == other.p_; }
    bool operator!=(const PrimeField& other) const { return p_ != other.p_; }

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        for (std::uint64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }

  private:
    std::uint32_t p_;
};

/// Element of GF(p) for the active characteristic.
///
/// The characteristic is per-thread state (installed with FieldContext),
/// so Fp is a plain 4-byte value and Eigen matrices over it stay compact.
/// All arithmetic is exact; values are normalized to [0, p).
struct Fp {
    std::uint32_t v{0};

    Fp() = default;
    Fp(int x) : v(normalize(x)) {}
    Fp(long x) : v(normalize(x)) {}
    Fp(long long x) : v(normalize(x)) {}
    Fp(unsigned x) : v(normalize_u(x)) {}
    Fp(unsigned long x) : v(normalize_u(x)) {}
    Fp(unsigned long long x) : v(normalize_u(x)) {}

    static std::uint32_t modulus() {
        if (active_modulus < 2)
            throw std::logic_error("Fp: no field installed; create a FieldContext first");
        return active_modulus;
    }

    static std::uint32_t normalize(long long x) {
        if (x == 0 || x == 1) return static_cast<std::uint32_t>(x);  // valid in every field
        const long long p = static_cast<long long>(modulus());
        long long r = x % p;
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r);
    }

    static std::uint32_t normalize_u(unsigned long long x) {
        if (x < 2) return static_cast<std::uint32_t>(x);
        return static_cast<std::uint32_t>(x % modulus());
    }

    bool is_zero() const { return v == 0; }

    Fp operator-() const { return from_raw(v == 0 ? 0 : modulus() - v); }

    Fp& operator+=(Fp o) {
        v += o.v;
        if (v >= modulus()) v -= modulus();
        return *this;
    }
    Fp& operator-=(Fp o) {
        v = (v >= o.v) ? v - o.v : v + modulus() - o.v;
        return *this;
    }
    Fp& operator*=(Fp o) {
        v = static_cast<std::uint32_t>((static_cast<std::uint64_t>(v) * o.v) % modulus());
        return *this;
    }
    Fp& operator/=(Fp o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, Fp b) { return a += b; }
    friend Fp operator-(Fp a, Fp b) { return a -= b; }
    friend Fp operator*(Fp a, Fp b) { return a *= b; }
    friend Fp operator/(Fp a, Fp b) { return a /= b; }

    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

    Fp inverse() const {
        if (v == 0) throw std::domain_error("Fp: division by zero");
        // extended Euclid on (v, p)
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = modulus(), new_r = v;
        while (new_r != 0) {
            const std::int64_t q = r / new_r;
            t -= q * new_t;
            std::swap(t, new_t);
            r -= q * new_r;
            std::swap(r, new_r);
        }
        if (t < 0) t += modulus();
        return from_raw(static_cast<std::uint32_t>(t));
    }

    static Fp from_raw(std::uint32_t raw) {
        Fp x;
        x.v = raw;
        return x;
    }

    static inline thread_local std::uint32_t active_modulus = 0;
};

std::ostream& operator<<(std::ostream& os, Fp x);

/// Installs a characteristic for the current scope (NTL-style context).
/// Nesting with the same prime is the common case and is free.
class FieldContext {
  public:
    explicit FieldContext(const PrimeField& f) : saved_(Fp::active_modulus) {
        Fp::active_modulus = f.characteristic();
    }
    ~FieldContext() { Fp::active_modulus = saved_; }

    FieldContext(const FieldContext&) = delete;
    FieldContext& operator=(const FieldContext&) = delete;

  private:
    std::uint32_t saved_;
};

}  // namespace kk

namespace Eigen {

template <>
struct NumTraits<kk::Fp> {
    typedef kk::Fp Real;
    typedef kk::Fp NonInteger;
    typedef kk::Fp Literal;
    typedef kk::Fp Nested;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline Real epsilon() { return kk::Fp::from_raw(0); }
    static inline Real dummy_precision() { return kk::Fp::from_raw(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
