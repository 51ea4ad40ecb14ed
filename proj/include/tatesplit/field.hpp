#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace tatesplit {

/// Coefficient field K: the rationals or F_p.
struct FieldSpec {
    enum class Kind { rationals, prime };

    Kind kind = Kind::prime;
    std::uint64_t p = 65521;

    static FieldSpec rationals() { return {Kind::rationals, 0}; }
    static FieldSpec prime(std::uint64_t p);
    /// "q" or "p:<prime>".
    static FieldSpec parse(const std::string& text);

    bool is_prime() const { return kind == Kind::prime; }
    std::string str() const;
    bool operator==(const FieldSpec&) const = default;
};

bool is_prime_number(std::uint64_t n);

/// Arithmetic in F_p, p < 2^31 so products fit in 64 bits.
struct ModP {
    using value_type = std::uint64_t;
    std::uint64_t p;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(value_type a) const { return a == 0; }
    value_type add(value_type a, value_type b) const { return (a + b) % p; }
    value_type sub(value_type a, value_type b) const { return (a + p - b) % p; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
    value_type inv(value_type a) const;
    value_type from_int(long v) const;
    /// Throws InputError when the denominator vanishes mod p.
    value_type from_rational(const mpq_class& q) const;
    /// Symmetric representative in (-p/2, p/2].
    mpq_class lift(value_type a) const;
};

/// Exact rational arithmetic.
struct Rat {
    using value_type = mpq_class;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const { return 1 / a; }
    value_type from_int(long v) const { return v; }
    value_type from_rational(const mpq_class& q) const { return q; }
    mpq_class lift(const value_type& a) const { return a; }
};

/// Parses an integer or "num/den" coefficient.
mpq_class parse_coefficient(const std::string& text);
std::string format_coefficient(const mpq_class& c);

}  // namespace tatesplit
