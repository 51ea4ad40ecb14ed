#include "tatesplit/field.hpp"

#include <stdexcept>

#include "tatesplit/exec.hpp"

namespace tatesplit {

bool is_prime_number(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (p <= 2 || p >= (1ULL << 31) || !is_prime_number(p))
        throw InputError("field characteristic must be an odd prime below 2^31, got " + std::to_string(p));
    return {Kind::prime, p};
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "q" || text == "Q") return rationals();
    if (text.rfind("p:", 0) == 0) {
        std::uint64_t p = 0;
        try {
            std::size_t used = 0;
            p = std::stoull(text.substr(2), &used);
            if (used != text.size() - 2) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw InputError("bad field spec '" + text + "'");
        }
        return prime(p);
    }
    throw InputError("bad field spec '" + text + "' (expected q or p:<prime>)");
}

std::string FieldSpec::str() const { return kind == Kind::rationals ? "q" : "p:" + std::to_string(p); }

ModP::value_type ModP::inv(value_type a) const {
    // Fermat: a^(p-2)
    value_type result = 1, base = a % p;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

ModP::value_type ModP::from_int(long v) const {
    const long r = v % static_cast<long>(p);
    return static_cast<value_type>(r < 0 ? r + static_cast<long>(p) : r);
}

ModP::value_type ModP::from_rational(const mpq_class& q) const {
    const mpz_class pz = static_cast<unsigned long>(p);
    mpz_class num = q.get_num() % pz, den = q.get_den() % pz;
    if (num < 0) num += pz;
    if (den < 0) den += pz;
    if (den == 0) throw InputError("coefficient " + q.get_str() + " has denominator divisible by " + std::to_string(p));
    return mul(num.get_ui(), inv(den.get_ui()));
}

mpq_class ModP::lift(value_type a) const {
    if (a > p / 2) return mpq_class(-static_cast<long>(p - a));
    return mpq_class(static_cast<long>(a));
}

mpq_class parse_coefficient(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0) throw InputError("bad coefficient '" + text + "'");
    if (q.get_den() == 0) throw InputError("zero denominator in coefficient '" + text + "'");
    q.canonicalize();
    return q;
}

std::string format_coefficient(const mpq_class& c) { return c.get_str(); }

}  // namespace tatesplit
