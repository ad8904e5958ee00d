#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

// Exact scalar arithmetic. Two coefficient fields are supported: the
// rationals (arbitrary precision, via GMP) and prime fields F_p. A field is
// an ordinary value object carrying the operations; matrices and everything
// above them are templated on the field type. No floating point anywhere.

namespace coendcalc {

class Rationals {
  public:
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long v) const { return Elem(v); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::invalid_argument("Rationals: division by zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    // Canonical form "n/d", lowest terms, d > 0. mpq_class keeps values
    // canonical already.
    std::string to_string(const Elem& a) const {
        return a.get_num().get_str() + "/" + a.get_den().get_str();
    }
    Elem parse(const std::string& s) const {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rationals: cannot parse '" + s + "'");
        q.canonicalize();
        return q;
    }

    std::string name() const { return "Q"; }
    bool operator==(const Rationals&) const { return true; }
    bool operator!=(const Rationals&) const { return false; }
};

class PrimeField {
  public:
    using Elem = std::int64_t;

    PrimeField() : p_(2) {}
    explicit PrimeField(std::int64_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    }

    std::int64_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return p_ == 1 ? 0 : 1; }
    Elem from_int(long v) const {
        Elem r = v % p_;
        return r < 0 ? r + p_ : r;
    }

    Elem add(Elem a, Elem b) const { Elem r = a + b; return r >= p_ ? r - p_ : r; }
    Elem sub(Elem a, Elem b) const { Elem r = a - b; return r < 0 ? r + p_ : r; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem inv(Elem a) const {
        if (a == 0) throw std::invalid_argument("PrimeField: division by zero");
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        return t < 0 ? t + p_ : t;
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    std::string to_string(Elem a) const { return std::to_string(a); }
    Elem parse(const std::string& s) const { return from_int(std::stoll(s)); }

    std::string name() const { return "F" + std::to_string(p_); }
    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    static bool is_prime(std::int64_t p) {
        if (p < 2) return false;
        for (std::int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

  private:
    std::int64_t p_;
};

// Runtime field descriptor, used at the JSON/CLI boundary.
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };
    Kind kind = Kind::Rationals;
    std::int64_t p = 0;

    static FieldSpec rationals() { return {Kind::Rationals, 0}; }
    static FieldSpec prime(std::int64_t p) { return {Kind::PrimeField, p}; }

    // "Q" or "F<p>"
    static FieldSpec parse(const std::string& s) {
        if (s == "Q") return rationals();
        if (s.size() >= 2 && s[0] == 'F') {
            std::int64_t p = std::stoll(s.substr(1));
            if (!PrimeField::is_prime(p)) throw std::invalid_argument("FieldSpec: " + s + ": not a prime field");
            return prime(p);
        }
        throw std::invalid_argument("FieldSpec: cannot parse '" + s + "'");
    }
    std::string to_string() const {
        return kind == Kind::Rationals ? "Q" : "F" + std::to_string(p);
    }
    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
};

// Dispatch a generic callable on the concrete field type.
template <class Fn>
auto with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::Rationals) return fn(Rationals{});
    return fn(PrimeField{spec.p});
}

template <class F> FieldSpec field_spec_of(const F&);
inline FieldSpec field_spec_of(const Rationals&) { return FieldSpec::rationals(); }
inline FieldSpec field_spec_of(const PrimeField& f) { return FieldSpec::prime(f.modulus()); }

}  // namespace coendcalc
