#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "gammalab/common.hpp"
#include "gammalab/instance.hpp"

namespace gammalab {

// Prime field GF(p) with runtime modulus, p < 2^16. Elements are canonical
// representatives in [0, p); all arithmetic is exact.
class Fp {
public:
    using Elem = std::uint32_t;

    explicit Fp(std::uint32_t p) : p_(p) {
        if (!is_prime(p) || p >= (1u << 16))
            throw ConfigError("Fp: modulus must be a prime below 2^16");
    }

    std::uint32_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Elem>(r);
    }

    Elem add(Elem x, Elem y) const { return (x + y) % p_; }
    Elem sub(Elem x, Elem y) const { return (x + p_ - y) % p_; }
    Elem neg(Elem x) const { return x ? p_ - x : 0; }
    Elem mul(Elem x, Elem y) const {
        return static_cast<Elem>((std::uint64_t(x) * y) % p_);
    }
    Elem inv(Elem x) const {
        if (!x) throw Error("Fp: division by zero");
        // p is prime, so x^(p-2) inverts x.
        Elem r = 1, base = x;
        std::uint32_t e = p_ - 2;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    bool is_zero(Elem x) const { return x == 0; }
    std::string str(Elem x) const { return std::to_string(x); }

private:
    std::uint32_t p_;
};

// Exact rationals on arbitrary-precision integers; the prime = 0 mode.
class Rat {
public:
    using Elem = boost::multiprecision::cpp_rational;

    std::uint32_t modulus() const { return 0; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return Elem(v); }

    Elem add(const Elem& x, const Elem& y) const { return x + y; }
    Elem sub(const Elem& x, const Elem& y) const { return x - y; }
    Elem neg(const Elem& x) const { return -x; }
    Elem mul(const Elem& x, const Elem& y) const { return x * y; }
    Elem inv(const Elem& x) const {
        if (x == 0) throw Error("Rat: division by zero");
        return 1 / x;
    }

    bool is_zero(const Elem& x) const { return x == 0; }
    std::string str(const Elem& x) const { return x.str(); }
};

template <class F>
F field_for(const Instance& inst);

template <>
inline Fp field_for<Fp>(const Instance& inst) {
    if (inst.prime == 0)
        throw ConfigError("instance has prime = 0 (rationals), expected GF(p)");
    return Fp(inst.prime);
}

template <>
inline Rat field_for<Rat>(const Instance& inst) {
    if (inst.prime != 0)
        throw ConfigError("instance has prime > 0, expected rationals");
    return Rat{};
}

}  // namespace gammalab
