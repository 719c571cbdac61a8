#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gammalab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad instance parameters, CLI flags or config files. CLI maps this to exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// An index (or an append to one) violating the side conditions of the index set.
struct InvalidIndexError : Error {
    using Error::Error;
};

// Malformed operator-expression text.
struct ParseError : Error {
    using Error::Error;
};

// An operation invoked outside its stated domain.
struct PreconditionError : Error {
    using Error::Error;
};

// A certificate that should verify did not; surfaces as a failing record.
struct CertificateError : Error {
    using Error::Error;
};

// A broken internal invariant (rule engine emitted an inadmissible symbol,
// or two independent computations of the same quantity disagree).
struct InternalError : Error {
    using Error::Error;
};

// Deterministic splitmix64 generator. Used instead of <random> distributions so
// that seeded runs produce identical streams on every platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Modulo bias is irrelevant at our ranges.
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    // Uniform in [lo, hi] inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    template <class Vec>
    const typename Vec::value_type& pick(const Vec& v) {
        return v[below(v.size())];
    }

private:
    std::uint64_t state_;
};

}  // namespace gammalab
