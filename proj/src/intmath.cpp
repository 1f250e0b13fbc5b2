#include "adelic/intmath.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "adelic/error.hpp"

namespace adelic {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DenominatorNotInS: return "DenominatorNotInS";
    case ErrorKind::MixedPrimeSets: return "MixedPrimeSets";
    case ErrorKind::MixedPrimes: return "MixedPrimes";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::IncompatibleResidues: return "IncompatibleResidues";
    case ErrorKind::ComponentPrimeOutsideSigma: return "ComponentPrimeOutsideSigma";
    case ErrorKind::PrimeOutsideSigma: return "PrimeOutsideSigma";
    case ErrorKind::UnsupportedSigma: return "UnsupportedSigma";
    case ErrorKind::AtomMismatch: return "AtomMismatch";
    case ErrorKind::UnsupportedAtom: return "UnsupportedAtom";
    case ErrorKind::InvalidExpression: return "InvalidExpression";
    case ErrorKind::Overflow: return "Overflow";
    }
    return "Unknown";
}

namespace intmath {

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "integer addition exceeds 64 bits");
    return r;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "integer product exceeds 64 bits");
    return r;
}

i64 checked_pow(i64 base, int exp) {
    if (exp < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mod(i128 a, i64 m) {
    auto r = static_cast<i64>(a % m);
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return mod(static_cast<i128>(a) * b, m);
}

i64 invmod(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 old_r = mod(a, m), r = m;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 q = old_r / r;
        std::swap(old_r, r);
        r -= q * old_r;
        std::swap(old_s, s);
        s -= q * old_s;
    }
    if (old_r != 1)
        throw Error(ErrorKind::DivisionByZero,
                    std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    return mod(old_s, m);
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d <= n / d; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "cannot factor 0");
    if (n == std::numeric_limits<i64>::min())
        throw Error(ErrorKind::Overflow, "cannot factor INT64_MIN");
    n = std::llabs(n);
    std::vector<std::pair<i64, int>> out;
    for (i64 d = 2; d <= n / d; ++d) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of 0");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

i64 strip(i64 n, i64 p) {
    if (n == 0) return 0;
    while (n % p == 0) n /= p;
    return n;
}

}  // namespace intmath
}  // namespace adelic
