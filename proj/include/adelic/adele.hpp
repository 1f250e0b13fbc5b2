#pragma once

// Finite adeles of Z[1/S] and full adeles R x A_f, stored in the normal
// form z / s with z in Z_Sigma and s in S minimal.  The restricted-product
// condition (almost all coordinates integral) holds by construction.

#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "adelic/localization.hpp"
#include "adelic/padic.hpp"
#include "adelic/profinite.hpp"

namespace adelic {

class FiniteAdele {
public:
    using Components = std::map<std::int64_t, PadicNumber>;

    /// Canonical (s, z) form of a component map keyed exactly by a finite Sigma.
    static FiniteAdele make(const Components& components, const PrimeSet& sigma);

    /// All-primes element whose explicitly given coordinates override the
    /// coordinates of `tail` (an element of Z^).  Every explicit prime must
    /// divide (level+1)! of the tail.
    static FiniteAdele make_all_primes(const Components& explicit_components, const ProfiniteInt& tail);

    /// z / s for z in Z^, re-canonicalized (all-primes mode).
    static FiniteAdele from_profinite(const ProfiniteInt& z, std::int64_t s = 1);

    /// Diagonal image of an element of Z[1/S].
    static FiniteAdele diagonal(const SRational& x, int k = PadicNumber::kDefaultPrecision,
                                int level = ProfiniteInt::kDefaultLevel);

    static FiniteAdele one(const PrimeSet& sigma, int k = PadicNumber::kDefaultPrecision,
                           int level = ProfiniteInt::kDefaultLevel);

    /// The idempotent e_p = (delta_{q,p})_q of Z_Sigma; finite Sigma only.
    static FiniteAdele idempotent(std::int64_t p, const PrimeSet& sigma, int k = PadicNumber::kDefaultPrecision);

    const PrimeSet& sigma() const noexcept { return sigma_; }
    /// Minimal denominator s.
    std::int64_t denominator() const noexcept { return s_; }
    /// Integral part z = s * x.
    const SigmaAdicInt& integral_part() const noexcept { return z_; }

    /// The coordinate x_p = z_p / s in Q_p.
    PadicNumber project(std::int64_t p) const;
    /// Every coordinate, finite Sigma only.
    Components components() const;

    bool is_integral() const noexcept { return s_ == 1; }

    /// Multiplies coordinate p by p^{l_p}.
    FiniteAdele scale_by_prime_powers(const std::map<std::int64_t, int>& exponents) const;

    FiniteAdele operator-() const;
    friend FiniteAdele operator+(const FiniteAdele& a, const FiniteAdele& b);
    friend FiniteAdele operator-(const FiniteAdele& a, const FiniteAdele& b);
    friend FiniteAdele operator*(const FiniteAdele& a, const FiniteAdele& b);
    /// Equal denominators and coordinates that agree at the available
    /// precision (the lower profinite level in all-primes mode).
    friend bool operator==(const FiniteAdele& a, const FiniteAdele& b);

    /// `p1: v1, p2: v2` for finite Sigma; `s: .., z: fact[..]` otherwise.
    std::string to_string() const;

private:
    FiniteAdele(PrimeSet sigma, std::int64_t s, SigmaAdicInt z)
        : sigma_(std::move(sigma)), s_(s), z_(std::move(z)) {}

    PrimeSet sigma_;
    std::int64_t s_ = 1;
    SigmaAdicInt z_;
};

/// Real coordinate: exact rational by default, floating point on request.
using RealPart = std::variant<Rational, double>;

RealPart add(const RealPart& a, const RealPart& b);
RealPart mul(const RealPart& a, const RealPart& b);
double to_double(const RealPart& r);
std::string to_string(const RealPart& r);

class Adele {
public:
    Adele(RealPart real, FiniteAdele finite);

    /// Diagonal image of x in R x A_f.
    static Adele diagonal(const SRational& x, int k = PadicNumber::kDefaultPrecision,
                          int level = ProfiniteInt::kDefaultLevel);

    const RealPart& real() const noexcept { return real_; }
    const FiniteAdele& finite() const noexcept { return finite_; }
    const PrimeSet& sigma() const noexcept { return finite_.sigma(); }

    Adele operator-() const;
    friend Adele operator+(const Adele& a, const Adele& b);
    friend Adele operator*(const Adele& a, const Adele& b);
    friend bool operator==(const Adele&, const Adele&) = default;

    /// `(real | p1: v1, p2: v2, ...)`
    std::string to_string() const;

private:
    RealPart real_;
    FiniteAdele finite_;
};

}  // namespace adelic
