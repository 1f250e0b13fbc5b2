#pragma once

// The localization Z[1/S] of the integers.
//
// Only the prime set Sigma generated by S is stored: Z[1/S] depends on S
// through Sigma alone.  Sigma is either a finite ascending list of primes or
// the tag "all primes", in which case Z[1/S] is Q.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace adelic {

class PrimeSet {
public:
    /// The empty prime set, Z[1/S] = Z.
    PrimeSet() = default;

    /// Builds a finite prime set; every entry must be prime.  Order and
    /// duplicates in the input are irrelevant.
    static PrimeSet finite(std::vector<std::int64_t> primes);
    static PrimeSet all();

    /// Parses `primes:2,3,7`, `primes:` (empty) or `primes:all`.
    static PrimeSet parse(std::string_view text);

    bool is_all() const noexcept { return all_; }
    bool is_finite() const noexcept { return !all_; }
    bool empty() const noexcept { return !all_ && primes_.empty(); }

    /// Ascending primes of a finite set; empty for AllPrimes.
    const std::vector<std::int64_t>& primes() const noexcept { return primes_; }

    bool contains(std::int64_t p) const;

    /// True when every prime factor of n (n != 0) lies in the set.
    bool admits_denominator(std::int64_t n) const;

    std::string to_string() const;

    friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

private:
    bool all_ = false;
    std::vector<std::int64_t> primes_;
};

/// The prime set generated by a multiplicative generating set.  Generators
/// +1 and -1 are dropped; 0 is rejected.
PrimeSet normalize_primeset(std::span<const std::int64_t> generators);

/// Reduced fraction with positive denominator and checked 64-bit arithmetic.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}  // NOLINT: integers embed implicitly
    Rational(std::int64_t num, std::int64_t den);

    /// Parses `a`, `-a` or `a/b`.
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// Representative of this value modulo 1, in [0, 1).
    Rational frac() const;
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string to_string() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// An element of Z[1/S]: a rational whose denominator factors inside Sigma.
class SRational {
public:
    SRational(Rational value, PrimeSet sigma);

    static SRational make(std::int64_t num, std::int64_t den, const PrimeSet& sigma);

    const Rational& value() const noexcept { return value_; }
    const PrimeSet& sigma() const noexcept { return sigma_; }
    std::int64_t num() const noexcept { return value_.num(); }
    std::int64_t den() const noexcept { return value_.den(); }

    SRational operator-() const;
    friend SRational operator+(const SRational& a, const SRational& b);
    friend SRational operator*(const SRational& a, const SRational& b);
    friend bool operator==(const SRational&, const SRational&) = default;

    std::string to_string() const { return value_.to_string(); }

private:
    Rational value_;
    PrimeSet sigma_;
};

}  // namespace adelic
