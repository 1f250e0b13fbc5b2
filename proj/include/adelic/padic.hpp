#pragma once

// Bounded-precision arithmetic in Z_p and Q_p, and the lattice of closed
// subgroups p^n Z_p of Q_p.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adelic/localization.hpp"

namespace adelic {

/// unit * p^val + O(p^(val + k)), with 1 <= unit < p^k and p not dividing
/// unit.  Zero has no valuation and no unit; it keeps a nominal precision.
class PadicNumber {
public:
    static constexpr int kDefaultPrecision = 8;

    static PadicNumber zero(std::int64_t p, int k = kDefaultPrecision);
    static PadicNumber from_integer(std::int64_t p, std::int64_t n, int k = kDefaultPrecision);
    static PadicNumber from_rational(std::int64_t p, const Rational& r, int k = kDefaultPrecision);
    /// Builds unit * p^val; `unit` is reduced modulo p^k and must be prime to p.
    static PadicNumber from_parts(std::int64_t p, int val, std::int64_t unit, int k = kDefaultPrecision);

    /// Parses `p^v*u :: p-adic(p,k)` or `0 :: p-adic(p,k)`.
    static PadicNumber parse(std::string_view text);

    std::int64_t prime() const noexcept { return p_; }
    int precision() const noexcept { return k_; }
    bool is_zero() const noexcept { return !val_.has_value(); }
    /// The p-adic valuation; nullopt stands for +infinity.
    std::optional<int> val() const noexcept { return val_; }
    /// Unit part; 0 for zero.
    std::int64_t unit() const noexcept { return unit_; }

    bool is_integral() const noexcept { return !val_ || *val_ >= 0; }

    PadicNumber operator-() const;
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
    PadicNumber inverse() const;

    /// Multiplication by p^shift; exact.
    PadicNumber shifted(int shift) const;
    /// Same number with its relative precision lowered to k (k <= precision()).
    PadicNumber with_precision(int k) const;

    /// The negative-valuation tail of the p-adic expansion, as a rational in [0, 1).
    Rational fractional_part() const;

    /// Residue modulo p^n of an integral number; requires val + k >= n
    /// unless the residue is already forced to be 0.
    std::int64_t residue(int n) const;

    /// Congruence modulo the smaller of the two absolute precisions; the
    /// precision of zero counts as absolute.
    friend bool agree(const PadicNumber& a, const PadicNumber& b);

    friend bool operator==(const PadicNumber&, const PadicNumber&) = default;

    std::string to_string() const;

private:
    PadicNumber(std::int64_t p, std::optional<int> val, std::int64_t unit, int k)
        : p_(p), val_(val), unit_(unit), k_(k) {}

    std::int64_t p_ = 2;
    std::optional<int> val_;
    std::int64_t unit_ = 0;
    int k_ = kDefaultPrecision;
};

/// p^k for a precision that the arithmetic supports; throws when p^k would
/// not leave headroom in 64 bits.
std::int64_t prime_power(std::int64_t p, int k);

/// A closed subgroup of Q_p: p^n Z_p, the trivial subgroup, or Q_p itself.
class PadicSubgroup {
public:
    enum class Kind { Zero, Lattice, Full };

    static PadicSubgroup lattice(std::int64_t p, int n);
    static PadicSubgroup zero(std::int64_t p);
    static PadicSubgroup full(std::int64_t p);

    /// Parses `Z_2`, `4Z_2`, `2^3Z_2`, `3^-1Z_3`, `0_5`, `Q_5`.
    static PadicSubgroup parse(std::string_view text);

    std::int64_t prime() const noexcept { return p_; }
    Kind kind() const noexcept { return kind_; }
    /// Exponent n of p^n Z_p; meaningful for Kind::Lattice only.
    int exponent() const noexcept { return n_; }

    bool is_compact() const noexcept { return kind_ != Kind::Full; }
    bool is_open() const noexcept { return kind_ != Kind::Zero; }

    bool contains(const PadicNumber& x) const;
    bool contains(const PadicSubgroup& other) const;

    friend PadicSubgroup meet(const PadicSubgroup& a, const PadicSubgroup& b);
    friend PadicSubgroup join(const PadicSubgroup& a, const PadicSubgroup& b);

    friend bool operator==(const PadicSubgroup&, const PadicSubgroup&) = default;

    std::string to_string() const;

private:
    PadicSubgroup(std::int64_t p, Kind kind, int n) : p_(p), kind_(kind), n_(n) {}

    std::int64_t p_ = 2;
    Kind kind_ = Kind::Zero;
    int n_ = 0;
};

/// Finite product of closed subgroups of p-adic fields.
struct SubgroupDescriptor {
    std::vector<PadicSubgroup> factors;

    /// Parses factors joined by ` x `; see PadicSubgroup::parse.
    static SubgroupDescriptor parse(std::string_view text);

    bool is_compact() const;
    bool is_open() const;

    friend bool operator==(const SubgroupDescriptor&, const SubgroupDescriptor&) = default;
    std::string to_string() const;
};

/// The compact open subgroup prod_i p^{n_i} Z_p of Q_p^n.
SubgroupDescriptor compact_open_of_power_space(const std::vector<int>& exponents, std::int64_t p);

}  // namespace adelic
