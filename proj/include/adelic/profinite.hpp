#pragma once

// Profinite integers in factorial base: x = sum_{i>=1} c_i * i! with
// 0 <= c_i <= i, truncated at level m, so x is known modulo (m+1)!.
// The residue modulo (m+1)! is the stored value; digits are derived.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "adelic/localization.hpp"
#include "adelic/padic.hpp"

namespace adelic {

class ProfiniteInt {
public:
    static constexpr int kDefaultLevel = 10;
    /// 20! is the largest factorial below 2^63.
    static constexpr int kMaxLevel = 19;

    static ProfiniteInt from_int(std::int64_t n, int level = kDefaultLevel);
    /// Digits c_1..c_m; each must satisfy 0 <= c_i <= i.
    static ProfiniteInt from_digits(const std::vector<std::int64_t>& digits);
    /// Parses `fact[c1,c2,...,cm]`.
    static ProfiniteInt parse(std::string_view text);

    int level() const noexcept { return level_; }
    /// (level + 1)!
    std::int64_t modulus() const noexcept;
    /// Canonical value in [0, (level+1)!).
    std::int64_t residue() const noexcept { return residue_; }

    std::vector<std::int64_t> digits() const;

    /// Value modulo n; n must divide (level+1)!.
    std::int64_t to_residue(std::int64_t n) const;

    /// Same element seen at a lower level.
    ProfiniteInt truncated(int level) const;

    ProfiniteInt operator-() const;
    friend ProfiniteInt operator+(const ProfiniteInt& a, const ProfiniteInt& b);
    friend ProfiniteInt operator-(const ProfiniteInt& a, const ProfiniteInt& b);
    friend ProfiniteInt operator*(const ProfiniteInt& a, const ProfiniteInt& b);
    friend bool operator==(const ProfiniteInt&, const ProfiniteInt&) = default;

    std::string to_string() const;

private:
    ProfiniteInt(std::int64_t residue, int level) : residue_(residue), level_(level) {}

    std::int64_t residue_ = 0;
    int level_ = kDefaultLevel;
};

std::int64_t factorial(int n);

/// Largest level m with (m+1)! dividing n, or 0 when even 2! does not divide n.
int level_dividing(std::int64_t n);

/// Chinese-remainder lift of (residue, modulus) pairs with pairwise coprime moduli.
ProfiniteInt from_residues(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                           int level = ProfiniteInt::kDefaultLevel);

/// The Z_q coordinate of x, known modulo q^k.  Relative precision is k
/// minus the valuation of the residue.
PadicNumber component_at(const ProfiniteInt& x, std::int64_t q, int k);

/// Element of Z_Sigma: a component per prime of a finite Sigma, or a whole
/// profinite integer when Sigma is all primes.
class SigmaAdicInt {
public:
    using Components = std::map<std::int64_t, PadicNumber>;

    SigmaAdicInt(Components components, PrimeSet sigma);
    explicit SigmaAdicInt(ProfiniteInt whole);

    const PrimeSet& sigma() const noexcept { return sigma_; }
    bool is_profinite() const noexcept { return std::holds_alternative<ProfiniteInt>(data_); }
    const Components& components() const;
    const ProfiniteInt& profinite() const;

    friend bool operator==(const SigmaAdicInt&, const SigmaAdicInt&) = default;

private:
    PrimeSet sigma_;
    std::variant<Components, ProfiniteInt> data_;
};

/// The quotient map Z^ -> Z_Sigma.
SigmaAdicInt project_to_sigma(const ProfiniteInt& x, const PrimeSet& sigma, int k);

}  // namespace adelic
