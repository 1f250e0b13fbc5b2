#pragma once

// Characters and their values on the circle.
//
// Circle values are kept as turns modulo 1.  Pairings used here:
//   R          <t, x> = t x
//   Q_p        <y, x> = frac_p(x y)
//   Z_q        <a, x> = a x mod 1, a a q-power fraction (Pruefer element)
//   Z[1/S]     <a, x> = a_inf x + sum_{p in Sigma} frac_p(a_p x)
// The last one is well defined on A / Z[1/S] with Z[1/S] embedded
// anti-diagonally, x -> (x, -x, -x, ...).

#include <cstdint>
#include <string>
#include <variant>

#include "adelic/adele.hpp"
#include "adelic/localization.hpp"
#include "adelic/padic.hpp"

namespace adelic {

class CircleValue {
public:
    CircleValue() = default;
    explicit CircleValue(const Rational& turns, double real_turns = 0.0);

    const Rational& rational_part() const noexcept { return rational_; }
    double real_part() const noexcept { return real_; }
    bool is_identity() const noexcept { return rational_.is_zero() && real_ == 0.0; }

    friend CircleValue operator+(const CircleValue& a, const CircleValue& b);
    CircleValue operator-() const;
    friend bool operator==(const CircleValue&, const CircleValue&) = default;

    /// Distance on R/Z between the two points, in turns.
    friend double distance(const CircleValue& a, const CircleValue& b);

    /// `3/8 turn`, or `3/8 + 0.25 turn` when a floating part is present.
    std::string to_string() const;

private:
    Rational rational_;
    double real_ = 0.0;
};

struct RealCharacter {
    RealPart t;
    friend bool operator==(const RealCharacter&, const RealCharacter&) = default;
};

struct PadicFieldCharacter {
    PadicNumber y;
    friend bool operator==(const PadicFieldCharacter&, const PadicFieldCharacter&) = default;
};

/// Character of Z_q given by a point of the Pruefer group Z(q^inf).
struct PadicIntegerCharacter {
    std::int64_t q;
    Rational a;
    friend bool operator==(const PadicIntegerCharacter&, const PadicIntegerCharacter&) = default;
};

/// Character of discrete Z[1/S] given by an adele class.
struct LocalizationCharacter {
    Adele a;
    friend bool operator==(const LocalizationCharacter&, const LocalizationCharacter&) = default;
};

using Element = std::variant<RealPart, PadicNumber, SRational>;

class Character {
public:
    using Parameter = std::variant<RealCharacter, PadicFieldCharacter, PadicIntegerCharacter, LocalizationCharacter>;

    static Character real(RealPart t);
    static Character padic_field(PadicNumber y);
    /// `a` is reduced modulo 1 and must have a power of q as denominator.
    static Character padic_integers(std::int64_t q, const Rational& a);
    static Character localization(Adele a);

    const Parameter& parameter() const noexcept { return param_; }
    /// `R`, `Qp:<p>`, `Zp:<q>` or `ZS`.
    std::string atom() const;

    friend bool operator==(const Character&, const Character&) = default;

private:
    explicit Character(Parameter param) : param_(std::move(param)) {}
    Parameter param_;
};

CircleValue pair(const Character& chi, const Element& x);

/// chi^r, the character x -> chi(r x).
Character act(const Character& chi, const SRational& r);

/// The pointwise product chi * psi of two characters on the same atom.
Character combine(const Character& chi, const Character& psi);

/// Annihilator A(H) under the self-duality of Q_p: A(p^n Z_p) = p^-n Z_p.
SubgroupDescriptor annihilator(const SubgroupDescriptor& h);
/// Orthogonal complement, the inverse of annihilator on this lattice.
SubgroupDescriptor orthogonal(const SubgroupDescriptor& x);

/// Image of x under x -> (x, -x, -x, ...).
Adele antidiagonal(const SRational& x, int k = PadicNumber::kDefaultPrecision);

/// Enumerates x in Z[1/S] with |numerator|, denominator <= bound and checks
/// that 0 is the only one whose anti-diagonal image lies in ]-1,1[ x Z_Sigma.
bool antidiagonal_discreteness_check(std::int64_t bound, const PrimeSet& sigma);

}  // namespace adelic
