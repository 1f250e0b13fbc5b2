#include "adelic/duality.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "adelic/error.hpp"
#include "adelic/intmath.hpp"

namespace adelic {

using intmath::i64;

// --- CircleValue ------------------------------------------------------------

namespace {
double wrap(double t) {
    t -= std::floor(t);
    return t >= 1.0 ? 0.0 : t;
}
}  // namespace

CircleValue::CircleValue(const Rational& turns, double real_turns)
    : rational_(turns.frac()), real_(wrap(real_turns)) {}

CircleValue operator+(const CircleValue& a, const CircleValue& b) {
    return CircleValue(a.rational_ + b.rational_, a.real_ + b.real_);
}

CircleValue CircleValue::operator-() const { return CircleValue(-rational_, -real_); }

double distance(const CircleValue& a, const CircleValue& b) {
    double d = (a.rational_ - b.rational_).frac().to_double() + (a.real_ - b.real_);
    d = wrap(d);
    return std::min(d, 1.0 - d);
}

std::string CircleValue::to_string() const {
    if (real_ == 0.0) return rational_.to_string() + " turn";
    std::ostringstream os;
    os.precision(17);
    if (!rational_.is_zero()) os << rational_.to_string() << " + ";
    os << real_ << " turn";
    return os.str();
}

// --- Character --------------------------------------------------------------

Character Character::real(RealPart t) { return Character(RealCharacter{std::move(t)}); }

Character Character::padic_field(PadicNumber y) { return Character(PadicFieldCharacter{std::move(y)}); }

Character Character::padic_integers(std::int64_t q, const Rational& a) {
    if (!intmath::is_prime(q)) throw Error(ErrorKind::InvalidArgument, std::to_string(q) + " is not prime");
    if (intmath::strip(a.den(), q) != 1)
        throw Error(ErrorKind::InvalidArgument,
                    a.to_string() + " is not a point of Z(" + std::to_string(q) + "^inf)");
    return Character(PadicIntegerCharacter{q, a.frac()});
}

Character Character::localization(Adele a) { return Character(LocalizationCharacter{std::move(a)}); }

std::string Character::atom() const {
    return std::visit(
        [](const auto& c) -> std::string {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, RealCharacter>) return "R";
            else if constexpr (std::is_same_v<T, PadicFieldCharacter>) return "Qp:" + std::to_string(c.y.prime());
            else if constexpr (std::is_same_v<T, PadicIntegerCharacter>) return "Zp:" + std::to_string(c.q);
            else return "ZS";
        },
        param_);
}

namespace {

CircleValue from_real(const RealPart& r) {
    if (auto q = std::get_if<Rational>(&r)) return CircleValue(*q);
    return CircleValue(Rational(0), std::get<double>(r));
}

[[noreturn]] void mismatch(const Character& chi, const char* element) {
    throw Error(ErrorKind::AtomMismatch, "character on " + chi.atom() + " applied to " + element);
}

const char* element_kind(const Element& x) {
    switch (x.index()) {
    case 0: return "a real number";
    case 1: return "a p-adic number";
    default: return "an element of Z[1/S]";
    }
}

/// a x mod 1 for a Pruefer point a = n / q^e and x in Z_q.
Rational pruefer_times(const Rational& a, const PadicNumber& x) {
    const auto q = x.prime();
    if (a.is_zero()) return Rational(0);
    const int e = intmath::valuation(a.den(), q);
    const auto r = x.residue(e);
    return Rational(intmath::mulmod(a.num(), r, a.den()), a.den());
}

CircleValue pair_localization(const Adele& a, const SRational& x) {
    if (a.sigma() != x.sigma())
        throw Error(ErrorKind::MixedPrimeSets, a.sigma().to_string() + " vs " + x.sigma().to_string());
    CircleValue total = from_real(mul(a.real(), x.value()));
    if (x.value().is_zero()) return total;
    const auto& fin = a.finite();
    std::set<i64> primes;
    if (a.sigma().is_all()) {
        for (auto [p, e] : intmath::factor(fin.denominator())) primes.insert(p);
        for (auto [p, e] : intmath::factor(x.den())) primes.insert(p);
    } else {
        primes.insert(a.sigma().primes().begin(), a.sigma().primes().end());
    }
    for (auto p : primes) {
        const auto ap = fin.project(p);
        const auto prod = ap * PadicNumber::from_rational(p, x.value(), ap.precision());
        total = total + CircleValue(prod.fractional_part());
    }
    return total;
}

}  // namespace

CircleValue pair(const Character& chi, const Element& x) {
    return std::visit(
        [&](const auto& c) -> CircleValue {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, RealCharacter>) {
                auto r = std::get_if<RealPart>(&x);
                if (!r) mismatch(chi, element_kind(x));
                return from_real(mul(c.t, *r));
            } else if constexpr (std::is_same_v<T, PadicFieldCharacter>) {
                auto y = std::get_if<PadicNumber>(&x);
                if (!y || y->prime() != c.y.prime()) mismatch(chi, element_kind(x));
                return CircleValue((c.y * *y).fractional_part());
            } else if constexpr (std::is_same_v<T, PadicIntegerCharacter>) {
                auto y = std::get_if<PadicNumber>(&x);
                if (!y || y->prime() != c.q || !y->is_integral()) mismatch(chi, element_kind(x));
                return CircleValue(pruefer_times(c.a, *y));
            } else {
                auto s = std::get_if<SRational>(&x);
                if (!s) mismatch(chi, element_kind(x));
                return pair_localization(c.a, *s);
            }
        },
        chi.parameter());
}

Character act(const Character& chi, const SRational& r) {
    return std::visit(
        [&](const auto& c) -> Character {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, RealCharacter>) {
                return Character::real(mul(c.t, r.value()));
            } else if constexpr (std::is_same_v<T, PadicFieldCharacter>) {
                const auto p = c.y.prime();
                return Character::padic_field(c.y * PadicNumber::from_rational(p, r.value(), c.y.precision()));
            } else if constexpr (std::is_same_v<T, PadicIntegerCharacter>) {
                if (c.a.is_zero() || r.value().is_zero()) return Character::padic_integers(c.q, Rational(0));
                if (r.den() % c.q == 0)
                    throw Error(ErrorKind::AtomMismatch,
                                "scalar " + r.to_string() + " does not act on Z_" + std::to_string(c.q));
                const auto m = c.a.den();
                const auto scalar = intmath::mulmod(intmath::mod(r.num(), m), intmath::invmod(r.den(), m), m);
                return Character::padic_integers(c.q, Rational(intmath::mulmod(c.a.num(), scalar, m), m));
            } else {
                const auto& fin = c.a.finite();
                int k = PadicNumber::kDefaultPrecision;
                if (!fin.sigma().is_all() && !fin.sigma().empty())
                    k = fin.project(fin.sigma().primes().front()).precision();
                const int level = fin.sigma().is_all() ? fin.integral_part().profinite().level()
                                                       : ProfiniteInt::kDefaultLevel;
                return Character::localization(c.a * Adele::diagonal(r, k, level));
            }
        },
        chi.parameter());
}

Character combine(const Character& chi, const Character& psi) {
    if (chi.atom() != psi.atom())
        throw Error(ErrorKind::AtomMismatch, "cannot multiply characters on " + chi.atom() + " and " + psi.atom());
    return std::visit(
        [&](const auto& c) -> Character {
            using T = std::decay_t<decltype(c)>;
            const auto& d = std::get<T>(psi.parameter());
            if constexpr (std::is_same_v<T, RealCharacter>) return Character::real(add(c.t, d.t));
            else if constexpr (std::is_same_v<T, PadicFieldCharacter>) return Character::padic_field(c.y + d.y);
            else if constexpr (std::is_same_v<T, PadicIntegerCharacter>) return Character::padic_integers(c.q, c.a + d.a);
            else return Character::localization(c.a + d.a);
        },
        chi.parameter());
}

// --- annihilators -----------------------------------------------------------

namespace {
PadicSubgroup dual_subgroup(const PadicSubgroup& h) {
    switch (h.kind()) {
    case PadicSubgroup::Kind::Zero: return PadicSubgroup::full(h.prime());
    case PadicSubgroup::Kind::Full: return PadicSubgroup::zero(h.prime());
    case PadicSubgroup::Kind::Lattice: return PadicSubgroup::lattice(h.prime(), -h.exponent());
    }
    return h;
}
}  // namespace

SubgroupDescriptor annihilator(const SubgroupDescriptor& h) {
    SubgroupDescriptor out;
    for (const auto& f : h.factors) out.factors.push_back(dual_subgroup(f));
    return out;
}

SubgroupDescriptor orthogonal(const SubgroupDescriptor& x) {
    // Q_p is identified with its dual through <y, x> = frac_p(xy), which is
    // symmetric, so the orthogonal complement uses the same rule.
    SubgroupDescriptor out;
    for (const auto& f : x.factors) out.factors.push_back(dual_subgroup(f));
    return out;
}

// --- anti-diagonal ----------------------------------------------------------

Adele antidiagonal(const SRational& x, int k) {
    const auto fin = -FiniteAdele::diagonal(x, k);
    return Adele(x.value(), fin);
}

bool antidiagonal_discreteness_check(std::int64_t bound, const PrimeSet& sigma) {
    if (sigma.is_all()) throw Error(ErrorKind::UnsupportedSigma, "discreteness check needs a finite prime set");
    if (bound < 1) throw Error(ErrorKind::InvalidArgument, "height bound must be at least 1");
    for (i64 d = 1; d <= bound; ++d) {
        if (!sigma.admits_denominator(d)) continue;
        for (i64 n = -bound; n <= bound; ++n) {
            if (n == 0 || std::gcd(n, d) != 1) continue;
            const Rational x(n, d);
            // real coordinate x, finite coordinates -x
            if (!(Rational(-1) < x && x < Rational(1))) continue;
            bool integral = true;
            for (auto p : sigma.primes())
                if (!PadicNumber::from_rational(p, -x).is_integral()) {
                    integral = false;
                    break;
                }
            if (integral) return false;
        }
    }
    return true;
}

}  // namespace adelic
