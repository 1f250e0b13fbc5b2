#include "adelic/adele.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "adelic/error.hpp"
#include "adelic/intmath.hpp"

namespace adelic {

using intmath::i64;

namespace {

/// x * n for a nonzero integer n, exact in (val, unit).
PadicNumber times_integer(const PadicNumber& x, i64 n) {
    if (x.is_zero()) return x;
    const auto p = x.prime();
    return x.shifted(intmath::valuation(n, p)) *
           PadicNumber::from_integer(p, intmath::strip(n, p), x.precision());
}

PadicNumber divided_by_integer(const PadicNumber& x, i64 n) {
    if (x.is_zero()) return x;
    const auto p = x.prime();
    return x.shifted(-intmath::valuation(n, p)) *
           PadicNumber::from_integer(p, intmath::strip(n, p), x.precision()).inverse();
}

void require_same_sigma(const FiniteAdele& a, const FiniteAdele& b) {
    if (a.sigma() != b.sigma())
        throw Error(ErrorKind::MixedPrimeSets, a.sigma().to_string() + " vs " + b.sigma().to_string());
}

/// Exact division of z by p in Z^; the level drops to what (m+1)!/p still determines.
ProfiniteInt divide_exact(const ProfiniteInt& z, i64 p) {
    const auto n = z.modulus() / p;
    const int level = level_dividing(n);
    if (level < 1)
        throw Error(ErrorKind::InsufficientPrecision, "dividing by " + std::to_string(p) + " exhausts the level");
    return ProfiniteInt::from_int(z.residue() / p, level);
}

void require_visible(i64 s, i64 modulus) {
    for (auto [p, e] : intmath::factor(s))
        if (modulus % p != 0)
            throw Error(ErrorKind::InsufficientPrecision,
                        "prime " + std::to_string(p) + " is beyond the profinite level");
}

}  // namespace

FiniteAdele FiniteAdele::make(const Components& components, const PrimeSet& sigma) {
    if (sigma.is_all())
        throw Error(ErrorKind::UnsupportedSigma, "use make_all_primes for Sigma = all primes");
    for (const auto& [p, x] : components) {
        if (!sigma.contains(p))
            throw Error(ErrorKind::ComponentPrimeOutsideSigma,
                        "component at " + std::to_string(p) + " outside " + sigma.to_string());
        if (x.prime() != p)
            throw Error(ErrorKind::MixedPrimes, "component keyed " + std::to_string(p) + " lives in Q_" +
                                                    std::to_string(x.prime()));
    }
    i64 s = 1;
    for (auto p : sigma.primes()) {
        auto it = components.find(p);
        if (it == components.end())
            throw Error(ErrorKind::InvalidArgument, "missing component at " + std::to_string(p));
        const auto& x = it->second;
        if (!x.is_zero() && *x.val() < 0) s = intmath::checked_mul(s, intmath::checked_pow(p, -*x.val()));
    }
    SigmaAdicInt::Components z;
    for (const auto& [p, x] : components) z.emplace(p, times_integer(x, s));
    return FiniteAdele(sigma, s, SigmaAdicInt(std::move(z), sigma));
}

FiniteAdele FiniteAdele::from_profinite(const ProfiniteInt& z, std::int64_t s) {
    if (s < 1) throw Error(ErrorKind::InvalidArgument, "denominator must be positive");
    if (z.residue() == 0) return FiniteAdele(PrimeSet::all(), 1, SigmaAdicInt(z));
    require_visible(s, z.modulus());
    ProfiniteInt num = z;
    auto primes = intmath::factor(s);
    // largest prime first
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
        const auto p = it->first;
        while (s % p == 0) {
            if (num.modulus() % p != 0)
                throw Error(ErrorKind::InsufficientPrecision,
                            "prime " + std::to_string(p) + " of the denominator is beyond the profinite level");
            if (num.residue() % p != 0) break;
            num = divide_exact(num, p);
            s /= p;
        }
    }
    return FiniteAdele(PrimeSet::all(), s, SigmaAdicInt(num));
}

FiniteAdele FiniteAdele::make_all_primes(const Components& explicit_components, const ProfiniteInt& tail) {
    const auto n = tail.modulus();
    i64 s = 1;
    for (const auto& [p, x] : explicit_components) {
        if (x.prime() != p)
            throw Error(ErrorKind::MixedPrimes, "component keyed " + std::to_string(p) + " lives in Q_" +
                                                    std::to_string(x.prime()));
        if (n % p != 0)
            throw Error(ErrorKind::InsufficientPrecision,
                        "prime " + std::to_string(p) + " is beyond the profinite level of the tail");
        if (!x.is_zero() && *x.val() < 0) s = intmath::checked_mul(s, intmath::checked_pow(p, -*x.val()));
    }
    std::vector<std::pair<i64, i64>> pairs;
    i64 cofactor = n;
    for (const auto& [p, x] : explicit_components) {
        const int e = intmath::valuation(n, p);
        const auto pe = intmath::checked_pow(p, e);
        pairs.emplace_back(times_integer(x, s).residue(e), pe);
        cofactor /= pe;
    }
    pairs.emplace_back(intmath::mulmod(tail.residue(), s, cofactor), cofactor);
    return from_profinite(from_residues(pairs, tail.level()), s);
}

FiniteAdele FiniteAdele::diagonal(const SRational& x, int k, int level) {
    const auto& sigma = x.sigma();
    if (sigma.is_all()) return from_profinite(ProfiniteInt::from_int(x.num(), level), x.den());
    Components comps;
    for (auto p : sigma.primes()) comps.emplace(p, PadicNumber::from_rational(p, x.value(), k));
    return make(comps, sigma);
}

FiniteAdele FiniteAdele::one(const PrimeSet& sigma, int k, int level) {
    return diagonal(SRational(Rational(1), sigma), k, level);
}

FiniteAdele FiniteAdele::idempotent(std::int64_t p, const PrimeSet& sigma, int k) {
    if (sigma.is_all())
        throw Error(ErrorKind::UnsupportedSigma, "idempotents need a finite prime set");
    if (!sigma.contains(p))
        throw Error(ErrorKind::PrimeOutsideSigma, std::to_string(p) + " not in " + sigma.to_string());
    Components comps;
    for (auto q : sigma.primes())
        comps.emplace(q, q == p ? PadicNumber::from_integer(q, 1, k) : PadicNumber::zero(q, k));
    return make(comps, sigma);
}

PadicNumber FiniteAdele::project(std::int64_t p) const {
    if (sigma_.is_all()) {
        const auto& z = z_.profinite();
        if (!intmath::is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
        if (z.modulus() % p != 0)
            throw Error(ErrorKind::InsufficientPrecision,
                        "prime " + std::to_string(p) + " is beyond the profinite level");
        return divided_by_integer(component_at(z, p, intmath::valuation(z.modulus(), p)), s_);
    }
    if (!sigma_.contains(p))
        throw Error(ErrorKind::PrimeOutsideSigma, std::to_string(p) + " not in " + sigma_.to_string());
    return divided_by_integer(z_.components().at(p), s_);
}

FiniteAdele::Components FiniteAdele::components() const {
    if (sigma_.is_all()) throw Error(ErrorKind::UnsupportedSigma, "all-primes adele has infinitely many coordinates");
    Components out;
    for (auto p : sigma_.primes()) out.emplace(p, project(p));
    return out;
}

FiniteAdele FiniteAdele::scale_by_prime_powers(const std::map<std::int64_t, int>& exponents) const {
    for (const auto& [p, l] : exponents)
        if (!sigma_.contains(p))
            throw Error(ErrorKind::PrimeOutsideSigma, std::to_string(p) + " not in " + sigma_.to_string());
    if (sigma_.is_all()) {
        const auto& z = z_.profinite();
        Components factor;
        for (const auto& [p, l] : exponents)
            factor.emplace(p, PadicNumber::from_integer(p, 1, intmath::valuation(z.modulus(), p) + 1).shifted(l));
        return *this * make_all_primes(factor, ProfiniteInt::from_int(1, z.level()));
    }
    auto comps = components();
    for (const auto& [p, l] : exponents) comps.at(p) = comps.at(p).shifted(l);
    return make(comps, sigma_);
}

FiniteAdele FiniteAdele::operator-() const {
    if (sigma_.is_all()) return FiniteAdele(sigma_, s_, SigmaAdicInt(-z_.profinite()));
    SigmaAdicInt::Components z;
    for (const auto& [p, x] : z_.components()) z.emplace(p, -x);
    return FiniteAdele(sigma_, s_, SigmaAdicInt(std::move(z), sigma_));
}

FiniteAdele operator+(const FiniteAdele& a, const FiniteAdele& b) {
    require_same_sigma(a, b);
    if (a.sigma_.is_all()) {
        const auto& z = a.z_.profinite();
        const auto& w = b.z_.profinite();
        const int level = std::min(z.level(), w.level());
        const auto l = std::lcm(a.s_, b.s_);
        auto num = z * ProfiniteInt::from_int(l / a.s_, level) + w * ProfiniteInt::from_int(l / b.s_, level);
        return FiniteAdele::from_profinite(num, l);
    }
    auto x = a.components();
    for (auto& [p, v] : x) v = v + b.project(p);
    return FiniteAdele::make(x, a.sigma_);
}

FiniteAdele operator-(const FiniteAdele& a, const FiniteAdele& b) { return a + (-b); }

bool operator==(const FiniteAdele& a, const FiniteAdele& b) {
    if (a.sigma_ != b.sigma_ || a.s_ != b.s_) return false;
    if (a.sigma_.is_all()) {
        const auto& z = a.z_.profinite();
        const auto& w = b.z_.profinite();
        const int level = std::min(z.level(), w.level());
        return z.truncated(level) == w.truncated(level);
    }
    for (auto p : a.sigma_.primes())
        if (!agree(a.z_.components().at(p), b.z_.components().at(p))) return false;
    return true;
}

FiniteAdele operator*(const FiniteAdele& a, const FiniteAdele& b) {
    require_same_sigma(a, b);
    if (a.sigma_.is_all())
        return FiniteAdele::from_profinite(a.z_.profinite() * b.z_.profinite(), intmath::checked_mul(a.s_, b.s_));
    auto x = a.components();
    for (auto& [p, v] : x) v = v * b.project(p);
    return FiniteAdele::make(x, a.sigma_);
}

namespace {
std::string digits_only(const PadicNumber& x) {
    if (x.is_zero()) return "0";
    return std::to_string(x.prime()) + "^" + std::to_string(*x.val()) + "*" + std::to_string(x.unit());
}
}  // namespace

std::string FiniteAdele::to_string() const {
    if (sigma_.is_all())
        return "s: " + std::to_string(s_) + ", z: " + z_.profinite().to_string();
    std::string out;
    for (auto p : sigma_.primes()) {
        if (!out.empty()) out += ", ";
        out += std::to_string(p) + ": " + digits_only(project(p));
    }
    return out;
}

// --- real coordinate --------------------------------------------------------

double to_double(const RealPart& r) {
    if (auto q = std::get_if<Rational>(&r)) return q->to_double();
    return std::get<double>(r);
}

RealPart add(const RealPart& a, const RealPart& b) {
    auto qa = std::get_if<Rational>(&a);
    auto qb = std::get_if<Rational>(&b);
    if (qa && qb) return *qa + *qb;
    return to_double(a) + to_double(b);
}

RealPart mul(const RealPart& a, const RealPart& b) {
    auto qa = std::get_if<Rational>(&a);
    auto qb = std::get_if<Rational>(&b);
    if (qa && qb) return *qa * *qb;
    return to_double(a) * to_double(b);
}

std::string to_string(const RealPart& r) {
    if (auto q = std::get_if<Rational>(&r)) return q->to_string();
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(r);
    return os.str();
}

// --- Adele ------------------------------------------------------------------

Adele::Adele(RealPart real, FiniteAdele finite) : real_(std::move(real)), finite_(std::move(finite)) {
    if (auto d = std::get_if<double>(&real_); d && !std::isfinite(*d))
        throw Error(ErrorKind::InvalidArgument, "real coordinate must be finite");
}

Adele Adele::diagonal(const SRational& x, int k, int level) {
    return Adele(x.value(), FiniteAdele::diagonal(x, k, level));
}

Adele Adele::operator-() const { return Adele(mul(real_, Rational(-1)), -finite_); }

Adele operator+(const Adele& a, const Adele& b) {
    return Adele(add(a.real_, b.real_), a.finite_ + b.finite_);
}

Adele operator*(const Adele& a, const Adele& b) {
    return Adele(mul(a.real_, b.real_), a.finite_ * b.finite_);
}

std::string Adele::to_string() const {
    auto fin = finite_.to_string();
    if (fin.empty()) return "(" + adelic::to_string(real_) + ")";
    return "(" + adelic::to_string(real_) + " | " + fin + ")";
}

}  // namespace adelic
