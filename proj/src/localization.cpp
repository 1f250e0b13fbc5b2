#include "adelic/localization.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "adelic/error.hpp"
#include "adelic/intmath.hpp"

namespace adelic {

using intmath::checked_add;
using intmath::checked_mul;

PrimeSet PrimeSet::finite(std::vector<std::int64_t> primes) {
    for (auto p : primes)
        if (!intmath::is_prime(p))
            throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    PrimeSet out;
    out.primes_ = std::move(primes);
    return out;
}

PrimeSet PrimeSet::all() {
    PrimeSet out;
    out.all_ = true;
    return out;
}

namespace {

std::int64_t parse_int(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw Error(ErrorKind::InvalidArgument, "expected an integer, got '" + std::string(text) + "'");
    return v;
}

}  // namespace

PrimeSet PrimeSet::parse(std::string_view text) {
    constexpr std::string_view prefix = "primes:";
    if (text.substr(0, prefix.size()) != prefix)
        throw Error(ErrorKind::InvalidArgument, "prime set must start with 'primes:'");
    text.remove_prefix(prefix.size());
    if (text == "all") return all();
    std::vector<std::int64_t> primes;
    while (!text.empty()) {
        auto comma = text.find(',');
        primes.push_back(parse_int(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (text.empty()) throw Error(ErrorKind::InvalidArgument, "trailing comma in prime set");
    }
    return finite(std::move(primes));
}

bool PrimeSet::contains(std::int64_t p) const {
    if (all_) return intmath::is_prime(p);
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

bool PrimeSet::admits_denominator(std::int64_t n) const {
    if (n == 0) return false;
    if (all_) return true;
    for (auto p : primes_) n = intmath::strip(n, p);
    return n == 1 || n == -1;
}

std::string PrimeSet::to_string() const {
    if (all_) return "primes:all";
    std::string out = "primes:";
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(primes_[i]);
    }
    return out;
}

PrimeSet normalize_primeset(std::span<const std::int64_t> generators) {
    std::vector<std::int64_t> primes;
    for (auto g : generators) {
        if (g == 0) throw Error(ErrorKind::InvalidArgument, "0 cannot belong to a localizing set");
        if (g == 1 || g == -1) continue;
        for (auto [p, e] : intmath::factor(g)) primes.push_back(p);
    }
    return PrimeSet::finite(std::move(primes));
}

// --- Rational ---------------------------------------------------------------

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    if (den < 0) {
        num = checked_mul(num, -1);
        den = checked_mul(den, -1);
    }
    auto g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::operator-() const { return Rational(checked_mul(num_, -1), den_); }

Rational operator+(const Rational& a, const Rational& b) {
    auto g = std::gcd(a.den_, b.den_);
    auto da = a.den_ / g;
    auto db = b.den_ / g;
    return Rational(checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da)),
                    checked_mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    // cross-cancel first so intermediate products stay small
    auto g1 = std::gcd(a.num_, b.den_);
    auto g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero rational");
    return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    auto lhs = static_cast<intmath::i128>(a.num_) * b.den_;
    auto rhs = static_cast<intmath::i128>(b.num_) * a.den_;
    return lhs <=> rhs;
}

Rational Rational::frac() const { return Rational(intmath::mod(num_, den_), den_); }

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

// --- SRational --------------------------------------------------------------

SRational::SRational(Rational value, PrimeSet sigma) : value_(value), sigma_(std::move(sigma)) {
    if (!sigma_.admits_denominator(value_.den()))
        throw Error(ErrorKind::DenominatorNotInS,
                    "denominator of " + value_.to_string() + " has a prime outside " + sigma_.to_string());
}

SRational SRational::make(std::int64_t num, std::int64_t den, const PrimeSet& sigma) {
    return SRational(Rational(num, den), sigma);
}

SRational SRational::operator-() const { return SRational(-value_, sigma_); }

namespace {
void require_same(const SRational& a, const SRational& b) {
    if (a.sigma() != b.sigma())
        throw Error(ErrorKind::MixedPrimeSets, a.sigma().to_string() + " vs " + b.sigma().to_string());
}
}  // namespace

SRational operator+(const SRational& a, const SRational& b) {
    require_same(a, b);
    return SRational(a.value_ + b.value_, a.sigma_);
}

SRational operator*(const SRational& a, const SRational& b) {
    require_same(a, b);
    return SRational(a.value_ * b.value_, a.sigma_);
}

}  // namespace adelic
