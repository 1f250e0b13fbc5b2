#include "adelic/padic.hpp"

#include <algorithm>
#include <charconv>

#include "adelic/error.hpp"
#include "adelic/intmath.hpp"

namespace adelic {

namespace {

using intmath::i64;

constexpr i64 kMaxModulus = i64{1} << 62;

void require_prime(i64 p) {
    if (!intmath::is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
}

void require_same_prime(const PadicNumber& a, const PadicNumber& b) {
    if (a.prime() != b.prime())
        throw Error(ErrorKind::MixedPrimes,
                    "Q_" + std::to_string(a.prime()) + " vs Q_" + std::to_string(b.prime()));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

i64 to_int(std::string_view s) {
    s = trim(s);
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw Error(ErrorKind::InvalidArgument, "expected an integer, got '" + std::string(s) + "'");
    return v;
}

}  // namespace

std::int64_t prime_power(std::int64_t p, int k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "precision must be at least 1");
    i64 m = 1;
    for (int i = 0; i < k; ++i) {
        if (m > kMaxModulus / p)
            throw Error(ErrorKind::Overflow,
                        std::to_string(p) + "^" + std::to_string(k) + " exceeds the supported modulus");
        m *= p;
    }
    return m;
}

// --- PadicNumber ------------------------------------------------------------

PadicNumber PadicNumber::zero(std::int64_t p, int k) {
    require_prime(p);
    prime_power(p, k);
    return PadicNumber(p, std::nullopt, 0, k);
}

PadicNumber PadicNumber::from_integer(std::int64_t p, std::int64_t n, int k) {
    return from_rational(p, Rational(n), k);
}

PadicNumber PadicNumber::from_rational(std::int64_t p, const Rational& r, int k) {
    require_prime(p);
    auto m = prime_power(p, k);
    if (r.is_zero()) return PadicNumber(p, std::nullopt, 0, k);
    int v = intmath::valuation(r.num(), p) - intmath::valuation(r.den(), p);
    auto num = intmath::mod(intmath::strip(r.num(), p), m);
    auto den = intmath::mod(intmath::strip(r.den(), p), m);
    return PadicNumber(p, v, intmath::mulmod(num, intmath::invmod(den, m), m), k);
}

PadicNumber PadicNumber::from_parts(std::int64_t p, int val, std::int64_t unit, int k) {
    require_prime(p);
    auto m = prime_power(p, k);
    auto u = intmath::mod(unit, m);
    if (u % p == 0) throw Error(ErrorKind::InvalidArgument, "unit part must be prime to p");
    return PadicNumber(p, val, u, k);
}

PadicNumber PadicNumber::parse(std::string_view text) {
    auto sep = text.find("::");
    if (sep == std::string_view::npos) throw Error(ErrorKind::InvalidArgument, "missing ':: p-adic(p,k)' suffix");
    auto value = trim(text.substr(0, sep));
    auto tag = trim(text.substr(sep + 2));
    constexpr std::string_view head = "p-adic(";
    if (tag.substr(0, head.size()) != head || tag.empty() || tag.back() != ')')
        throw Error(ErrorKind::InvalidArgument, "expected 'p-adic(p,k)'");
    tag = tag.substr(head.size(), tag.size() - head.size() - 1);
    auto comma = tag.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::InvalidArgument, "expected 'p-adic(p,k)'");
    auto p = to_int(tag.substr(0, comma));
    auto k = static_cast<int>(to_int(tag.substr(comma + 1)));
    if (value == "0") return zero(p, k);
    auto caret = value.find('^');
    auto star = value.find('*');
    if (caret == std::string_view::npos || star == std::string_view::npos || star < caret)
        throw Error(ErrorKind::InvalidArgument, "expected 'p^v*u'");
    if (to_int(value.substr(0, caret)) != p)
        throw Error(ErrorKind::InvalidArgument, "base of p^v does not match p-adic(p,k)");
    auto v = static_cast<int>(to_int(value.substr(caret + 1, star - caret - 1)));
    return from_parts(p, v, to_int(value.substr(star + 1)), k);
}

PadicNumber PadicNumber::operator-() const {
    if (is_zero()) return *this;
    auto m = prime_power(p_, k_);
    return PadicNumber(p_, val_, m - unit_, k_);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const auto p = a.p_;
    const int va = *a.val_, vb = *b.val_;
    const int v = std::min(va, vb);
    // absolute precision of the sum, and the digit window above p^v
    const int absolute = std::min(va + a.k_, vb + b.k_);
    const int width = absolute - v;
    const auto m = prime_power(p, width);
    auto lift = [&](const PadicNumber& x, int vx) -> i64 {
        int shift = vx - v;
        if (shift >= width) return 0;
        i64 scale = shift == 0 ? 1 : prime_power(p, shift);
        return intmath::mulmod(x.unit_ % m, scale, m);
    };
    i64 s = (lift(a, va) + lift(b, vb)) % m;
    if (s == 0) return PadicNumber(p, std::nullopt, 0, std::min(a.k_, b.k_));
    int c = intmath::valuation(s, p);
    const int k = width - c;
    i64 unit = s;
    for (int i = 0; i < c; ++i) unit /= p;
    return PadicNumber(p, v + c, unit % prime_power(p, k), k);
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    const int k = std::min(a.k_, b.k_);
    if (a.is_zero() || b.is_zero()) return PadicNumber(a.p_, std::nullopt, 0, k);
    const auto m = prime_power(a.p_, k);
    return PadicNumber(a.p_, *a.val_ + *b.val_, intmath::mulmod(a.unit_, b.unit_, m), k);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

PadicNumber PadicNumber::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of p-adic zero");
    const auto m = prime_power(p_, k_);
    return PadicNumber(p_, -*val_, intmath::invmod(unit_, m), k_);
}

PadicNumber PadicNumber::shifted(int shift) const {
    if (is_zero()) return *this;
    return PadicNumber(p_, *val_ + shift, unit_, k_);
}

PadicNumber PadicNumber::with_precision(int k) const {
    if (k > k_) throw Error(ErrorKind::InsufficientPrecision, "cannot raise precision of a p-adic number");
    const auto m = prime_power(p_, k);
    if (is_zero()) return PadicNumber(p_, std::nullopt, 0, k);
    return PadicNumber(p_, val_, unit_ % m, k);
}

Rational PadicNumber::fractional_part() const {
    if (is_zero() || *val_ >= 0) return Rational(0);
    const int depth = -*val_;
    if (depth > k_)
        throw Error(ErrorKind::InsufficientPrecision,
                    "fractional part needs " + std::to_string(depth) + " digits, only " + std::to_string(k_) +
                        " known");
    const auto m = prime_power(p_, depth);
    return Rational(unit_ % m, m);
}

std::int64_t PadicNumber::residue(int n) const {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative residue exponent");
    if (n == 0 || is_zero()) return 0;
    if (*val_ < 0) throw Error(ErrorKind::InvalidArgument, "residue of a non-integral p-adic number");
    if (*val_ >= n) return 0;
    if (*val_ + k_ < n)
        throw Error(ErrorKind::InsufficientPrecision, "residue mod p^" + std::to_string(n) + " not determined");
    const auto m = prime_power(p_, n);
    return intmath::mulmod(unit_, *val_ == 0 ? 1 : prime_power(p_, *val_), m);
}

bool agree(const PadicNumber& a, const PadicNumber& b) {
    if (a.p_ != b.p_) return false;
    auto absolute = [](const PadicNumber& x) { return x.is_zero() ? x.k_ : *x.val_ + x.k_; };
    const int n = std::min(absolute(a), absolute(b));
    if (a.is_zero() || b.is_zero()) {
        const auto& other = a.is_zero() ? b : a;
        return other.is_zero() || *other.val_ >= n;
    }
    if (*a.val_ != *b.val_) return std::min(*a.val_, *b.val_) >= n;
    const auto m = prime_power(a.p_, n - *a.val_);
    return a.unit_ % m == b.unit_ % m;
}

std::string PadicNumber::to_string() const {
    std::string tag = " :: p-adic(" + std::to_string(p_) + "," + std::to_string(k_) + ")";
    if (is_zero()) return "0" + tag;
    return std::to_string(p_) + "^" + std::to_string(*val_) + "*" + std::to_string(unit_) + tag;
}

// --- PadicSubgroup ----------------------------------------------------------

PadicSubgroup PadicSubgroup::lattice(std::int64_t p, int n) {
    require_prime(p);
    return PadicSubgroup(p, Kind::Lattice, n);
}

PadicSubgroup PadicSubgroup::zero(std::int64_t p) {
    require_prime(p);
    return PadicSubgroup(p, Kind::Zero, 0);
}

PadicSubgroup PadicSubgroup::full(std::int64_t p) {
    require_prime(p);
    return PadicSubgroup(p, Kind::Full, 0);
}

PadicSubgroup PadicSubgroup::parse(std::string_view text) {
    text = trim(text);
    if (text.size() > 2 && text.substr(0, 2) == "0_") return zero(to_int(text.substr(2)));
    if (text.size() > 2 && text.substr(0, 2) == "Q_") return full(to_int(text.substr(2)));
    auto z = text.find("Z_");
    if (z == std::string_view::npos)
        throw Error(ErrorKind::UnsupportedAtom, "'" + std::string(text) + "' is not a closed subgroup of Q_p");
    const auto p = to_int(text.substr(z + 2));
    require_prime(p);
    auto scale = text.substr(0, z);
    if (scale.empty()) return lattice(p, 0);
    auto caret = scale.find('^');
    if (caret != std::string_view::npos) {
        if (to_int(scale.substr(0, caret)) != p)
            throw Error(ErrorKind::InvalidArgument, "scale base must equal p in '" + std::string(text) + "'");
        return lattice(p, static_cast<int>(to_int(scale.substr(caret + 1))));
    }
    auto m = to_int(scale);
    if (m <= 0 || intmath::strip(m, p) != 1)
        throw Error(ErrorKind::InvalidArgument, "scale must be a power of p in '" + std::string(text) + "'");
    return lattice(p, intmath::valuation(m, p));
}

bool PadicSubgroup::contains(const PadicNumber& x) const {
    if (x.prime() != p_) throw Error(ErrorKind::MixedPrimes, "element and subgroup over different primes");
    switch (kind_) {
    case Kind::Zero: return x.is_zero();
    case Kind::Full: return true;
    case Kind::Lattice: return x.is_zero() || *x.val() >= n_;
    }
    return false;
}

bool PadicSubgroup::contains(const PadicSubgroup& other) const { return meet(*this, other) == other; }

namespace {
void require_same_prime(const PadicSubgroup& a, const PadicSubgroup& b) {
    if (a.prime() != b.prime())
        throw Error(ErrorKind::MixedPrimes, "subgroups of Q_" + std::to_string(a.prime()) + " and Q_" +
                                                std::to_string(b.prime()));
}
}  // namespace

PadicSubgroup meet(const PadicSubgroup& a, const PadicSubgroup& b) {
    require_same_prime(a, b);
    using K = PadicSubgroup::Kind;
    if (a.kind_ == K::Zero || b.kind_ == K::Full) return a;
    if (b.kind_ == K::Zero || a.kind_ == K::Full) return b;
    return PadicSubgroup(a.p_, K::Lattice, std::max(a.n_, b.n_));
}

PadicSubgroup join(const PadicSubgroup& a, const PadicSubgroup& b) {
    require_same_prime(a, b);
    using K = PadicSubgroup::Kind;
    if (a.kind_ == K::Full || b.kind_ == K::Zero) return a;
    if (b.kind_ == K::Full || a.kind_ == K::Zero) return b;
    return PadicSubgroup(a.p_, K::Lattice, std::min(a.n_, b.n_));
}

std::string PadicSubgroup::to_string() const {
    const auto ps = std::to_string(p_);
    switch (kind_) {
    case Kind::Zero: return "0_" + ps;
    case Kind::Full: return "Q_" + ps;
    case Kind::Lattice:
        if (n_ == 0) return "Z_" + ps;
        if (n_ == 1) return ps + "Z_" + ps;
        return ps + "^" + std::to_string(n_) + "Z_" + ps;
    }
    return {};
}

SubgroupDescriptor SubgroupDescriptor::parse(std::string_view text) {
    SubgroupDescriptor out;
    while (true) {
        auto sep = text.find(" x ");
        out.factors.push_back(PadicSubgroup::parse(text.substr(0, sep)));
        if (sep == std::string_view::npos) break;
        text.remove_prefix(sep + 3);
    }
    return out;
}

bool SubgroupDescriptor::is_compact() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.is_compact(); });
}

bool SubgroupDescriptor::is_open() const {
    return std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.is_open(); });
}

std::string SubgroupDescriptor::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += " x ";
        out += factors[i].to_string();
    }
    return out;
}

SubgroupDescriptor compact_open_of_power_space(const std::vector<int>& exponents, std::int64_t p) {
    if (exponents.empty())
        throw Error(ErrorKind::InvalidArgument, "compact open subgroup of Q_p^0 is not a product descriptor");
    SubgroupDescriptor out;
    for (int n : exponents) out.factors.push_back(PadicSubgroup::lattice(p, n));
    return out;
}

}  // namespace adelic
