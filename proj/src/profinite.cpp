#include "adelic/profinite.hpp"

#include <algorithm>
#include <numeric>

#include "adelic/error.hpp"
#include "adelic/intmath.hpp"

namespace adelic {

using intmath::i64;

std::int64_t factorial(int n) {
    if (n < 0 || n > ProfiniteInt::kMaxLevel + 1)
        throw Error(ErrorKind::Overflow, std::to_string(n) + "! is outside the supported range");
    i64 f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int level_dividing(std::int64_t n) {
    int m = 0;
    while (m + 1 <= ProfiniteInt::kMaxLevel && n % factorial(m + 2) == 0) ++m;
    return m;
}

namespace {
void check_level(int level) {
    if (level < 1 || level > ProfiniteInt::kMaxLevel)
        throw Error(ErrorKind::InvalidArgument,
                    "level must lie in [1, " + std::to_string(ProfiniteInt::kMaxLevel) + "]");
}
}  // namespace

std::int64_t ProfiniteInt::modulus() const noexcept { return factorial(level_ + 1); }

ProfiniteInt ProfiniteInt::from_int(std::int64_t n, int level) {
    check_level(level);
    return ProfiniteInt(intmath::mod(n, factorial(level + 1)), level);
}

ProfiniteInt ProfiniteInt::from_digits(const std::vector<std::int64_t>& digits) {
    const int level = static_cast<int>(digits.size());
    check_level(level);
    i64 value = 0;
    for (int i = 1; i <= level; ++i) {
        auto c = digits[static_cast<std::size_t>(i - 1)];
        if (c < 0 || c > i)
            throw Error(ErrorKind::InvalidArgument,
                        "digit c_" + std::to_string(i) + " = " + std::to_string(c) + " violates 0 <= c_i <= i");
        value += c * factorial(i);
    }
    return ProfiniteInt(value, level);
}

ProfiniteInt ProfiniteInt::parse(std::string_view text) {
    constexpr std::string_view head = "fact[";
    if (text.substr(0, head.size()) != head || text.empty() || text.back() != ']')
        throw Error(ErrorKind::InvalidArgument, "expected 'fact[c1,...,cm]'");
    text = text.substr(head.size(), text.size() - head.size() - 1);
    std::vector<i64> digits;
    while (!text.empty()) {
        auto comma = text.find(',');
        digits.push_back(Rational::parse(text.substr(0, comma)).num());
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return from_digits(digits);
}

std::vector<std::int64_t> ProfiniteInt::digits() const {
    std::vector<i64> out(static_cast<std::size_t>(level_));
    i64 r = residue_;
    for (int i = level_; i >= 1; --i) {
        auto f = factorial(i);
        out[static_cast<std::size_t>(i - 1)] = r / f;
        r %= f;
    }
    return out;
}

std::int64_t ProfiniteInt::to_residue(std::int64_t n) const {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
    if (modulus() % n != 0)
        throw Error(ErrorKind::InsufficientPrecision,
                    std::to_string(n) + " does not divide " + std::to_string(level_ + 1) + "!");
    return residue_ % n;
}

ProfiniteInt ProfiniteInt::truncated(int level) const {
    check_level(level);
    if (level > level_) throw Error(ErrorKind::InsufficientPrecision, "cannot raise the level of a profinite integer");
    return ProfiniteInt(residue_ % factorial(level + 1), level);
}

ProfiniteInt ProfiniteInt::operator-() const {
    auto m = modulus();
    return ProfiniteInt((m - residue_) % m, level_);
}

ProfiniteInt operator+(const ProfiniteInt& a, const ProfiniteInt& b) {
    const int level = std::min(a.level_, b.level_);
    const auto m = factorial(level + 1);
    return ProfiniteInt((a.residue_ % m + b.residue_ % m) % m, level);
}

ProfiniteInt operator-(const ProfiniteInt& a, const ProfiniteInt& b) { return a + (-b); }

ProfiniteInt operator*(const ProfiniteInt& a, const ProfiniteInt& b) {
    const int level = std::min(a.level_, b.level_);
    const auto m = factorial(level + 1);
    return ProfiniteInt(intmath::mulmod(a.residue_, b.residue_, m), level);
}

std::string ProfiniteInt::to_string() const {
    std::string out = "fact[";
    auto ds = digits();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ds[i]);
    }
    return out + "]";
}

ProfiniteInt from_residues(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs, int level) {
    check_level(level);
    const auto full = factorial(level + 1);
    i64 x = 0, n = 1;
    for (auto [r, m] : pairs) {
        if (m < 1) throw Error(ErrorKind::InvalidArgument, "moduli must be positive");
        if (std::gcd(n, m) != 1)
            throw Error(ErrorKind::IncompatibleResidues, "modulus " + std::to_string(m) + " is not coprime to the others");
        const auto nm = intmath::checked_mul(n, m);
        if (full % nm != 0)
            throw Error(ErrorKind::InsufficientPrecision,
                        "product of moduli does not divide " + std::to_string(level + 1) + "!");
        // x' = x + n * ((r - x) * n^{-1} mod m)
        const auto t = intmath::mulmod(intmath::mod(r - x, m), intmath::invmod(n % m, m), m);
        x = intmath::mod(x + static_cast<intmath::i128>(n) * t, nm);
        n = nm;
    }
    return ProfiniteInt::from_int(x, level);
}

PadicNumber component_at(const ProfiniteInt& x, std::int64_t q, int k) {
    const auto qk = prime_power(q, k);
    const auto r = x.to_residue(qk);
    if (r == 0) return PadicNumber::zero(q, k);
    const int v = intmath::valuation(r, q);
    return PadicNumber::from_parts(q, v, intmath::strip(r, q), k - v);
}

// --- SigmaAdicInt -----------------------------------------------------------

SigmaAdicInt::SigmaAdicInt(Components components, PrimeSet sigma) : sigma_(std::move(sigma)) {
    if (sigma_.is_all())
        throw Error(ErrorKind::UnsupportedSigma, "componentwise Z_Sigma needs a finite prime set");
    for (const auto& [p, x] : components) {
        if (!sigma_.contains(p) || x.prime() != p)
            throw Error(ErrorKind::ComponentPrimeOutsideSigma, "component at " + std::to_string(p));
        if (!x.is_integral())
            throw Error(ErrorKind::InvalidArgument, "Sigma-adic component at " + std::to_string(p) + " is not integral");
    }
    for (auto p : sigma_.primes())
        if (!components.count(p))
            throw Error(ErrorKind::InvalidArgument, "missing Sigma-adic component at " + std::to_string(p));
    data_ = std::move(components);
}

SigmaAdicInt::SigmaAdicInt(ProfiniteInt whole) : sigma_(PrimeSet::all()), data_(whole) {}

const SigmaAdicInt::Components& SigmaAdicInt::components() const {
    if (is_profinite()) throw Error(ErrorKind::UnsupportedSigma, "all-primes element has no component map");
    return std::get<Components>(data_);
}

const ProfiniteInt& SigmaAdicInt::profinite() const {
    if (!is_profinite()) throw Error(ErrorKind::UnsupportedSigma, "finite-Sigma element is not profinite");
    return std::get<ProfiniteInt>(data_);
}

SigmaAdicInt project_to_sigma(const ProfiniteInt& x, const PrimeSet& sigma, int k) {
    if (sigma.is_all()) return SigmaAdicInt(x);
    SigmaAdicInt::Components out;
    for (auto p : sigma.primes()) out.emplace(p, component_at(x, p, k));
    return SigmaAdicInt(std::move(out), sigma);
}

}  // namespace adelic
