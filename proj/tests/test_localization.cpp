#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "adelic/error.hpp"
#include "adelic/localization.hpp"
#include "oracle.hpp"

using namespace adelic;

namespace {

PrimeSet ps(std::vector<std::int64_t> p) { return PrimeSet::finite(std::move(p)); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

/// Trial division over every candidate divisor, kept separate from intmath.
std::vector<std::int64_t> prime_factors_slow(std::int64_t n) {
    std::vector<std::int64_t> out;
    n = n < 0 ? -n : n;
    for (std::int64_t d = 2; d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    return out;
}

}  // namespace

TEST_CASE("normalize_primeset collects prime factors") {
    const std::vector<std::int64_t> a{10, 35}, b{}, c{6, 4};
    CHECK(normalize_primeset(a) == ps({2, 5, 7}));
    CHECK(normalize_primeset(b) == PrimeSet());
    CHECK(normalize_primeset(b).empty());
    CHECK(normalize_primeset(c) == ps({2, 3}));
}

TEST_CASE("normalize_primeset drops units and rejects zero") {
    const std::vector<std::int64_t> units{1, -1, 15};
    CHECK(normalize_primeset(units) == ps({3, 5}));
    const std::vector<std::int64_t> zero{6, 0};
    CHECK(kind_of([&] { normalize_primeset(zero); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("normalize_primeset agrees with slow trial division, is idempotent and order-insensitive") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::int64_t> gens;
        const int count = static_cast<int>(oracle::uniform(rng, 0, 5));
        for (int i = 0; i < count; ++i) {
            auto g = oracle::uniform(rng, 2, 5000);
            gens.push_back(oracle::uniform(rng, 0, 1) ? g : -g);
        }
        std::vector<std::int64_t> expected;
        for (auto g : gens)
            for (auto p : prime_factors_slow(g)) expected.push_back(p);
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());

        const auto sigma = normalize_primeset(gens);
        CHECK(sigma.primes() == expected);
        CHECK(normalize_primeset(sigma.primes()) == sigma);
        std::shuffle(gens.begin(), gens.end(), rng);
        CHECK(normalize_primeset(gens) == sigma);
    }
}

TEST_CASE("PrimeSet text form") {
    CHECK(PrimeSet::parse("primes:2,3,7") == ps({2, 3, 7}));
    CHECK(PrimeSet::parse("primes:7,2") == ps({2, 7}));
    CHECK(PrimeSet::parse("primes:") == PrimeSet());
    CHECK(PrimeSet::parse("primes:all").is_all());
    CHECK(ps({2, 3, 7}).to_string() == "primes:2,3,7");
    CHECK(PrimeSet::all().to_string() == "primes:all");
    CHECK(PrimeSet().to_string() == "primes:");
    CHECK_THROWS_AS(PrimeSet::parse("primes:4"), Error);
    CHECK_THROWS_AS(PrimeSet::parse("2,3"), Error);
    CHECK_THROWS_AS(ps({1}), Error);
}

TEST_CASE("PrimeSet membership") {
    const auto s = ps({2, 3});
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(5));
    CHECK(s.admits_denominator(12));
    CHECK(s.admits_denominator(1));
    CHECK_FALSE(s.admits_denominator(10));
    CHECK(PrimeSet::all().admits_denominator(1001));
    CHECK(PrimeSet::all().contains(101));
    CHECK_FALSE(PrimeSet::all().contains(100));
}

TEST_CASE("srational_make") {
    const auto s23 = ps({2, 3});
    const auto a = SRational::make(3, 12, s23);
    CHECK(a.num() == 1);
    CHECK(a.den() == 4);
    CHECK(kind_of([&] { SRational::make(1, 5, s23); }) == ErrorKind::DenominatorNotInS);
    const auto b = SRational::make(7, -2, ps({2}));
    CHECK(b.num() == -7);
    CHECK(b.den() == 2);
    CHECK(kind_of([&] { SRational::make(1, 0, s23); }) == ErrorKind::DivisionByZero);
    // a denominator cancelled away is fine even outside Sigma
    CHECK(SRational::make(10, 5, PrimeSet()).value() == Rational(2));
}

TEST_CASE("srational ring operations") {
    const auto s2 = ps({2});
    const auto s23 = ps({2, 3});
    CHECK(SRational::make(1, 2, s2) + SRational::make(1, 2, s2) == SRational::make(1, 1, s2));
    CHECK(SRational::make(1, 4, s23) * SRational::make(2, 3, s23) == SRational::make(1, 6, s23));
    CHECK(kind_of([&] { SRational::make(1, 2, s2) + SRational::make(1, 2, s23); }) == ErrorKind::MixedPrimeSets);
    CHECK(kind_of([&] { SRational::make(1, 2, s2) * SRational::make(1, 2, s23); }) == ErrorKind::MixedPrimeSets);
}

TEST_CASE("srational arithmetic agrees with GMP rationals") {
    const auto sigma = ps({2, 3, 5});
    std::mt19937_64 rng(2024);
    auto random_element = [&] {
        std::int64_t den = 1;
        for (auto p : {2, 3, 5})
            for (auto e = oracle::uniform(rng, 0, 6); e > 0; --e) den *= p;
        return SRational::make(oracle::uniform(rng, -1'000'000, 1'000'000), den, sigma);
    };
    for (int i = 0; i < 10'000; ++i) {
        const auto a = random_element();
        const auto b = random_element();
        const mpq_class qa = oracle::Q(a.value()), qb = oracle::Q(b.value());

        const auto sum = a + b;
        const auto prod = a * b;
        CHECK(oracle::Q(sum.value()) == qa + qb);
        CHECK(oracle::Q(prod.value()) == qa * qb);
        CHECK(oracle::Q((-a).value()) == -qa);
        CHECK((a + -a).value().is_zero());
        // closure: reduced denominators stay inside Sigma
        CHECK(sigma.admits_denominator(sum.den()));
        CHECK(sigma.admits_denominator(prod.den()));
    }
}

TEST_CASE("Rational basics") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational::parse("-3/12") == Rational(-1, 4));
    CHECK(Rational::parse("17") == Rational(17));
    CHECK(Rational(-1, 4).frac() == Rational(3, 4));
    CHECK(Rational(7, 2).frac() == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-5, 3).to_string() == "-5/3");
    CHECK_THROWS_AS(Rational::parse("1/"), Error);
    CHECK(kind_of([] { Rational(1) / Rational(0); }) == ErrorKind::DivisionByZero);
    CHECK(kind_of([] { Rational(INT64_MAX) + Rational(1); }) == ErrorKind::Overflow);
}
