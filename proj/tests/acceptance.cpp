// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "adelic/adele.hpp"
#include "adelic/duality.hpp"
#include "adelic/error.hpp"
#include "adelic/profinite.hpp"
#include "adelic/structure.hpp"
#include "characters.hpp"
#include "corpus.hpp"
#include "oracle.hpp"

using namespace adelic;

namespace {

struct Outcome {
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string note;

    void expect(bool ok) {
        ++checks;
        failures += !ok;
    }
};

// --- 1 ----------------------------------------------------------------------

Outcome padic_oracle() {
    Outcome o;
    std::mt19937_64 rng(101);
    constexpr int k = 8;
    for (std::int64_t p : {2, 3, 5, 7}) {
        const auto pk = oracle::pow(p, k);
        for (int i = 0; i < 10000; ++i) {
            const auto a = oracle::uniform(rng, -1'000'000'000, 1'000'000'000);
            const auto b = oracle::uniform(rng, -1'000'000'000, 1'000'000'000);
            const auto x = PadicNumber::from_integer(p, a, k), y = PadicNumber::from_integer(p, b, k);
            const auto A = oracle::Z(a), B = oracle::Z(b);
            o.expect(oracle::Z((x + y).residue(k)) == oracle::mod(A + B, pk));
            o.expect(oracle::Z((x * y).residue(k)) == oracle::mod(A * B, pk));
            // inverse of the unit part
            const auto u = a % p == 0 ? a + 1 : a;
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), oracle::Z(u).get_mpz_t(), pk.get_mpz_t());
            o.expect(oracle::Z(PadicNumber::from_integer(p, u, k).inverse().residue(k)) == inv);
        }
    }
    return o;
}

// --- 2 ----------------------------------------------------------------------

Outcome factorial_round_trip() {
    Outcome o;
    constexpr int level = 10;
    const auto full = factorial(level + 1);
    std::vector<std::int64_t> divisors;
    for (std::int64_t d = 1; d <= full; ++d)
        if (full % d == 0) divisors.push_back(d);
    for (std::int64_t n = -100000; n <= 100000; ++n) {
        const auto x = ProfiniteInt::from_int(n, level);
        std::size_t bad = 0;
        for (auto d : divisors) bad += x.to_residue(d) != ((n % d) + d) % d;
        o.checks += divisors.size();
        o.failures += bad;
    }
    std::mt19937_64 rng(102);
    auto x = ProfiniteInt::from_int(oracle::uniform(rng, 0, full - 1), level);
    for (int i = 0; i < 10000; ++i) {
        const auto y = ProfiniteInt::from_int(oracle::uniform(rng, -full, full), level);
        switch (i % 4) {
        case 0: x = x + y; break;
        case 1: x = x - y; break;
        case 2: x = x * y; break;
        default: x = -x; break;
        }
        const auto ds = x.digits();
        bool ok = ds.size() == static_cast<std::size_t>(level);
        for (std::size_t j = 0; j < ds.size(); ++j) ok = ok && ds[j] >= 0 && ds[j] <= static_cast<std::int64_t>(j + 1);
        o.expect(ok);
    }
    o.note = std::to_string(divisors.size()) + " divisors of 11!";
    return o;
}

// --- 3 ----------------------------------------------------------------------

Outcome crt_isomorphism() {
    Outcome o;
    std::mt19937_64 rng(103);
    const std::map<std::int64_t, int> max_exp{{2, 8}, {3, 4}, {5, 2}, {7, 1}};
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::pair<std::int64_t, std::int64_t>> tuple;
        std::map<std::int64_t, int> exps;
        for (auto [p, emax] : max_exp) {
            const int e = static_cast<int>(oracle::uniform(rng, 1, emax));
            const auto m = prime_power(p, e);
            tuple.emplace_back(oracle::uniform(rng, 0, m - 1), m);
            exps[p] = e;
        }
        const auto x = from_residues(tuple, 10);
        for (auto [r, m] : tuple) {
            const auto p = *std::find_if(max_exp.begin(), max_exp.end(), [m = m](auto& kv) { return m % kv.first == 0; });
            const auto c = component_at(x, p.first, exps[p.first]);
            o.expect(c.residue(exps[p.first]) == r);
        }
        // and back: the extracted components lift to the same class
        std::vector<std::pair<std::int64_t, std::int64_t>> again;
        for (auto [p, e] : exps) {
            const auto m = prime_power(p, e);
            again.emplace_back(component_at(x, p, e).residue(e), m);
        }
        o.expect(from_residues(again, 10).residue() == x.residue());
    }
    return o;
}

// --- 4 and 5 ----------------------------------------------------------------

const PrimeSet kS235 = PrimeSet::finite({2, 3, 5});

std::pair<FiniteAdele, std::map<std::int64_t, mpq_class>> random_adele(std::mt19937_64& rng) {
    static const std::int64_t dens[] = {1, 2, 3, 4, 5, 7, 8, 9, 12, 25, 27, 49, 50, 60, 121};
    FiniteAdele::Components comps;
    std::map<std::int64_t, mpq_class> truth;
    for (auto p : kS235.primes()) {
        const Rational r(oracle::uniform(rng, -2000, 2000), dens[oracle::uniform(rng, 0, 14)]);
        comps.emplace(p, PadicNumber::from_rational(p, r, 10));
        truth[p] = oracle::Q(r);
    }
    return {FiniteAdele::make(comps, kS235), truth};
}

Outcome localization_normal_form() {
    Outcome o;
    std::mt19937_64 rng(104);
    for (int i = 0; i < 1000; ++i) {
        auto [a, truth] = random_adele(rng);
        std::int64_t s = 1;
        for (auto p : kS235.primes())
            if (truth[p] != 0)
                for (int v = oracle::val(truth[p], p); v < 0; ++v) s *= p;
        o.expect(a.denominator() == s);
        for (auto p : kS235.primes()) {
            o.expect(oracle::matches(a.project(p), truth[p]));
            o.expect(a.integral_part().components().at(p).is_integral());
        }
        const auto again = FiniteAdele::make(a.components(), kS235);
        o.expect(again == a);
        o.expect(again.components() == a.components());
    }
    return o;
}

Outcome idempotent_laws() {
    Outcome o;
    FiniteAdele total = FiniteAdele::make(
        {{2, PadicNumber::zero(2)}, {3, PadicNumber::zero(3)}, {5, PadicNumber::zero(5)}}, kS235);
    for (auto p : kS235.primes()) {
        const auto e = FiniteAdele::idempotent(p, kS235);
        o.expect(e * e == e);
        for (auto q : kS235.primes())
            if (q != p) o.expect((e * FiniteAdele::idempotent(q, kS235)).project(p).is_zero());
        total = total + e;
    }
    o.expect(total == FiniteAdele::one(kS235));
    std::mt19937_64 rng(105);
    for (int i = 0; i < 1000; ++i) {
        auto [a, ta] = random_adele(rng);
        auto [b, tb] = random_adele(rng);
        const auto prod = a * b;
        for (auto p : kS235.primes()) {
            o.expect(agree(prod.project(p), a.project(p) * b.project(p)));
            o.expect(agree((a + b).project(p), a.project(p) + b.project(p)));
            o.expect(oracle::matches(prod.project(p), ta[p] * tb[p]));
        }
    }
    return o;
}

// --- 6 and 7 ----------------------------------------------------------------

Outcome character_laws() {
    Outcome o;
    std::mt19937_64 rng(106);
    const int atoms = static_cast<int>(characters::atom_cases(rng).size());
    o.checks = static_cast<std::size_t>(atoms) * 100 * 5;
    o.failures = static_cast<std::size_t>(characters::scalar_action_failures(rng, 100));
    o.note = std::to_string(atoms) + " atom samples";
    return o;
}

Outcome annihilator_lattice() {
    Outcome o;
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (int n = -10; n <= 10; ++n) {
            const SubgroupDescriptor h{{PadicSubgroup::lattice(p, n)}};
            const auto a = annihilator(h);
            o.expect(orthogonal(a) == h);
            o.expect(a == SubgroupDescriptor{{PadicSubgroup::lattice(p, -n)}});
            const auto& hf = h.factors.front();
            const auto& af = a.factors.front();
            o.expect(hf.is_compact() == af.is_open());
            o.expect(hf.is_open() == af.is_compact());
        }
        for (const auto& h : {PadicSubgroup::zero(p), PadicSubgroup::full(p)}) {
            const SubgroupDescriptor d{{h}};
            const auto a = annihilator(d);
            o.expect(orthogonal(a) == d);
            o.expect(h.is_compact() == a.factors.front().is_open());
            o.expect(h.is_open() == a.factors.front().is_compact());
        }
    }
    return o;
}

// --- 8 ----------------------------------------------------------------------

Outcome antidiagonal_discreteness() {
    Outcome o;
    o.expect(antidiagonal_discreteness_check(1000, PrimeSet::finite({2})));
    o.expect(antidiagonal_discreteness_check(1000, PrimeSet::finite({2, 3})));
    return o;
}

// --- 9 and 10 ---------------------------------------------------------------

bool compactly_generated_by_table(const ModuleExpr& e) {
    for (const auto& f : e.factors())
        if (!atom_compactly_generated(f.atom, e.sigma())) return false;
    return true;
}

Outcome duality_swap(const std::vector<ModuleExpr>& corpus) {
    Outcome o;
    for (const auto& e : corpus) {
        const auto d = dual(e);
        o.expect(dual(d) == e);
        o.expect(compactly_generated_by_table(e) == nss_direct(d));
        o.expect(classify(e).compactly_generated == classify(d).nss);
        o.expect(nss_direct(e) == nss_via_dual(e));
        const auto second = decompose_second(e);
        const auto third = decompose_third(d);
        o.expect(second.index() == third.index());
        if (second.index() == 0 && third.index() == 0)
            o.expect(dual(std::get<SecondDecomposition>(second)) == std::get<ThirdDecomposition>(third));
    }
    o.note = std::to_string(corpus.size()) + " expressions";
    return o;
}

Outcome decomposition_soundness(const std::vector<ModuleExpr>& corpus) {
    Outcome o;
    for (const auto& e : corpus) {
        const auto d = decompose_first(e);
        bool sigma_only = true;
        for (const auto& [p, n] : d.adelic.padic_ranks) sigma_only = sigma_only && e.sigma().contains(p);
        o.expect(sigma_only);
        o.expect(classify(d.witness).compact);
        o.expect(is_compact_open_in(d.witness, d.residue));
        o.expect(quotient_prime_to_sigma(d, e.sigma()));
        o.expect(recompose(d, e.sigma()) == e);
        o.expect(decompose_first(recompose(d, e.sigma())) == d);
        const auto again = decompose_first(d.residue);
        o.expect(again.residue == d.residue && again.witness == d.witness && again.adelic.real_rank == 0);
    }
    o.note = std::to_string(corpus.size()) + " expressions";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no time bound
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    std::vector<ModuleExpr> corpus_exprs;
    const std::vector<Criterion> criteria{
        {1, "p-adic oracle equivalence", 1.0, padic_oracle},
        {2, "factorial-base round trip", 5.0, factorial_round_trip},
        {3, "CRT isomorphism", 0.0, crt_isomorphism},
        {4, "localization normal form", 0.0, localization_normal_form},
        {5, "idempotents and projection homomorphism", 0.0, idempotent_laws},
        {6, "character laws", 0.0, character_laws},
        {7, "annihilator lattice", 0.0, annihilator_lattice},
        {8, "anti-diagonal discreteness", 10.0, antidiagonal_discreteness},
        // corpus generation counts against the time budget of 9
        {9, "duality involution and swap", 30.0,
         [&] {
             corpus_exprs = corpus::all();
             return duality_swap(corpus_exprs);
         }},
        {10, "decomposition soundness", 0.0, [&] { return decomposition_soundness(corpus_exprs); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        std::string error;
        const auto start = clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(clock::now() - start).count();
        const bool in_time = c.limit_s == 0.0 || secs < c.limit_s;
        const bool pass = error.empty() && o.failures == 0 && o.checks > 0 && in_time;
        failed += !pass;

        std::string detail = std::to_string(o.checks - o.failures) + "/" + std::to_string(o.checks) + " checks";
        if (!o.note.empty()) detail += ", " + o.note;
        char timing[64];
        if (c.limit_s > 0.0)
            std::snprintf(timing, sizeof timing, "%.3f s (limit %.0f s)", secs, c.limit_s);
        else
            std::snprintf(timing, sizeof timing, "%.3f s", secs);
        std::printf("criterion %2d %-42s %s  %s, %s%s%s\n", c.id, c.name, pass ? "PASS" : "FAIL", detail.c_str(), timing,
                    error.empty() ? "" : ", exception: ", error.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
