#include "adelic/structure.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "adelic/error.hpp"
#include "adelic/intmath.hpp"

namespace adelic {

using intmath::i64;

// --- atoms ------------------------------------------------------------------

namespace {
void require_prime(i64 p) {
    if (!intmath::is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
}
}  // namespace

ModuleAtom ModuleAtom::padic_field(std::int64_t p) {
    require_prime(p);
    return ModuleAtom(AtomKind::PadicField, p);
}

ModuleAtom ModuleAtom::padic_integers(std::int64_t q) {
    require_prime(q);
    return ModuleAtom(AtomKind::PadicIntegers, q);
}

ModuleAtom ModuleAtom::cyclic(std::int64_t prime_power) {
    if (prime_power < 2) throw Error(ErrorKind::InvalidArgument, "cyclic order must be at least 2");
    if (intmath::factor(prime_power).size() != 1)
        throw Error(ErrorKind::InvalidArgument, std::to_string(prime_power) + " is not a prime power");
    return ModuleAtom(AtomKind::FiniteCyclic, prime_power);
}

ModuleAtom ModuleAtom::prufer(std::int64_t q) {
    require_prime(q);
    return ModuleAtom(AtomKind::Prufer, q);
}

std::int64_t ModuleAtom::prime() const {
    switch (kind_) {
    case AtomKind::PadicField:
    case AtomKind::PadicIntegers:
    case AtomKind::Prufer: return param_;
    case AtomKind::FiniteCyclic: return intmath::factor(param_).front().first;
    default: return 0;
    }
}

std::string ModuleAtom::to_string() const {
    const auto p = std::to_string(param_);
    switch (kind_) {
    case AtomKind::Real: return "R";
    case AtomKind::PadicField: return "Qp(" + p + ")";
    case AtomKind::PadicIntegers: return "Zp(" + p + ")";
    case AtomKind::FiniteCyclic: return "Z/" + p;
    case AtomKind::FreeRankOne: return "ZS";
    case AtomKind::Solenoid: return "Sol";
    case AtomKind::Prufer: return "Pruf(" + p + ")";
    case AtomKind::RationalDiscrete: return "Qd";
    case AtomKind::RationalSolenoid: return "QSol";
    }
    return "?";
}

std::vector<ModuleAtom> split_cyclic(std::int64_t m) {
    if (m < 2) throw Error(ErrorKind::InvalidArgument, "cyclic order must be at least 2");
    std::vector<ModuleAtom> out;
    for (auto [p, e] : intmath::factor(m)) out.push_back(ModuleAtom::cyclic(intmath::checked_pow(p, e)));
    return out;
}

// --- expressions ------------------------------------------------------------

ModuleExpr::ModuleExpr(PrimeSet sigma, const std::vector<Factor>& factors)
    : sigma_(std::move(sigma)), factors_(factors) {
    normalize();
}

void ModuleExpr::normalize() {
    for (const auto& f : factors_)
        if (f.exponent < 1) throw Error(ErrorKind::InvalidArgument, "exponents must be positive");
    std::sort(factors_.begin(), factors_.end(), [](const Factor& a, const Factor& b) { return a.atom < b.atom; });
    std::vector<Factor> merged;
    for (const auto& f : factors_) {
        if (!merged.empty() && merged.back().atom == f.atom)
            merged.back().exponent += f.exponent;
        else
            merged.push_back(f);
    }
    factors_ = std::move(merged);
}

int ModuleExpr::exponent_of(const ModuleAtom& atom) const {
    for (const auto& f : factors_)
        if (f.atom == atom) return f.exponent;
    return 0;
}

ModuleExpr ModuleExpr::times(const ModuleExpr& other) const {
    if (other.sigma_ != sigma_)
        throw Error(ErrorKind::MixedPrimeSets, sigma_.to_string() + " vs " + other.sigma_.to_string());
    auto all = factors_;
    all.insert(all.end(), other.factors_.begin(), other.factors_.end());
    return ModuleExpr(sigma_, all);
}

ModuleExpr ModuleExpr::times(const ModuleAtom& atom, int exponent) const {
    auto all = factors_;
    all.push_back({atom, exponent});
    return ModuleExpr(sigma_, all);
}

std::string ModuleExpr::to_string() const {
    if (factors_.empty()) return "0";
    std::string out;
    for (const auto& f : factors_) {
        if (!out.empty()) out += " x ";
        out += f.atom.to_string();
        if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
    }
    return out;
}

// --- validation -------------------------------------------------------------

ValidationReport validate(const ModuleExpr& e) {
    ValidationReport report;
    const auto& sigma = e.sigma();
    for (const auto& [atom, exponent] : e.factors()) {
        const auto q = atom.prime();
        const auto qs = std::to_string(q);
        switch (atom.kind()) {
        case AtomKind::PadicIntegers:
            if (sigma.contains(q))
                report.violations.push_back({atom, q, ViolatedProperty::SDivisible,
                                             "1 = " + qs + "*x has no solution in Z_" + qs});
            break;
        case AtomKind::Prufer:
            if (sigma.contains(q))
                report.violations.push_back({atom, q, ViolatedProperty::STorsionFree,
                                             qs + "*(1/" + qs + ") = 0 in Z(" + qs + "^inf)"});
            break;
        case AtomKind::FiniteCyclic:
            if (sigma.contains(q)) {
                const auto m = atom.parameter();
                report.violations.push_back({atom, q, ViolatedProperty::STorsionFree,
                                             qs + "*" + std::to_string(m / q) + " = 0 in Z/" + std::to_string(m)});
                report.violations.push_back({atom, q, ViolatedProperty::SDivisible,
                                             "1 = " + qs + "*x has no solution in Z/" + std::to_string(m)});
            }
            break;
        default: break;
        }
    }
    report.valid = report.violations.empty();
    return report;
}

namespace {
void require_valid(const ModuleExpr& e) {
    auto report = validate(e);
    if (!report.valid)
        throw Error(ErrorKind::InvalidExpression,
                    report.violations.front().atom.to_string() + " is not a Z[1/S]-module for " +
                        e.sigma().to_string());
}

void require_finite(const ModuleExpr& e) {
    if (e.sigma().is_all())
        throw Error(ErrorKind::UnsupportedSigma,
                    "structure decompositions need a finite prime set; use the Q-vector-space form");
}
}  // namespace

// --- rule tables ------------------------------------------------------------

AtomFacts atom_facts(const ModuleAtom& atom, const PrimeSet& sigma) {
    //                         compact discrete conn   td     ellip  divis  C=0
    switch (atom.kind()) {
    case AtomKind::Real:             return {false, false, true,  false, false, true,  true};
    case AtomKind::PadicField:       return {false, false, false, true,  true,  true,  false};
    case AtomKind::PadicIntegers:    return {true,  false, false, true,  true,  false, false};
    case AtomKind::FiniteCyclic:     return {true,  true,  false, true,  true,  false, false};
    case AtomKind::FreeRankOne:      return {false, true,  false, true,  false, sigma.is_all(), true};
    case AtomKind::Solenoid:         return {true,  false, true,  false, true,  true,  false};
    case AtomKind::Prufer:           return {false, true,  false, true,  true,  true,  false};
    case AtomKind::RationalDiscrete: return {false, true,  false, true,  false, true,  true};
    case AtomKind::RationalSolenoid: return {true,  false, true,  false, true,  true,  false};
    }
    throw std::logic_error("unhandled atom kind");
}

bool atom_compactly_generated(const ModuleAtom& atom, const PrimeSet& sigma) {
    switch (atom.kind()) {
    // compact atoms are generated by themselves
    case AtomKind::PadicIntegers:
    case AtomKind::FiniteCyclic:
    case AtomKind::Solenoid:
    case AtomKind::RationalSolenoid: return true;
    // R = Z[1/S] * [-1, 1]; Z[1/S] = Z[1/S] * {1}
    case AtomKind::Real:
    case AtomKind::FreeRankOne: return true;
    // Z[1/S] * p^n Z_p exhausts Q_p only when 1/p is a scalar
    case AtomKind::PadicField: return sigma.contains(atom.parameter());
    // finitely many points generate a finite submodule of Z(q^inf)
    case AtomKind::Prufer: return false;
    // Q is finitely generated over Z[1/S] only when Z[1/S] = Q
    case AtomKind::RationalDiscrete: return sigma.is_all();
    }
    throw std::logic_error("unhandled atom kind");
}

bool atom_no_small_submodules(const ModuleAtom& atom, const PrimeSet& sigma) {
    switch (atom.kind()) {
    // {0} is a neighbourhood of 0
    case AtomKind::FiniteCyclic:
    case AtomKind::FreeRankOne:
    case AtomKind::Prufer:
    case AtomKind::RationalDiscrete: return true;
    // ]-1/2, 1/2[ holds no nonzero subgroup
    case AtomKind::Real: return true;
    // q^n Z_q is a submodule inside every neighbourhood
    case AtomKind::PadicIntegers: return false;
    // p^n Z_p is a submodule unless dividing by p escapes it
    case AtomKind::PadicField: return sigma.contains(atom.parameter());
    // locally isomorphic to the adele ring, whose box ]-1,1[ x Z_Sigma holds
    // no nonzero submodule
    case AtomKind::Solenoid: return true;
    // for finite Sigma every neighbourhood contains prod_{q not in Sigma} Z_q-type
    // closed submodules; for Sigma = all primes this is the Solenoid case
    case AtomKind::RationalSolenoid: return sigma.is_all();
    }
    throw std::logic_error("unhandled atom kind");
}

ModuleAtom dual(const ModuleAtom& atom) {
    switch (atom.kind()) {
    case AtomKind::Real:
    case AtomKind::PadicField:
    case AtomKind::FiniteCyclic: return atom;
    case AtomKind::PadicIntegers: return ModuleAtom::prufer(atom.parameter());
    case AtomKind::Prufer: return ModuleAtom::padic_integers(atom.parameter());
    case AtomKind::FreeRankOne: return ModuleAtom::solenoid();
    case AtomKind::Solenoid: return ModuleAtom::free_rank_one();
    case AtomKind::RationalDiscrete: return ModuleAtom::rational_solenoid();
    case AtomKind::RationalSolenoid: return ModuleAtom::rational_discrete();
    }
    throw std::logic_error("unhandled atom kind");
}

// --- whole expressions ------------------------------------------------------

ModuleExpr dual(const ModuleExpr& e) {
    require_valid(e);
    std::vector<Factor> out;
    for (const auto& f : e.factors()) out.push_back({dual(f.atom), f.exponent});
    return ModuleExpr(e.sigma(), out);
}

bool nss_direct(const ModuleExpr& e) {
    require_valid(e);
    return std::all_of(e.factors().begin(), e.factors().end(),
                       [&](const Factor& f) { return atom_no_small_submodules(f.atom, e.sigma()); });
}

bool nss_via_dual(const ModuleExpr& e) {
    const auto d = dual(e);
    return std::all_of(d.factors().begin(), d.factors().end(),
                       [&](const Factor& f) { return atom_compactly_generated(f.atom, e.sigma()); });
}

ClassificationReport classify(const ModuleExpr& e) {
    require_valid(e);
    ClassificationReport r;
    for (const auto& f : e.factors()) {
        const auto facts = atom_facts(f.atom, e.sigma());
        r.compact = r.compact && facts.compact;
        r.discrete = r.discrete && facts.discrete;
        r.connected = r.connected && facts.connected;
        r.totally_disconnected = r.totally_disconnected && facts.totally_disconnected;
        r.elliptic = r.elliptic && facts.elliptic;
        r.divisible = r.divisible && facts.divisible;
        r.compactly_generated = r.compactly_generated && atom_compactly_generated(f.atom, e.sigma());
    }
    r.nss = nss_direct(e);
    if (r.nss != nss_via_dual(e))
        throw std::logic_error("NSS rule table disagrees with the duality route on " + e.to_string());
    r.lie_type = r.nss ? "unknown" : "no";
    return r;
}

ModuleExpr compact_elements(const ModuleExpr& e) {
    std::vector<Factor> out;
    for (const auto& f : e.factors())
        if (!atom_facts(f.atom, e.sigma()).compact_elements_trivial) {
            // every listed atom with nontrivial C(atom) is elliptic, so C(atom) = atom
            out.push_back(f);
        }
    return ModuleExpr(e.sigma(), out);
}

// --- normal forms -----------------------------------------------------------

ModuleExpr AdelicPart::to_expr(const PrimeSet& sigma) const {
    std::vector<Factor> out;
    if (real_rank > 0) out.push_back({ModuleAtom::real(), real_rank});
    for (const auto& [p, n] : padic_ranks)
        if (n > 0) out.push_back({ModuleAtom::padic_field(p), n});
    return ModuleExpr(sigma, out);
}

namespace {

bool is_adelic(const ModuleAtom& atom, const PrimeSet& sigma) {
    return atom.kind() == AtomKind::Real ||
           (atom.kind() == AtomKind::PadicField && sigma.contains(atom.parameter()));
}

/// Splits off the A_{Z[1/S]}-module factor; returns the remaining factors.
std::vector<Factor> split_adelic(const ModuleExpr& e, AdelicPart& adelic) {
    adelic = {};
    if (e.sigma().is_finite())
        for (auto p : e.sigma().primes()) adelic.padic_ranks[p] = 0;
    std::vector<Factor> rest;
    for (const auto& f : e.factors()) {
        if (f.atom.kind() == AtomKind::Real)
            adelic.real_rank += f.exponent;
        else if (is_adelic(f.atom, e.sigma()))
            adelic.padic_ranks[f.atom.parameter()] += f.exponent;
        else
            rest.push_back(f);
    }
    return rest;
}

/// The compact open subgroup used for one factor of N: Z_p inside Q_p, the
/// atom itself when compact, and 0 inside a discrete atom.
std::optional<ModuleAtom> compact_open_piece(const ModuleAtom& atom, const PrimeSet& sigma) {
    if (atom.kind() == AtomKind::PadicField) return ModuleAtom::padic_integers(atom.parameter());
    const auto facts = atom_facts(atom, sigma);
    if (facts.compact) return atom;
    if (facts.discrete) return std::nullopt;
    throw std::logic_error(atom.to_string() + " has no compact open subgroup");
}

}  // namespace

FirstDecomposition decompose_first(const ModuleExpr& e) {
    require_finite(e);
    require_valid(e);
    FirstDecomposition d;
    const auto rest = split_adelic(e, d.adelic);
    d.residue = ModuleExpr(e.sigma(), rest);
    std::vector<Factor> witness, identity;
    for (const auto& f : rest) {
        if (auto piece = compact_open_piece(f.atom, e.sigma())) {
            witness.push_back({*piece, f.exponent});
            if (atom_facts(*piece, e.sigma()).connected) identity.push_back({*piece, f.exponent});
        }
    }
    d.witness = ModuleExpr(e.sigma(), witness);
    d.witness_identity = ModuleExpr(e.sigma(), identity);
    if (!quotient_prime_to_sigma(d, e.sigma()))
        throw std::logic_error("witness quotient of " + e.to_string() + " meets Sigma");
    return d;
}

std::variant<SecondDecomposition, Obstruction> decompose_second(const ModuleExpr& e) {
    require_finite(e);
    require_valid(e);
    for (const auto& f : e.factors())
        if (!atom_compactly_generated(f.atom, e.sigma()))
            return Obstruction{Obstruction::Reason::NotCompactlyGenerated, f.atom};
    SecondDecomposition d;
    std::vector<Factor> compact;
    for (const auto& f : split_adelic(e, d.adelic)) {
        if (f.atom.kind() == AtomKind::FreeRankOne) {
            d.free_rank += f.exponent;
            continue;
        }
        if (!atom_facts(f.atom, e.sigma()).compact)
            throw std::logic_error(f.atom.to_string() + " left over in the compact part");
        compact.push_back(f);
    }
    d.compact_part = ModuleExpr(e.sigma(), compact);
    return d;
}

std::variant<ThirdDecomposition, Obstruction> decompose_third(const ModuleExpr& e) {
    require_finite(e);
    require_valid(e);
    for (const auto& f : e.factors())
        if (!atom_no_small_submodules(f.atom, e.sigma()))
            return Obstruction{Obstruction::Reason::HasSmallSubmodules, f.atom};
    ThirdDecomposition d;
    std::vector<Factor> discrete;
    for (const auto& f : split_adelic(e, d.adelic)) {
        if (f.atom.kind() == AtomKind::Solenoid) {
            d.solenoid_rank += f.exponent;
            continue;
        }
        if (!atom_facts(f.atom, e.sigma()).discrete)
            throw std::logic_error(f.atom.to_string() + " left over in the discrete part");
        discrete.push_back(f);
    }
    d.discrete_part = ModuleExpr(e.sigma(), discrete);
    // C(D) is the torsion of D and lives over primes outside Sigma
    const auto torsion_part = compact_elements(d.discrete_part);
    for (const auto& f : torsion_part.factors()) {
        const bool torsion = f.atom.kind() == AtomKind::FiniteCyclic || f.atom.kind() == AtomKind::Prufer;
        if (!torsion || e.sigma().contains(f.atom.prime()))
            throw std::logic_error("C(D) != T(D) prime to Sigma in " + e.to_string());
    }
    return d;
}

ModuleExpr recompose(const FirstDecomposition& d, const PrimeSet& sigma) {
    return d.adelic.to_expr(sigma).times(d.residue);
}

ModuleExpr recompose(const SecondDecomposition& d, const PrimeSet& sigma) {
    auto e = d.adelic.to_expr(sigma).times(d.compact_part);
    return d.free_rank > 0 ? e.times(ModuleAtom::free_rank_one(), d.free_rank) : e;
}

ModuleExpr recompose(const ThirdDecomposition& d, const PrimeSet& sigma) {
    auto e = d.adelic.to_expr(sigma).times(d.discrete_part);
    return d.solenoid_rank > 0 ? e.times(ModuleAtom::solenoid(), d.solenoid_rank) : e;
}

ThirdDecomposition dual(const SecondDecomposition& d) {
    return {d.adelic, d.free_rank, dual(d.compact_part)};
}

bool is_compact_open_in(const ModuleExpr& sub, const ModuleExpr& ambient) {
    if (sub.sigma() != ambient.sigma()) return false;
    // Match each ambient factor with the open compact subgroups it admits.
    std::vector<Factor> expected;
    for (const auto& f : ambient.factors()) {
        const auto facts = atom_facts(f.atom, ambient.sigma());
        if (f.atom.kind() == AtomKind::PadicField)
            expected.push_back({ModuleAtom::padic_integers(f.atom.parameter()), f.exponent});
        else if (facts.compact)
            expected.push_back(f);
        else if (!facts.discrete)
            return false;  // R and friends have no compact open subgroup
    }
    if (ModuleExpr(ambient.sigma(), expected) != sub) return false;
    return sub.factors().empty() ||
           std::all_of(sub.factors().begin(), sub.factors().end(),
                       [&](const Factor& f) { return atom_facts(f.atom, sub.sigma()).compact; });
}

bool quotient_prime_to_sigma(const FirstDecomposition& d, const PrimeSet& sigma) {
    for (const auto& f : d.witness.factors()) {
        const auto facts = atom_facts(f.atom, sigma);
        if (facts.connected) continue;  // part of K_0
        if (!facts.totally_disconnected) return false;
        const auto q = f.atom.prime();
        if (q == 0 || sigma.contains(q)) return false;
    }
    return true;
}

RationalVectorSpaceForm classify_q_vector_space(const ModuleExpr& e) {
    if (!e.sigma().is_all())
        throw Error(ErrorKind::UnsupportedSigma, "Q-vector-space form needs Sigma = all primes");
    RationalVectorSpaceForm out;
    for (const auto& [atom, n] : e.factors()) {
        switch (atom.kind()) {
        case AtomKind::Real: out.adelic.real_rank += n; break;
        case AtomKind::PadicField: out.adelic.padic_ranks[atom.parameter()] += n; break;
        case AtomKind::RationalDiscrete:
        case AtomKind::FreeRankOne: out.discrete_rank += n; break;
        case AtomKind::RationalSolenoid:
        case AtomKind::Solenoid: out.solenoid_rank += n; break;
        default:
            throw Error(ErrorKind::InvalidExpression, atom.to_string() + " is not a Q-vector space");
        }
    }
    return out;
}

std::string Obstruction::to_string() const {
    const char* what = reason == Reason::NotCompactlyGenerated ? "NotCompactlyGenerated" : "HasSmallSubmodules";
    return std::string(what) + "(" + atom.to_string() + ")";
}

}  // namespace adelic
