#pragma once

// Symbolic locally compact Z[1/S]-modules.
//
// A module expression is a finite product of atoms from a closed
// vocabulary.  Every locally compact Z[1/S]-module in scope decomposes into
// these shapes, so isomorphism of expressions is multiset equality after
// splitting cyclic factors into prime powers.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "adelic/localization.hpp"

namespace adelic {

enum class AtomKind {
    Real,              // R
    PadicField,        // Q_p
    PadicIntegers,     // Z_q
    FiniteCyclic,      // Z/q^e
    FreeRankOne,       // Z[1/S], discrete
    Solenoid,          // dual of Z[1/S]
    Prufer,            // Z(q^inf), discrete
    RationalDiscrete,  // Q, discrete
    RationalSolenoid,  // dual of discrete Q
};

class ModuleAtom {
public:
    static ModuleAtom real() { return ModuleAtom(AtomKind::Real, 0); }
    static ModuleAtom padic_field(std::int64_t p);
    static ModuleAtom padic_integers(std::int64_t q);
    /// A cyclic group of prime-power order; see split_cyclic for general m.
    static ModuleAtom cyclic(std::int64_t prime_power);
    static ModuleAtom free_rank_one() { return ModuleAtom(AtomKind::FreeRankOne, 0); }
    static ModuleAtom solenoid() { return ModuleAtom(AtomKind::Solenoid, 0); }
    static ModuleAtom prufer(std::int64_t q);
    static ModuleAtom rational_discrete() { return ModuleAtom(AtomKind::RationalDiscrete, 0); }
    static ModuleAtom rational_solenoid() { return ModuleAtom(AtomKind::RationalSolenoid, 0); }

    AtomKind kind() const noexcept { return kind_; }
    /// p for Q_p, q for Z_q and Z(q^inf), the order for Z/q^e, 0 otherwise.
    std::int64_t parameter() const noexcept { return param_; }
    /// The prime attached to the atom (the base prime for Z/q^e), 0 if none.
    std::int64_t prime() const;

    /// Grammar spelling: R, Qp(p), Zp(q), Z/m, ZS, Sol, Pruf(q), Qd, QSol.
    std::string to_string() const;

    friend auto operator<=>(const ModuleAtom&, const ModuleAtom&) = default;

private:
    ModuleAtom(AtomKind kind, std::int64_t param) : kind_(kind), param_(param) {}
    AtomKind kind_;
    std::int64_t param_;
};

/// Z/m as a product of cyclic groups of coprime prime-power order.
std::vector<ModuleAtom> split_cyclic(std::int64_t m);

struct Factor {
    ModuleAtom atom;
    int exponent;
    friend bool operator==(const Factor&, const Factor&) = default;
};

class ModuleExpr {
public:
    explicit ModuleExpr(PrimeSet sigma = {}) : sigma_(std::move(sigma)) {}
    ModuleExpr(PrimeSet sigma, const std::vector<Factor>& factors);

    const PrimeSet& sigma() const noexcept { return sigma_; }
    /// Sorted, merged, exponents positive.
    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }
    int exponent_of(const ModuleAtom& atom) const;

    /// Product with another expression over the same Sigma.
    ModuleExpr times(const ModuleExpr& other) const;
    ModuleExpr times(const ModuleAtom& atom, int exponent = 1) const;

    /// Grammar form, e.g. `R^2 x Qp(2) x ZS`; the trivial module prints as `0`.
    std::string to_string() const;

    friend bool operator==(const ModuleExpr&, const ModuleExpr&) = default;

private:
    void normalize();

    PrimeSet sigma_;
    std::vector<Factor> factors_;
};

// --- validation -------------------------------------------------------------

enum class ViolatedProperty { STorsionFree, SDivisible };

struct Violation {
    ModuleAtom atom;
    std::int64_t generator;  // the s in Sigma witnessing the failure
    ViolatedProperty property;
    std::string equation;
};

struct ValidationReport {
    bool valid = true;
    std::vector<Violation> violations;
};

ValidationReport validate(const ModuleExpr& e);

// --- per-atom rule tables ---------------------------------------------------

/// Topological facts about one atom, independent of the module structure.
struct AtomFacts {
    bool compact;
    bool discrete;
    bool connected;
    bool totally_disconnected;
    bool elliptic;
    bool divisible;
    /// C(atom) = 0: no nonzero element generates a relatively compact subgroup.
    bool compact_elements_trivial;
};

AtomFacts atom_facts(const ModuleAtom& atom, const PrimeSet& sigma);

/// Z[1/S] * K = atom for some compact K.
bool atom_compactly_generated(const ModuleAtom& atom, const PrimeSet& sigma);

/// Some neighbourhood of 0 holds no nonzero Z[1/S]-submodule; decided from
/// topology directly, without passing through duality.
bool atom_no_small_submodules(const ModuleAtom& atom, const PrimeSet& sigma);

ModuleAtom dual(const ModuleAtom& atom);

// --- whole expressions ------------------------------------------------------

struct ClassificationReport {
    bool valid = true;
    bool compact = true;
    bool discrete = true;
    bool connected = true;
    bool totally_disconnected = true;
    bool elliptic = true;
    bool compactly_generated = true;
    bool nss = true;
    bool divisible = true;
    /// "no" unless nss holds, in which case Lie type is left undecided.
    std::string lie_type;

    friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

/// Atomwise Pontryagin dual; E must be valid.
ModuleExpr dual(const ModuleExpr& e);

ClassificationReport classify(const ModuleExpr& e);

/// NSS from the direct rule table.
bool nss_direct(const ModuleExpr& e);
/// NSS as compact generation of the dual.
bool nss_via_dual(const ModuleExpr& e);

/// Subgroup of compact elements C(E), as the product of atoms that consist of
/// compact elements (the others contribute 0).
ModuleExpr compact_elements(const ModuleExpr& e);

// --- normal forms ----------------------------------------------------------

/// R^n x prod_{p in Sigma} Q_p^{n_p}.
struct AdelicPart {
    int real_rank = 0;
    std::map<std::int64_t, int> padic_ranks;  // keyed by every p in Sigma

    ModuleExpr to_expr(const PrimeSet& sigma) const;
    friend bool operator==(const AdelicPart&, const AdelicPart&) = default;
};

/// M = A x N with a compact open witness K inside N whose totally
/// disconnected quotient is a Z_{P \ Sigma}-module.
struct FirstDecomposition {
    AdelicPart adelic;
    ModuleExpr residue;             // N
    ModuleExpr witness;             // K
    ModuleExpr witness_identity;    // K_0
    friend bool operator==(const FirstDecomposition&, const FirstDecomposition&) = default;
};

/// M = A x Z[1/S]^k x K with K compact.
struct SecondDecomposition {
    AdelicPart adelic;
    int free_rank = 0;
    ModuleExpr compact_part;
    friend bool operator==(const SecondDecomposition&, const SecondDecomposition&) = default;
};

/// M = A x dual(Z[1/S])^k x D with D discrete.
struct ThirdDecomposition {
    AdelicPart adelic;
    int solenoid_rank = 0;
    ModuleExpr discrete_part;
    friend bool operator==(const ThirdDecomposition&, const ThirdDecomposition&) = default;
};

struct Obstruction {
    enum class Reason { NotCompactlyGenerated, HasSmallSubmodules };
    Reason reason;
    ModuleAtom atom;
    std::string to_string() const;
};

FirstDecomposition decompose_first(const ModuleExpr& e);
std::variant<SecondDecomposition, Obstruction> decompose_second(const ModuleExpr& e);
std::variant<ThirdDecomposition, Obstruction> decompose_third(const ModuleExpr& e);

ModuleExpr recompose(const FirstDecomposition& d, const PrimeSet& sigma);
ModuleExpr recompose(const SecondDecomposition& d, const PrimeSet& sigma);
ModuleExpr recompose(const ThirdDecomposition& d, const PrimeSet& sigma);

/// Dualizes a 2nd-form decomposition into the 3rd form of the dual module.
ThirdDecomposition dual(const SecondDecomposition& d);

/// Whether `sub` is a compact open subgroup of `ambient`, factor by factor.
bool is_compact_open_in(const ModuleExpr& sub, const ModuleExpr& ambient);

/// Totally disconnected atoms of the witness quotient K / K_0 all live over
/// primes outside Sigma.
bool quotient_prime_to_sigma(const FirstDecomposition& d, const PrimeSet& sigma);

/// Normal form A x Q^(I) x dual(Q)^J of a locally compact Q-vector space.
struct RationalVectorSpaceForm {
    AdelicPart adelic;
    int discrete_rank = 0;
    int solenoid_rank = 0;
    friend bool operator==(const RationalVectorSpaceForm&, const RationalVectorSpaceForm&) = default;
};

RationalVectorSpaceForm classify_q_vector_space(const ModuleExpr& e);

}  // namespace adelic
