#include "adelic/parse.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "adelic/error.hpp"
#include "adelic/intmath.hpp"

namespace adelic {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ", ") + (s.front() == '<' ? s : "'" + s + "'");
    return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : std::runtime_error("at offset " + std::to_string(offset) + ": expected " + join(expected) + ", found " +
                         found),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    std::size_t pos() const { return pos_; }

    /// Consumes `token` if it comes next.
    bool accept(std::string_view token) {
        skip_ws();
        if (text_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }

    void expect(std::string_view token) {
        if (!accept(token)) fail({std::string(token)});
    }

    bool peek_digit() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::int64_t integer() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail({"<integer>"});
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc() || ptr != text_.data() + pos_) {
            pos_ = start;
            fail({"<integer below 2^63>"});
        }
        return value;
    }

    [[noreturn]] void fail(std::vector<std::string> expected, std::optional<std::size_t> at = std::nullopt) {
        const auto where = at.value_or(pos_);
        std::string found = where >= text_.size() ? "end of input" : "'" + std::string(text_.substr(where, 8)) + "'";
        throw ParseError(where, std::move(expected), found);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

// --- module expressions -----------------------------------------------------

const std::vector<std::string> kAtomTokens = {"R", "Qp(", "Zp(", "Z/", "ZS", "Sol", "Pruf(", "Qd", "QSol"};

std::int64_t prime_argument(Cursor& c) {
    const auto at = (c.skip_ws(), c.pos());
    const auto p = c.integer();
    if (!intmath::is_prime(p)) c.fail({"<prime>"}, at);
    c.expect(")");
    return p;
}

std::vector<ModuleAtom> parse_atom(Cursor& c) {
    // longer spellings first where one is a prefix of another
    if (c.accept("QSol")) return {ModuleAtom::rational_solenoid()};
    if (c.accept("Qd")) return {ModuleAtom::rational_discrete()};
    if (c.accept("Qp(")) return {ModuleAtom::padic_field(prime_argument(c))};
    if (c.accept("Zp(")) return {ModuleAtom::padic_integers(prime_argument(c))};
    if (c.accept("ZS")) return {ModuleAtom::free_rank_one()};
    if (c.accept("Z/")) {
        const auto at = (c.skip_ws(), c.pos());
        const auto m = c.integer();
        if (m < 2) c.fail({"<integer >= 2>"}, at);
        return split_cyclic(m);
    }
    if (c.accept("Sol")) return {ModuleAtom::solenoid()};
    if (c.accept("Pruf(")) return {ModuleAtom::prufer(prime_argument(c))};
    if (c.accept("R")) return {ModuleAtom::real()};
    c.fail(kAtomTokens);
}

}  // namespace

ModuleExpr parse_expr(std::string_view text, const PrimeSet& sigma) {
    Cursor c(text);
    if (c.accept("0")) {
        if (!c.at_end()) c.fail({"<end>"});
        return ModuleExpr(sigma);
    }
    std::vector<Factor> factors;
    for (;;) {
        const auto atoms = parse_atom(c);
        int exponent = 1;
        if (c.accept("^")) {
            const auto at = (c.skip_ws(), c.pos());
            const auto e = c.integer();
            if (e < 1 || e > 1'000'000) c.fail({"<integer in [1, 10^6]>"}, at);
            exponent = static_cast<int>(e);
        }
        for (const auto& a : atoms) factors.push_back({a, exponent});
        if (c.at_end()) break;
        if (!c.accept("x")) c.fail({"x", "^", "<end>"});
    }
    return ModuleExpr(sigma, factors);
}

// --- adele arithmetic -------------------------------------------------------

namespace {

class AdeleEvaluator {
public:
    AdeleEvaluator(std::string_view text, const PrimeSet& sigma, int k, int level)
        : c_(text), sigma_(sigma), k_(k), level_(level) {}

    Adele run() {
        auto v = sum();
        if (!c_.at_end()) c_.fail({"+", "-", "*", "<end>"});
        return v;
    }

private:
    Adele sum() {
        auto v = term();
        for (;;) {
            if (c_.accept("+")) v = v + term();
            else if (c_.accept("-")) v = v + -term();
            else return v;
        }
    }

    Adele term() {
        auto v = unary();
        while (c_.accept("*")) v = v * unary();
        return v;
    }

    Adele unary() {
        if (c_.accept("-")) return -unary();
        return primary();
    }

    Adele primary() {
        if (c_.accept("(")) {
            auto v = sum();
            c_.expect(")");
            return v;
        }
        if (c_.accept("e(")) {
            const auto at = (c_.skip_ws(), c_.pos());
            const auto p = c_.integer();
            if (!intmath::is_prime(p)) c_.fail({"<prime>"}, at);
            c_.expect(")");
            return Adele(Rational(0), FiniteAdele::idempotent(p, sigma_, k_));
        }
        if (!c_.peek_digit()) c_.fail({"<integer>", "e(", "(", "-"});
        const auto num = c_.integer();
        std::int64_t den = 1;
        if (c_.accept("/")) {
            const auto at = (c_.skip_ws(), c_.pos());
            den = c_.integer();
            if (den == 0) c_.fail({"<nonzero integer>"}, at);
        }
        return Adele::diagonal(SRational(Rational(num, den), sigma_), k_, level_);
    }

    Cursor c_;
    const PrimeSet& sigma_;
    int k_;
    int level_;
};

}  // namespace

Adele eval_adele(std::string_view text, const PrimeSet& sigma, int k, int level) {
    return AdeleEvaluator(text, sigma, k, level).run();
}

}  // namespace adelic
