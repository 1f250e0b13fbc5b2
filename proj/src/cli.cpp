#include "adelic/cli.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "adelic/adele.hpp"
#include "adelic/duality.hpp"
#include "adelic/error.hpp"
#include "adelic/intmath.hpp"
#include "adelic/parse.hpp"
#include "adelic/profinite.hpp"

namespace adelic::cli {

using nlohmann::json;

namespace {

/// Reported with exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- shared formatting ------------------------------------------------------

json adelic_json(const AdelicPart& a) {
    json np = json::object();
    for (const auto& [p, n] : a.padic_ranks) np[std::to_string(p)] = n;
    return {{"n", a.real_rank}, {"np", np}};
}

std::string adelic_text(const AdelicPart& a, const PrimeSet& sigma) {
    std::ostringstream os;
    os << "A: " << a.to_expr(sigma).to_string() << "\n";
    os << "n: " << a.real_rank << "\n";
    for (const auto& [p, n] : a.padic_ranks) os << "n_" << p << ": " << n << "\n";
    return os.str();
}

const char* property_name(ViolatedProperty p) {
    return p == ViolatedProperty::STorsionFree ? "S-torsion-free" : "S-divisible";
}

json violations_json(const ValidationReport& r) {
    json out = json::array();
    for (const auto& v : r.violations)
        out.push_back({{"atom", v.atom.to_string()},
                       {"generator", v.generator},
                       {"property", property_name(v.property)},
                       {"equation", v.equation}});
    return out;
}

void print_violations(const ValidationReport& r, std::ostream& err) {
    for (const auto& v : r.violations)
        err << "invalid: " << v.atom.to_string() << " is not " << property_name(v.property) << " (s = "
            << v.generator << ": " << v.equation << ")\n";
}

json flags_json(const ClassificationReport& c) {
    return {{"compact", c.compact},
            {"discrete", c.discrete},
            {"connected", c.connected},
            {"totally_disconnected", c.totally_disconnected},
            {"elliptic", c.elliptic},
            {"compactly_generated", c.compactly_generated},
            {"nss", c.nss},
            {"divisible", c.divisible}};
}

json report(const ModuleExpr& e) {
    const auto validation = validate(e);
    json out = {{"sigma", e.sigma().to_string()},
                {"expr", e.to_string()},
                {"valid", validation.valid},
                {"violations", violations_json(validation)},
                {"flags", nullptr},
                {"lie_type", nullptr},
                {"first", nullptr},
                {"second", nullptr},
                {"third", nullptr},
                {"qvs", nullptr}};
    if (!validation.valid) return out;

    const auto c = classify(e);
    out["flags"] = flags_json(c);
    out["lie_type"] = c.lie_type;
    if (e.sigma().is_all()) {
        try {
            const auto q = classify_q_vector_space(e);
            auto j = adelic_json(q.adelic);
            j["I"] = q.discrete_rank;
            j["J"] = q.solenoid_rank;
            out["qvs"] = j;
        } catch (const Error&) {
            // an AllPrimes expression with no Q-vector-space form keeps qvs null
        }
        return out;
    }

    const auto first = decompose_first(e);
    auto f = adelic_json(first.adelic);
    f["n_part"] = first.residue.to_string();
    f["witness"] = first.witness.to_string();
    out["first"] = f;
    const auto second = decompose_second(e);
    if (const auto* s = std::get_if<SecondDecomposition>(&second)) {
        auto j = adelic_json(s->adelic);
        j["k"] = s->free_rank;
        j["K"] = s->compact_part.to_string();
        out["second"] = j;
    }
    const auto third = decompose_third(e);
    if (const auto* t = std::get_if<ThirdDecomposition>(&third)) {
        auto j = adelic_json(t->adelic);
        j["k"] = t->solenoid_rank;
        j["D"] = t->discrete_part.to_string();
        out["third"] = j;
    }
    return out;
}

// --- argument helpers -------------------------------------------------------

std::int64_t parse_int(const std::string& text, const char* what) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw UsageError(std::string(what) + ": not an integer: '" + text + "'");
    return v;
}

Rational parse_rational(const std::string& text, const char* what) {
    try {
        return Rational::parse(text);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DivisionByZero || e.kind() == ErrorKind::Overflow) throw;
        throw UsageError(std::string(what) + ": not a rational number: '" + text + "'");
    }
}

/// Rational when the text is `a` or `a/b`, floating point otherwise.
RealPart parse_real(const std::string& text, const char* what) {
    if (text.find_first_of(".eE") == std::string::npos) return parse_rational(text, what);
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(what) + ": not a real number: '" + text + "'");
}

ProfiniteInt parse_profinite(const std::string& text, int level) {
    if (text.rfind("fact[", 0) == 0) {
        try {
            return ProfiniteInt::parse(text);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InvalidArgument) throw UsageError(e.what());
            throw;
        }
    }
    return ProfiniteInt::from_int(parse_int(text, "value"), level);
}

PrimeSet parse_sigma(const std::string& text) {
    try {
        return PrimeSet::parse(text);
    } catch (const Error& e) {
        throw UsageError(std::string("--sigma: ") + e.what());
    }
}

struct Options {
    std::string sigma = "primes:";
    int prec = PadicNumber::kDefaultPrecision;
    int level = ProfiniteInt::kDefaultLevel;
    bool json = false;
};

void add_common(CLI::App* cmd, Options& o, bool arithmetic) {
    cmd->add_option("--sigma", o.sigma, "prime set: primes:<list> or primes:all")->capture_default_str();
    if (arithmetic) {
        cmd->add_option("--prec", o.prec, "p-adic precision k")->check(CLI::Range(1, 60))->capture_default_str();
        cmd->add_option("--level", o.level, "factorial truncation level m")
            ->check(CLI::Range(1, ProfiniteInt::kMaxLevel))
            ->capture_default_str();
    }
    cmd->add_flag("--json", o.json, "machine-readable output");
}

// --- subcommands ------------------------------------------------------------

int do_classify(const ModuleExpr& e, const Options& o, std::ostream& out, std::ostream& err) {
    const auto r = report(e);
    if (o.json) {
        out << r.dump(2) << "\n";
        return r["valid"].get<bool>() ? kExitOk : kExitInvalid;
    }
    if (!r["valid"].get<bool>()) {
        print_violations(validate(e), err);
        return kExitInvalid;
    }
    out << "expr: " << e.to_string() << "\n";
    out << "sigma: " << e.sigma().to_string() << "\n";
    out << "valid: true\n";
    for (const auto& [name, value] : r["flags"].items()) out << name << ": " << (value.get<bool>() ? "true" : "false") << "\n";
    out << "lie_type: " << r["lie_type"].get<std::string>() << "\n";
    return kExitOk;
}

int do_dual(const ModuleExpr& e, const Options& o, std::ostream& out, std::ostream& err) {
    const auto v = validate(e);
    if (!v.valid) {
        if (o.json) out << json{{"valid", false}, {"violations", violations_json(v)}}.dump(2) << "\n";
        print_violations(v, err);
        return kExitInvalid;
    }
    const auto d = dual(e);
    if (o.json)
        out << json{{"sigma", e.sigma().to_string()}, {"expr", e.to_string()}, {"dual", d.to_string()}}.dump(2)
            << "\n";
    else
        out << d.to_string() << "\n";
    return kExitOk;
}

int report_obstruction(const Obstruction& ob, const Options& o, std::ostream& out, std::ostream& err) {
    if (o.json) out << json{{"obstruction", ob.to_string()}}.dump(2) << "\n";
    err << ob.to_string() << "\n";
    return kExitInvalid;
}

int do_decompose(const ModuleExpr& e, const std::string& which, const Options& o, std::ostream& out,
                 std::ostream& err) {
    const auto v = validate(e);
    if (!v.valid) {
        print_violations(v, err);
        return kExitInvalid;
    }
    const auto& sigma = e.sigma();
    json j;
    std::ostringstream text;
    if (which == "1") {
        const auto d = decompose_first(e);
        j = adelic_json(d.adelic);
        j["n_part"] = d.residue.to_string();
        j["witness"] = d.witness.to_string();
        text << adelic_text(d.adelic, sigma) << "N: " << d.residue.to_string() << "\n"
             << "K: " << d.witness.to_string() << "\n";
    } else if (which == "2") {
        const auto r = decompose_second(e);
        if (const auto* ob = std::get_if<Obstruction>(&r)) return report_obstruction(*ob, o, out, err);
        const auto& d = std::get<SecondDecomposition>(r);
        j = adelic_json(d.adelic);
        j["k"] = d.free_rank;
        j["K"] = d.compact_part.to_string();
        text << adelic_text(d.adelic, sigma) << "k: " << d.free_rank << "\n"
             << "K: " << d.compact_part.to_string() << "\n";
    } else if (which == "3") {
        const auto r = decompose_third(e);
        if (const auto* ob = std::get_if<Obstruction>(&r)) return report_obstruction(*ob, o, out, err);
        const auto& d = std::get<ThirdDecomposition>(r);
        j = adelic_json(d.adelic);
        j["k"] = d.solenoid_rank;
        j["D"] = d.discrete_part.to_string();
        text << adelic_text(d.adelic, sigma) << "k: " << d.solenoid_rank << "\n"
             << "D: " << d.discrete_part.to_string() << "\n";
    } else {
        const auto d = classify_q_vector_space(e);
        j = adelic_json(d.adelic);
        j["I"] = d.discrete_rank;
        j["J"] = d.solenoid_rank;
        text << adelic_text(d.adelic, sigma) << "I: " << d.discrete_rank << "\n"
             << "J: " << d.solenoid_rank << "\n";
    }
    if (o.json)
        out << j.dump(2) << "\n";
    else
        out << text.str();
    return kExitOk;
}

int do_adele(const std::string& text, const Options& o, std::ostream& out) {
    const auto v = eval_adele(text, parse_sigma(o.sigma), o.prec, o.level);
    if (o.json) {
        json j = {{"real", to_string(v.real())},
                  {"s", v.finite().denominator()},
                  {"integral", v.finite().is_integral()},
                  {"text", v.to_string()}};
        out << j.dump(2) << "\n";
    } else {
        out << v.to_string() << "\n";
    }
    return kExitOk;
}

int do_pair(const std::string& atom, const std::string& chi_text, const std::string& x_text, const Options& o,
            std::ostream& out) {
    const auto sigma = parse_sigma(o.sigma);
    CircleValue value;
    if (atom == "R") {
        value = pair(Character::real(parse_real(chi_text, "--chi")), Element(parse_real(x_text, "--x")));
    } else if (atom.rfind("Qp:", 0) == 0 || atom.rfind("Zp:", 0) == 0) {
        const auto p = parse_int(atom.substr(3), "--atom");
        if (!intmath::is_prime(p)) throw UsageError("--atom: " + std::to_string(p) + " is not prime");
        const auto chi = parse_rational(chi_text, "--chi");
        const auto x = PadicNumber::from_rational(p, parse_rational(x_text, "--x"), o.prec);
        if (atom[0] == 'Q')
            value = pair(Character::padic_field(PadicNumber::from_rational(p, chi, o.prec)), Element(x));
        else
            value = pair(Character::padic_integers(p, chi), Element(x));
    } else if (atom == "ZS") {
        const auto chi = eval_adele(chi_text, sigma, o.prec, o.level);
        value = pair(Character::localization(chi), Element(SRational(parse_rational(x_text, "--x"), sigma)));
    } else {
        throw UsageError("--atom: expected R, Qp:<p>, Zp:<q> or ZS, found '" + atom + "'");
    }
    if (o.json) {
        json j = {{"turn", value.rational_part().to_string()}, {"text", value.to_string()}};
        if (value.real_part() != 0.0) j["real"] = value.real_part();
        out << j.dump(2) << "\n";
    } else {
        out << value.to_string() << "\n";
    }
    return kExitOk;
}

int do_profinite(const std::vector<std::string>& words, const Options& o, std::ostream& out) {
    if (words.empty()) throw UsageError("profinite: expected 'mod <n> <value>', 'at <q> <value>' or 'show <value>'");
    const auto& verb = words[0];
    const std::size_t arity = verb == "show" ? 2 : 3;
    if ((verb != "mod" && verb != "at" && verb != "show") || words.size() != arity)
        throw UsageError("profinite: expected 'mod <n> <value>', 'at <q> <value>' or 'show <value>'");
    const auto x = parse_profinite(words.back(), o.level);
    json j = {{"value", x.to_string()}, {"level", x.level()}};
    std::string text;
    if (verb == "mod") {
        const auto n = parse_int(words[1], "modulus");
        if (n < 1) throw UsageError("modulus must be positive");
        const auto r = x.to_residue(n);
        j["modulus"] = n;
        j["residue"] = r;
        text = std::to_string(r);
    } else if (verb == "at") {
        const auto q = parse_int(words[1], "prime");
        if (!intmath::is_prime(q)) throw UsageError(std::to_string(q) + " is not prime");
        int k = o.prec;
        // lower the precision to what the level supports
        while (k > 1 && x.modulus() % intmath::checked_pow(q, k) != 0) --k;
        const auto c = component_at(x, q, k);
        j["component"] = c.to_string();
        text = c.to_string();
    } else {
        j["residue"] = x.residue();
        text = x.to_string() + " = " + std::to_string(x.residue()) + " mod " + std::to_string(x.modulus());
    }
    if (o.json)
        out << j.dump(2) << "\n";
    else
        out << text << "\n";
    return kExitOk;
}

}  // namespace

std::string report_json(const ModuleExpr& e) { return report(e).dump(); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact arithmetic and structure normal forms for locally compact Z[1/S]-modules", "adelic"};
    app.require_subcommand(1);

    Options o;
    std::string expr_text, which = "1", arith, atom, chi, x;
    std::vector<std::string> words;

    auto* classify_cmd = app.add_subcommand("classify", "validate and classify a module expression");
    add_common(classify_cmd, o, false);
    classify_cmd->add_option("expr", expr_text, "module expression")->required();

    auto* decompose_cmd = app.add_subcommand("decompose", "normal form of a module expression");
    add_common(decompose_cmd, o, false);
    decompose_cmd->add_option("--which", which, "1, 2, 3 or q")
        ->check(CLI::IsMember({"1", "2", "3", "q"}))
        ->capture_default_str();
    decompose_cmd->add_option("expr", expr_text, "module expression")->required();

    auto* dual_cmd = app.add_subcommand("dual", "Pontryagin dual of a module expression");
    add_common(dual_cmd, o, false);
    dual_cmd->add_option("expr", expr_text, "module expression")->required();

    auto* adele_cmd = app.add_subcommand("adele", "adele arithmetic");
    add_common(adele_cmd, o, true);
    adele_cmd->add_option("words", words, "eval <expr>")->required()->expected(2);

    auto* pair_cmd = app.add_subcommand("pair", "evaluate a character pairing");
    add_common(pair_cmd, o, true);
    pair_cmd->add_option("--atom", atom, "R, Qp:<p>, Zp:<q> or ZS")->required();
    pair_cmd->add_option("--chi", chi, "character parameter")->required();
    pair_cmd->add_option("--x", x, "point")->required();

    auto* profinite_cmd = app.add_subcommand("profinite", "profinite integer queries");
    add_common(profinite_cmd, o, true);
    profinite_cmd->add_option("words", words, "mod <n> <value> | at <q> <value> | show <value>")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (classify_cmd->parsed() || decompose_cmd->parsed() || dual_cmd->parsed()) {
            const auto sigma = parse_sigma(o.sigma);
            const auto e = parse_expr(expr_text, sigma);
            if (classify_cmd->parsed()) return do_classify(e, o, out, err);
            if (dual_cmd->parsed()) return do_dual(e, o, out, err);
            return do_decompose(e, which, o, out, err);
        }
        if (adele_cmd->parsed()) {
            if (words[0] != "eval") throw UsageError("adele: expected 'eval <expr>'");
            return do_adele(words[1], o, out);
        }
        if (pair_cmd->parsed()) return do_pair(atom, chi, x, o, out);
        return do_profinite(words, o, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace adelic::cli
