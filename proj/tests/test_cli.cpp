#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "adelic/cli.hpp"
#include "adelic/error.hpp"
#include "adelic/parse.hpp"
#include "corpus.hpp"

using namespace adelic;
using json = nlohmann::json;

namespace {

const PrimeSet kS2 = PrimeSet::finite({2});

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

ParseError parse_error(std::string_view text, const PrimeSet& sigma = kS2) {
    try {
        (void)parse_expr(text, sigma);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("parsed without error: " << text);
    return ParseError(0, {}, "");
}

/// Checks the JSON Schema keywords used by docs/report.schema.json: type,
/// enum, required, properties, additionalProperties, items, minimum, anyOf
/// and local $ref.
class SchemaValidator {
public:
    explicit SchemaValidator(json root) : root_(std::move(root)) {}

    bool validate(const json& instance, std::string& why) const { return check(root_, instance, "$", why); }

private:
    static bool has_type(const json& v, const std::string& t) {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        if (t == "integer") return v.is_number_integer();
        if (t == "number") return v.is_number();
        throw std::invalid_argument("unknown schema type " + t);
    }

    const json& resolve(const std::string& ref) const {
        const std::string prefix = "#/$defs/";
        if (ref.rfind(prefix, 0) != 0) throw std::invalid_argument("unsupported $ref " + ref);
        return root_.at("$defs").at(ref.substr(prefix.size()));
    }

    bool check(const json& s, const json& v, const std::string& path, std::string& why) const {
        if (s.contains("$ref") && !check(resolve(s["$ref"]), v, path, why)) return false;
        if (s.contains("anyOf")) {
            bool any = false;
            for (const auto& alt : s["anyOf"]) {
                std::string ignored;
                any = any || check(alt, v, path, ignored);
            }
            if (!any) return fail(why, path, "matches no alternative");
        }
        if (s.contains("type")) {
            const auto& t = s["type"];
            bool ok = false;
            if (t.is_string())
                ok = has_type(v, t);
            else
                for (const auto& x : t) ok = ok || has_type(v, x);
            if (!ok) return fail(why, path, "wrong type " + std::string(v.type_name()));
        }
        if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end())
            return fail(why, path, "not in enum: " + v.dump());
        if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>())
            return fail(why, path, "below minimum");
        if (v.is_array() && s.contains("items"))
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!check(s["items"], v[i], path + "[" + std::to_string(i) + "]", why)) return false;
        if (v.is_object()) {
            if (s.contains("required"))
                for (const auto& key : s["required"])
                    if (!v.contains(key)) return fail(why, path, "missing " + key.get<std::string>());
            for (const auto& [key, value] : v.items()) {
                const auto sub = path + "." + key;
                if (s.contains("properties") && s["properties"].contains(key)) {
                    if (!check(s["properties"][key], value, sub, why)) return false;
                } else if (s.contains("additionalProperties")) {
                    const auto& extra = s["additionalProperties"];
                    if (extra.is_boolean()) {
                        if (!extra.get<bool>()) return fail(why, sub, "unexpected key");
                    } else if (!check(extra, value, sub, why)) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    static bool fail(std::string& why, const std::string& path, const std::string& msg) {
        why = path + ": " + msg;
        return false;
    }

    json root_;
};

const SchemaValidator& schema() {
    static const SchemaValidator v = [] {
        std::ifstream in(ADELIC_SCHEMA_PATH);
        REQUIRE(in.good());
        return SchemaValidator(json::parse(in));
    }();
    return v;
}

}  // namespace

TEST_CASE("parse examples") {
    const auto e = parse_expr("R^2 x Qp(2) x ZS", kS2);
    CHECK(e == ModuleExpr(kS2, {{ModuleAtom::real(), 2}, {ModuleAtom::padic_field(2), 1}, {ModuleAtom::free_rank_one(), 1}}));
    CHECK(parse_expr("Z/12", PrimeSet()) ==
          ModuleExpr(PrimeSet(), {{ModuleAtom::cyclic(4), 1}, {ModuleAtom::cyclic(3), 1}}));
    CHECK(parse_expr("Z/12", PrimeSet()).to_string() == "Z/3 x Z/4");
    CHECK(parse_expr("  R ^ 1x Sol^3 ", kS2).to_string() == "R x Sol^3");
    CHECK(parse_expr("RxR", kS2).to_string() == "R^2");
    CHECK(parse_expr("Qd x QSol x Pruf(7) x Zp(5)", kS2).to_string() == "Zp(5) x Pruf(7) x Qd x QSol");
    CHECK(parse_expr("0", kS2).empty());
    // parsing does not validate
    CHECK(parse_expr("Z/4", kS2).to_string() == "Z/4");
}

TEST_CASE("parse errors carry offset and expected set") {
    auto e = parse_error("Qp(4)");
    CHECK(e.offset() == 3);
    CHECK(e.expected() == std::vector<std::string>{"<prime>"});

    e = parse_error("");
    CHECK(e.offset() == 0);
    CHECK(std::find(e.expected().begin(), e.expected().end(), "R") != e.expected().end());

    e = parse_error("R x");
    CHECK(e.offset() == 3);

    e = parse_error("R y");
    CHECK(e.offset() == 2);
    CHECK(std::find(e.expected().begin(), e.expected().end(), "x") != e.expected().end());

    e = parse_error("Z/1");
    CHECK(e.offset() == 2);

    e = parse_error("Qp(5");
    CHECK(e.offset() == 4);
    CHECK(e.expected() == std::vector<std::string>{")"});

    e = parse_error("R^0");
    CHECK(e.offset() == 2);

    CHECK_THROWS_AS(parse_expr("Pruf(1)", kS2), ParseError);
    CHECK_THROWS_AS(parse_expr("R x 0", kS2), ParseError);
}

TEST_CASE("parse and print round-trip on the corpus") {
    for (const auto& e : corpus::all()) {
        const auto text = e.to_string();
        CHECK(parse_expr(text, e.sigma()) == e);
        CHECK(parse_expr(text, e.sigma()).to_string() == text);
    }
}

TEST_CASE("adele expressions") {
    const auto s23 = PrimeSet::finite({2, 3});
    CHECK(eval_adele("1/2 + 1/3", s23) == Adele::diagonal(SRational::make(5, 6, s23)));
    CHECK(eval_adele("-(2 * 3) - 1", s23) == Adele::diagonal(SRational::make(-7, 1, s23)));
    const auto e2 = eval_adele("e(2)", s23);
    CHECK(e2 * e2 == e2);
    CHECK(eval_adele("e(2) + e(3)", s23).finite() == FiniteAdele::one(s23));
    CHECK_THROWS_AS(eval_adele("1/5", s23), Error);
    CHECK_THROWS_AS(eval_adele("e(4)", s23), ParseError);
    CHECK_THROWS_AS(eval_adele("1 +", s23), ParseError);
}

TEST_CASE("JSON reports validate against the schema") {
    std::size_t checked = 0;
    for (const auto& e : corpus::all()) {
        const auto j = json::parse(cli::report_json(e));
        std::string why;
        CHECK_MESSAGE(schema().validate(j, why), e.to_string() << ": " << why);
        CHECK(j["valid"] == true);
        CHECK(j["expr"] == e.to_string());
        ++checked;
    }
    // invalid and all-primes reports too
    for (const auto& text : {"Z/4 x Zp(2)", "Pruf(2)"}) {
        const auto j = json::parse(cli::report_json(parse_expr(text, kS2)));
        std::string why;
        CHECK_MESSAGE(schema().validate(j, why), why);
        CHECK(j["valid"] == false);
        CHECK(j["flags"].is_null());
    }
    for (const auto& text : {"R x Qd^2 x QSol", "Qp(3) x Sol", "R"}) {
        const auto j = json::parse(cli::report_json(parse_expr(text, PrimeSet::all())));
        std::string why;
        CHECK_MESSAGE(schema().validate(j, why), why);
        CHECK(j["qvs"].is_object());
        CHECK(j["first"].is_null());
    }
    // the validator rejects what it should
    std::string why;
    auto bad = json::parse(cli::report_json(parse_expr("R", kS2)));
    bad["flags"]["nss"] = 1;
    CHECK_FALSE(schema().validate(bad, why));
    bad = json::parse(cli::report_json(parse_expr("R", kS2)));
    bad.erase("first");
    CHECK_FALSE(schema().validate(bad, why));
    bad = json::parse(cli::report_json(parse_expr("R", kS2)));
    bad["extra"] = 0;
    CHECK_FALSE(schema().validate(bad, why));
    CHECK(checked > 5000);
}

TEST_CASE("command examples") {
    auto r = run({"classify", "--sigma", "primes:2", "Qp(5)"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("compactly_generated: false") != std::string::npos);
    CHECK(r.out.find("nss: false") != std::string::npos);
    CHECK(r.out.find("lie_type: no") != std::string::npos);

    r = run({"dual", "--sigma", "primes:2,3", "ZS"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "Sol\n");

    r = run({"decompose", "--which", "2", "--sigma", "primes:2", "Pruf(5)"});
    CHECK(r.code == cli::kExitInvalid);
    CHECK(r.err.find("NotCompactlyGenerated(Pruf(5))") != std::string::npos);

    r = run({"decompose", "--sigma", "primes:2,3", "R^2 x Qp(2) x Qp(5) x Zp(7) x ZS^3 x Sol"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("N: Qp(5) x Zp(7) x ZS^3 x Sol") != std::string::npos);
    CHECK(r.out.find("K: Zp(5) x Zp(7) x Sol") != std::string::npos);

    r = run({"decompose", "--which", "q", "--sigma", "primes:all", "R x Qd^2 x QSol"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("I: 2") != std::string::npos);
    CHECK(r.out.find("J: 1") != std::string::npos);

    r = run({"classify", "--json", "--sigma", "primes:2", "R x Sol"});
    CHECK(r.code == cli::kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["flags"]["nss"] == true);
    CHECK(j["lie_type"] == "unknown");
    std::string why;
    CHECK(schema().validate(j, why));
}

TEST_CASE("exit codes") {
    CHECK(run({"classify", "Qp(4)"}).code == cli::kExitParse);
    CHECK(run({"classify", "R x"}).code == cli::kExitParse);
    CHECK(run({"classify", "--sigma", "primes:4", "R"}).code == cli::kExitParse);
    CHECK(run({"frobnicate"}).code == cli::kExitParse);
    CHECK(run({}).code == cli::kExitParse);
    CHECK(run({"decompose", "--which", "7", "R"}).code == cli::kExitParse);

    auto r = run({"classify", "--sigma", "primes:2", "Z/4"});
    CHECK(r.code == cli::kExitInvalid);
    CHECK(r.err.find("Z/4 is not S-torsion-free") != std::string::npos);
    CHECK(run({"dual", "--sigma", "primes:2", "Zp(2)"}).code == cli::kExitInvalid);
    CHECK(run({"decompose", "--which", "3", "--sigma", "primes:2", "Zp(5)"}).code == cli::kExitInvalid);
    CHECK(run({"decompose", "--sigma", "primes:all", "R"}).code == cli::kExitInvalid);
    CHECK(run({"adele", "eval", "1/5", "--sigma", "primes:2"}).code == cli::kExitInvalid);
}

TEST_CASE("arithmetic commands") {
    auto r = run({"adele", "--sigma", "primes:2,3", "eval", "1/2 + 1/3"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("5/6") != std::string::npos);

    r = run({"pair", "--atom", "Qp:2", "--chi", "1/2", "--x", "1"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "1/2 turn\n");

    r = run({"pair", "--atom", "Zp:5", "--chi", "2/25", "--x", "7"});
    CHECK(r.out == "14/25 turn\n");

    r = run({"pair", "--sigma", "primes:2", "--atom", "ZS", "--chi", "1/2", "--x", "3"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "0 turn\n");

    r = run({"profinite", "mod", "8", "-1"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out == "7\n");

    r = run({"profinite", "show", "5"});
    CHECK(r.out.rfind("fact[1,2,0", 0) == 0);

    CHECK(run({"profinite", "mod", "13", "5"}).code == cli::kExitInvalid);
    CHECK(run({"profinite", "twirl", "5"}).code == cli::kExitParse);
    CHECK(run({"pair", "--atom", "Qp:4", "--chi", "1", "--x", "1"}).code == cli::kExitParse);
}
