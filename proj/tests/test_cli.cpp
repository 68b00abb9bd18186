#include "doctest.h"

#include <fstream>
#include <sstream>

#include "abm/cli.hpp"
#include "abm/errors.hpp"
#include "support.hpp"

using namespace abm;
using namespace abm::testing;

namespace {

const std::string kGolden = ABM_GOLDEN_DIR;

std::string slurp(const std::string& name) {
    std::ifstream in(kGolden + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && s.back() == '\n') s.pop_back();
    return s;
}

cli::RunResult run(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
    return cli::run(args, std::move(env));
}

}  // namespace

TEST_CASE("parser examples") {
    const int n = 10;
    CHECK(cli::parse_element("a*b - b*a", n) == power(op_b(n), 2));
    CHECK(cli::parse_element("(a - 1/2 b)^2", n) == op_linear(Rational(1, 2), n) * op_linear(Rational(1, 2), n));
    CHECK(cli::parse_element("2ab^3", n) == Rational(2) * op_a(n) * power(op_b(n), 3));
    CHECK(cli::parse_element("-a + 3", n) == op_scalar(3, n) - op_a(n));
    CHECK(cli::parse_element("b^12", n).is_zero());
    CHECK(cli::print(cli::parse_element("b a", n)) == "ab - b^2");
    CHECK(cli::print(AbOperator(n)) == "0");
}

TEST_CASE("parser errors carry the offset") {
    auto offset = [](std::string_view s) -> long {
        try {
            cli::parse_element(s, 8);
        } catch (const SyntaxError& e) {
            return static_cast<long>(e.offset);
        }
        return -1;
    };
    CHECK(offset("a + (") == 5);
    CHECK(offset("a + c") == 4);
    CHECK(offset("a^") == 2);
    CHECK(offset("(a") == 2);
    CHECK(offset("1/0") == 2);
    CHECK(offset("a )") == 2);
    CHECK(offset("") == 0);
}

TEST_CASE("print then parse is the identity") {
    for (int order : {16, 20}) {
        for (int t = 0; t < 200; ++t) {
            AbOperator x = rand_operator(order, 6, rand_int(0, 8), order - 1);
            const std::string s = cli::print(x);
            CHECK(cli::parse_element(s, order) == x);
            CHECK(cli::print(cli::parse_element(s, order)) == s);
        }
    }
}

TEST_CASE("golden runs") {
    auto r = run({"divide", "--lambda", "1", "--expr", "a^2"});
    CHECK(r.status == 0);
    CHECK(r.output == slurp("divide.out"));
    r = run({"bernstein", "--fresco", kGolden + "/theme.json"});
    CHECK(r.status == 0);
    CHECK(r.output == slurp("bernstein.out"));
    r = run({"filtration", "--module", kGolden + "/xi.json"});
    CHECK(r.status == 0);
    CHECK(r.output == slurp("filtration.out"));
    CHECK(cli::module_to_json(make_xi(Rational(1, 2), 2, 16)) == slurp("xi.json"));
}

TEST_CASE("identical invocations are identical") {
    const std::vector<std::string> args = {"pole-report", "--fresco", kGolden + "/theme.json"};
    CHECK(run(args).output == run(args).output);
}

TEST_CASE("exit codes") {
    CHECK(run({}).status == 2);
    CHECK(run({"nope"}).status == 2);
    CHECK(run({"eval", "--expr", "a + ("}).status == 2);
    CHECK(run({"eval", "--expr", "a + ("}).output ==
          R"({"error":"SyntaxError","message":"unexpected end of input at offset 5","offset":5})");
    CHECK(run({"eval", "--expr", "a", "--order", "1"}).status == 2);
    CHECK(run({"bernstein", "--module", "/nonexistent.json"}).status == 2);
    CHECK(run({"divide", "--expr", "a"}).status == 2);
    auto r = run({"solve", "--module", kGolden + "/xi.json", "--lambda", "1/2"});
    CHECK(r.status == 1);
    CHECK(r.output.find("\"error\":\"Resonance\"") != std::string::npos);
}

TEST_CASE("order selection") {
    // b^5 vanishes at order 4 only.
    CHECK(run({"eval", "--expr", "b^5", "--order", "4"}).output == R"({"expr":"0"})");
    CHECK(run({"eval", "--expr", "b^5"}, "4").output == R"({"expr":"0"})");
    CHECK(run({"eval", "--expr", "b^5", "--order", "8"}, "4").output == R"({"expr":"b^5"})");
    CHECK(run({"eval", "--expr", "b^5"}).output == R"({"expr":"b^5"})");
    CHECK(run({"eval", "--expr", "b"}, "x").status == 2);
    auto r = run({"saturate", "--module", kGolden + "/xi.json", "--order", "20"});
    CHECK(r.status == 0);
    CHECK(r.output.find("\"b_order\":") != std::string::npos);
}

TEST_CASE("schemas round trip") {
    for (int t = 0; t < 10; ++t) {
        FactoredFresco f = rand_fresco(rand_int(1, 4), 12, {Rational(1, 3), Rational(1)});
        FactoredFresco g = cli::fresco_from_json(cli::fresco_to_json(f), 12);
        CHECK(cli::fresco_to_json(g) == cli::fresco_to_json(f));
        ModulePresentation e = fresco_to_module(f).module;
        CHECK(cli::module_from_json(cli::module_to_json(e), e.order()).amat == e.amat);
    }
    CHECK_THROWS_AS(cli::module_from_json("{\"rank\":2,\"amat\":[[[\"0\"]]]}", 8), UsageError);
    CHECK_THROWS_AS(cli::fresco_from_json("{\"factors\":[{\"lambda\":\"x\"}]}", 8), UsageError);
}

TEST_CASE("every verb runs") {
    const std::string xi = kGolden + "/xi.json", theme = kGolden + "/theme.json";
    const std::vector<std::vector<std::string>> cmds = {
        {"eval", "--expr", "a"},
        {"mul", "--expr", "a", "--expr", "b"},
        {"divide", "--fresco", theme, "--expr", "a^3"},
        {"invert", "--expr", "1 + a"},
        {"module-apply", "--module", xi, "--expr", "a - 1/2 b"},
        {"saturate", "--module", xi},
        {"bernstein", "--module", xi},
        {"decompose", "--module", xi},
        {"filtration", "--fresco", theme},
        {"jh", "--fresco", theme},
        {"higher-bernstein", "--fresco", theme},
        {"semisimple", "--fresco", theme},
        {"embed", "--module", xi},
        {"pole-report", "--fresco", theme},
        {"tensor", "--module", xi, "--module", xi},
        {"solve", "--module", xi, "--lambda", "1"},
    };
    for (const auto& c : cmds) {
        INFO(c[0]);
        auto r = run(c, "8");
        CHECK(r.status == 0);
        CHECK(r.output.front() == '{');
    }
    CHECK(run({"mul", "--expr", "a", "--expr", "b"}).output == R"({"product":"ab"})");
    CHECK(run({"semisimple", "--fresco", theme}).output == R"({"semisimple":false})");
    CHECK(run({"filtration", "--module", xi, "--text"}).output == "ranks: [1,1,1]\nd: 3");
}
