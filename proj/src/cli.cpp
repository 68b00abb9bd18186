#include "abm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "abm/errors.hpp"
#include "abm/monodromy.hpp"

namespace abm::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr int kCliDefaultOrder = 16;

class Parser {
public:
    Parser(std::string_view text, int order) : s_(text), n_(order) {}

    AbOperator parse() {
        AbOperator x = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return x;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(i_, msg + " at offset " + std::to_string(i_)); }

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool starts_factor() {
        skip();
        if (i_ >= s_.size()) return false;
        const char c = s_[i_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'a' || c == 'b' || c == '(';
    }

    std::string digits() {
        const std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == start) fail("expected a number");
        return std::string(s_.substr(start, i_ - start));
    }

    AbOperator expr() {
        bool neg = false;
        if (peek('-')) ++i_, neg = true;
        AbOperator x = term();
        if (neg) x = Rational(-1) * x;
        for (;;) {
            if (peek('+')) {
                ++i_;
                x = x + term();
            } else if (peek('-')) {
                ++i_;
                x = x - term();
            } else {
                return x;
            }
        }
    }

    AbOperator term() {
        AbOperator x = factor();
        for (;;) {
            if (peek('*')) {
                ++i_;
                x = x * factor();
            } else if (starts_factor()) {
                x = x * factor();
            } else {
                return x;
            }
        }
    }

    AbOperator factor() {
        AbOperator x = primary();
        while (peek('^')) {
            ++i_;
            skip();
            const std::string e = digits();
            if (e.size() > 6) fail("exponent too large");
            x = power(x, std::stoi(e));
        }
        return x;
    }

    AbOperator primary() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[i_];
        if (c == 'a') return ++i_, op_a(n_);
        if (c == 'b') return ++i_, op_b(n_);
        if (c == '(') {
            ++i_;
            AbOperator x = expr();
            if (!peek(')')) {
                if (i_ >= s_.size()) fail("unexpected end of input");
                fail("expected ')'");
            }
            ++i_;
            return x;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (i_ < s_.size() && s_[i_] == '/') {
                ++i_;
                const std::size_t at = i_;
                std::string den = digits();
                if (std::all_of(den.begin(), den.end(), [](char d) { return d == '0'; })) {
                    i_ = at;
                    fail("zero denominator");
                }
                num += "/" + den;
            }
            return op_scalar(parse_rational(num), n_);
        }
        fail("unknown symbol '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    int n_;
    std::size_t i_ = 0;
};

std::string monomial(int p, int q) {
    std::string m;
    if (p > 0) m += p == 1 ? "a" : "a^" + std::to_string(p);
    if (q > 0) m += q == 1 ? "b" : "b^" + std::to_string(q);
    return m;
}

Json series_json(const TruncSeries& s) {
    int last = s.order() - 1;
    while (last > 0 && s[last] == 0) --last;
    Json a = Json::array();
    for (int j = 0; j <= last && j < s.order(); ++j) a.push_back(to_string(s[j]));
    return a;
}

TruncSeries series_from(const Json& j, int order) {
    if (!j.is_array()) throw UsageError("series must be an array of rational strings");
    TruncSeries s(order);
    for (std::size_t i = 0; i < j.size() && static_cast<int>(i) < order; ++i) {
        if (!j[i].is_string()) throw UsageError("series coefficients must be strings");
        s[static_cast<int>(i)] = parse_rational(j[i].get<std::string>());
    }
    return s;
}

Json vector_json(const SeriesVector& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(series_json(s));
    return a;
}

Json matrix_json(const SeriesMatrix& m) {
    Json a = Json::array();
    for (int i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
    return a;
}

Json module_json(const ModulePresentation& e) {
    Json j;
    j["rank"] = e.rank();
    j["b_order"] = e.order();
    j["amat"] = matrix_json(e.amat);
    return j;
}

Json roots_json(const BernsteinPolynomial& b) {
    Json a = Json::array();
    for (const auto& r : b.roots) a.push_back(to_string(r));
    return a;
}

Json rationals_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(to_string(r));
    return a;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw UsageError(std::string("malformed JSON: ") + ex.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rational rational_arg(const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const InvalidArgument& ex) {
        throw UsageError(std::string("bad rational: ") + ex.what());
    }
}

struct Options {
    std::string verb;
    int order = kCliDefaultOrder;
    std::vector<std::string> exprs, modules;
    std::string lambda, fresco;
    bool text = false;
};

const std::vector<std::string> kVerbs = {"eval",     "mul",       "divide",          "invert",     "module-apply", "saturate",
                                         "bernstein", "decompose", "filtration",      "jh",         "higher-bernstein",
                                         "semisimple", "embed",    "pole-report",     "tensor",     "solve"};

// Inputs are read and validated before any computation, so that malformed
// input is a usage error and everything after it a domain error.
struct Inputs {
    std::vector<AbOperator> exprs;
    std::vector<ModulePresentation> modules;
    std::optional<FactoredFresco> fresco;
    std::optional<Rational> lambda;
};

Inputs load(const Options& o) {
    Inputs in;
    for (const auto& e : o.exprs) in.exprs.push_back(parse_element(e, o.order));
    for (const auto& m : o.modules) in.modules.push_back(module_from_json(read_file(m), o.order));
    if (!o.fresco.empty()) in.fresco = fresco_from_json(read_file(o.fresco), o.order);
    if (!o.lambda.empty()) in.lambda = rational_arg(o.lambda);
    return in;
}

void need(bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
}

Json filtration_json(const FiltrationResult& f) {
    Json j;
    j["ranks"] = f.ranks;
    j["d"] = f.d;
    return j;
}

Json execute(const std::string& verb, const Inputs& in) {
    Json out;
    const auto& ex = in.exprs;
    const auto& ms = in.modules;
    if (verb == "eval") {
        need(ex.size() == 1, "eval needs one --expr");
        out["expr"] = print(ex[0]);
    } else if (verb == "mul") {
        need(ex.size() == 2, "mul needs two --expr");
        out["product"] = print(ex[0] * ex[1]);
    } else if (verb == "divide") {
        need(ex.size() == 1, "divide needs one --expr");
        need(in.lambda.has_value() != in.fresco.has_value(), "divide needs either --lambda or --fresco");
        if (in.lambda) {
            LinearDivision d = divide_linear(ex[0], *in.lambda);
            out["Q"] = print(d.Q);
            out["R"] = print(op_series(d.R));
        } else {
            FactoredDivision d = divide_factored(ex[0], in.fresco->factors());
            out["Q"] = print(d.Q);
            out["R"] = print(d.R);
        }
    } else if (verb == "invert") {
        need(ex.size() == 1, "invert needs one --expr");
        GradedOperator g{ex[0].b_order, {}};  // total order N
        for (const auto& [pq, c] : ex[0].terms) g.add(pq.first, pq.second, c);
        out["inverse"] = print_terms(invert_graded(g).terms);
    } else if (verb == "module-apply") {
        need(ms.size() == 1 && ex.size() == 1, "module-apply needs --module and --expr");
        Json imgs = Json::array();
        for (int i = 0; i < ms[0].rank(); ++i)
            imgs.push_back(vector_json(apply_op(ms[0], ex[0], basis_vector(ms[0].rank(), i, ms[0].order()))));
        out["images"] = imgs;
    } else if (verb == "saturate") {
        need(ms.size() == 1, "saturate needs --module");
        Saturation s = saturate(ms[0]);
        out["module"] = module_json(s.sharp);
        out["inclusion"] = matrix_json(s.inclusion);
        out["codim"] = s.codim;
    } else if (verb == "bernstein") {
        need(ms.size() + (in.fresco ? 1 : 0) == 1, "bernstein needs --module or --fresco");
        out["roots"] = roots_json(in.fresco ? bernstein_fresco(*in.fresco) : bernstein_min(ms[0]));
    } else if (verb == "decompose") {
        need(ms.size() == 1, "decompose needs --module");
        PrimitiveDecomposition d = decompose_primitive(ms[0]);
        Json parts = Json::array();
        for (const auto& p : d.parts) {
            Json jp;
            jp["class"] = to_string(p.cls);
            jp["offset"] = p.offset;
            jp["module"] = module_json(p.module);
            parts.push_back(jp);
        }
        out["parts"] = parts;
        out["basis"] = matrix_json(d.T);
    } else if (verb == "filtration") {
        need(ms.size() + (in.fresco ? 1 : 0) == 1, "filtration needs --module or --fresco");
        out = filtration_json(semisimple_filtration(in.fresco ? fresco_to_module(*in.fresco).module : ms[0]));
    } else if (verb == "jh") {
        need(in.fresco.has_value(), "jh needs --fresco");
        Json cls = Json::array();
        for (const auto& p : primitive_parts(*in.fresco)) {
            CharSequence c = principal_jh(p.quotient);
            Json jc;
            jc["class"] = to_string(p.cls);
            jc["values"] = rationals_json(c.values);
            jc["principal"] = c.principal;
            cls.push_back(jc);
        }
        out["classes"] = cls;
    } else if (verb == "higher-bernstein") {
        need(in.fresco.has_value(), "higher-bernstein needs --fresco");
        Json bs = Json::array();
        for (const auto& b : higher_bernstein(*in.fresco)) bs.push_back(roots_json(b));
        out["B"] = bs;
    } else if (verb == "semisimple") {
        need(ms.size() + (in.fresco ? 1 : 0) == 1, "semisimple needs --module or --fresco");
        out["semisimple"] = in.fresco ? is_semisimple_fresco(*in.fresco) : nilpotent_order(ms[0]) == 1;
    } else if (verb == "embed") {
        need(ms.size() == 1, "embed needs --module");
        XiEmbedding f = embed_in_xi(ms[0]);
        out["depth"] = f.depth;
        out["classes"] = rationals_json(f.copies);
        out["target"] = module_json(f.target);
        out["map"] = matrix_json(f.map);
    } else if (verb == "pole-report") {
        need(in.fresco.has_value(), "pole-report needs --fresco");
        out["hypothesis"] = "prediction for an isolated singularity, per class; no integral evaluated";
        Json cls = Json::array();
        for (const auto& c : pole_report(*in.fresco).classes) {
            Json jc;
            jc["class"] = to_string(c.cls);
            jc["d"] = c.d;
            Json hs = Json::array();
            for (const auto& b : c.higher) hs.push_back(roots_json(b));
            jc["B"] = hs;
            jc["top_pole"] = to_string(c.top_pole);
            jc["first_pole"] = to_string(c.first_pole);
            Json cand = Json::array();
            for (const auto& v : c.candidates) cand.push_back(rationals_json(v));
            jc["candidates"] = cand;
            cls.push_back(jc);
        }
        out["classes"] = cls;
    } else if (verb == "tensor") {
        need(ms.size() == 2, "tensor needs two --module");
        out = module_json(tensor(ms[0], ms[1]));
    } else if (verb == "solve") {
        need(ms.size() == 1 && in.lambda.has_value(), "solve needs --module and --lambda");
        Json sols = Json::array();
        for (int i = 0; i < ms[0].rank(); ++i)
            sols.push_back(vector_json(solve_shifted(ms[0], *in.lambda, basis_vector(ms[0].rank(), i, ms[0].order()))));
        out["solutions"] = sols;
    }
    return out;
}

std::string render(const Json& j, bool text) {
    if (!text) return j.dump();
    std::string s;
    for (auto it = j.begin(); it != j.end(); ++it)
        s += it.key() + ": " + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    if (!s.empty()) s.pop_back();
    return s;
}

RunResult error_result(int status, const std::string& kind, const std::string& msg, std::optional<std::size_t> offset = {}) {
    Json j;
    j["error"] = kind;
    j["message"] = msg;
    if (offset) j["offset"] = *offset;
    return {status, j.dump()};
}

}  // namespace

AbOperator parse_element(std::string_view text, int order) { return Parser(text, order).parse(); }

std::string print_terms(const TermMap& terms) {
    std::vector<std::pair<Exponents, Rational>> v(terms.begin(), terms.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        return x.first.first != y.first.first ? x.first.first > y.first.first : x.first.second < y.first.second;
    });
    std::string out;
    for (const auto& [pq, c] : v) {
        if (c == 0) continue;
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        const std::string m = monomial(pq.first, pq.second);
        const std::string coef = m.empty() ? to_string(mag) : (mag == 1 ? "" : to_string(mag));
        if (out.empty())
            out = (neg ? "-" : "") + coef + m;
        else
            out += (neg ? " - " : " + ") + coef + m;
    }
    return out.empty() ? "0" : out;
}

std::string module_to_json(const ModulePresentation& e) { return module_json(e).dump(); }

ModulePresentation module_from_json(std::string_view text, int order) {
    Json j = parse_json(text);
    try {
        const int k = j.at("rank").get<int>();
        const Json& a = j.at("amat");
        if (k < 1 || !a.is_array() || static_cast<int>(a.size()) != k) throw UsageError("module: amat must be rank x rank");
        SeriesMatrix m(k, k, order);
        for (int i = 0; i < k; ++i) {
            if (!a[i].is_array() || static_cast<int>(a[i].size()) != k) throw UsageError("module: amat must be rank x rank");
            for (int l = 0; l < k; ++l) m(i, l) = series_from(a[i][l], order);
        }
        return ModulePresentation(m);
    } catch (const nlohmann::json::exception& ex) {
        throw UsageError(std::string("module: ") + ex.what());
    } catch (const InvalidArgument& ex) {
        throw UsageError(std::string("module: ") + ex.what());
    }
}

std::string fresco_to_json(const FactoredFresco& f) {
    Json j;
    j["b_order"] = f.order();
    Json fs = Json::array();
    for (const auto& lf : f.factors()) {
        Json jf;
        jf["lambda"] = to_string(lf.lambda);
        jf["T"] = series_json(lf.T);
        fs.push_back(jf);
    }
    j["factors"] = fs;
    return j.dump();
}

FactoredFresco fresco_from_json(std::string_view text, int order) {
    Json j = parse_json(text);
    std::vector<LinearFactor> f;
    try {
        for (const auto& jf : j.at("factors")) {
            TruncSeries t = jf.contains("T") ? series_from(jf.at("T"), order) : TruncSeries::constant(1, order);
            f.push_back({parse_rational(jf.at("lambda").get<std::string>()), t});
        }
    } catch (const nlohmann::json::exception& ex) {
        throw UsageError(std::string("fresco: ") + ex.what());
    } catch (const InvalidArgument& ex) {
        throw UsageError(std::string("fresco: ") + ex.what());
    }
    if (f.empty()) throw UsageError("fresco: no factors");
    return FactoredFresco(std::move(f));
}

RunResult run(const std::vector<std::string>& args, std::optional<std::string> env_order) {
    CLI::App app{"Exact computations with (a,b)-modules and frescos", "abcalc"};
    Options o;
    std::optional<int> order;
    bool json = false;
    app.add_option("verb", o.verb, "Operation")->required()->check(CLI::IsMember(kVerbs));
    app.add_option("--order", order, "b-adic truncation order (default 16, or ABCALC_ORDER)");
    app.add_option("--expr", o.exprs, "Element of B[a], e.g. \"(a - 1/2 b)^2\"");
    app.add_option("--lambda", o.lambda, "Rational parameter");
    app.add_option("--module", o.modules, "Module JSON file");
    app.add_option("--fresco", o.fresco, "Fresco JSON file");
    app.add_flag("--json", json, "JSON output (default)");
    app.add_flag("--text", o.text, "key: value output");
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        return {0, app.help()};
    } catch (const CLI::ParseError& ex) {
        return error_result(2, "UsageError", ex.what());
    }
    if (json && o.text) return error_result(2, "UsageError", "--json and --text are exclusive");
    if (order) {
        o.order = *order;
    } else if (env_order && !env_order->empty()) {
        try {
            std::size_t used = 0;
            o.order = std::stoi(*env_order, &used);
            if (used != env_order->size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            return error_result(2, "UsageError", "ABCALC_ORDER is not an integer");
        }
    }
    if (o.order < 2) return error_result(2, "UsageError", "order must be at least 2");

    Inputs in;
    try {
        in = load(o);
    } catch (const SyntaxError& ex) {
        return error_result(2, ex.kind(), ex.what(), ex.offset);
    } catch (const UsageError& ex) {
        return error_result(2, ex.kind(), ex.what());
    } catch (const Error& ex) {
        return error_result(1, ex.kind(), ex.what());
    }
    try {
        return {0, render(execute(o.verb, in), o.text)};
    } catch (const UsageError& ex) {
        return error_result(2, ex.kind(), ex.what());
    } catch (const Error& ex) {
        return error_result(1, ex.kind(), ex.what());
    } catch (const std::logic_error& ex) {
        return error_result(1, "InternalError", ex.what());
    }
}

}  // namespace abm::cli
