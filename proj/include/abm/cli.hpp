#pragma once

// Front end of abcalc: expression parsing and printing, JSON schemas and the
// command dispatcher.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abm/abalg.hpp"
#include "abm/fresco.hpp"
#include "abm/module.hpp"

namespace abm::cli {

// expr := ['-'] term (('+'|'-') term)*; term := factor ('*'? factor)*;
// factor := (rational | 'a' | 'b' | '(' expr ')') ('^' nat)*.
// Throws SyntaxError with the byte offset of the problem.
AbOperator parse_element(std::string_view text, int order);
// Left normal form, terms by a-degree descending then b-degree ascending,
// unit coefficients omitted: "a^2b - 1/2b^3 + 2".
std::string print_terms(const TermMap& terms);
inline std::string print(const AbOperator& x) { return print_terms(x.terms); }

// Schemas; readers resize every series to the given order, padding with zeros.
std::string module_to_json(const ModulePresentation& e);
ModulePresentation module_from_json(std::string_view text, int order);
std::string fresco_to_json(const FactoredFresco& f);
FactoredFresco fresco_from_json(std::string_view text, int order);

struct RunResult {
    int status = 0;  // 0 ok, 1 domain error, 2 usage or parse error
    std::string output;
};
// args excludes the program name; env_order is the value of ABCALC_ORDER.
RunResult run(const std::vector<std::string>& args, std::optional<std::string> env_order = std::nullopt);

}  // namespace abm::cli
