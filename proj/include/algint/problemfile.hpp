#ifndef ALGINT_PROBLEMFILE_HPP
#define ALGINT_PROBLEMFILE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "decision.hpp"

namespace algint {

// A problem file parsed into library objects.  Declarations keep their names
// so verdict documents can refer back to them.  `problem` is assembled and
// ready for decide() when the file carries a [query] section.
struct ProblemFile {
    std::map<std::string, AlgebraicNumber> constants;
    std::vector<std::pair<std::string, CurvePtr>> curves;
    std::vector<std::pair<std::string, Differential>> forms;
    std::vector<std::pair<std::string, Correspondence>> correspondences;

    bool has_query = false;
    std::string target_name;
    std::vector<std::string> allowed_names;
    bool digits_given = false;
    Problem problem;

    CurvePtr curve(const std::string& name) const;
    const Differential* form(const std::string& name) const;
    const Correspondence* correspondence(const std::string& label) const;
};

// Sections: [field], [curves], [forms], [correspondences], [query].  Any
// failure is a ParseError carrying a 1-based line and column.
ProblemFile parse_problem_file(const std::string& text, FieldTower& tower);

// "EXPR on line", "EXPR on line t", or "EXPR on y^2 = x^3 + 1": one form
// over a curve declared inline, for the scripting subcommands.
Differential parse_inline_form(const std::string& text, FieldTower& tower);

// Just the curve part of the inline grammar: "line", "line t", or an
// equation like "y^2 = x^3 + 1".
CurvePtr parse_inline_curve(const std::string& text);

// Expression evaluators shared with document parsing.  `c` may be null, in
// which case only constants are in scope and the result must be constant.
FnElem parse_fn(const std::string& text, const CurvePtr& c,
                const std::map<std::string, AlgebraicNumber>& constants);
Differential parse_form(const std::string& text, const CurvePtr& c,
                        const std::map<std::string, AlgebraicNumber>& constants);
APoly parse_poly(const std::string& text, const std::string& var,
                 const std::map<std::string, AlgebraicNumber>& constants);
// Relation in the fixed slot names xl, yl, xr, yr.
CorrPoly parse_slot_rel(const std::string& text,
                        const std::map<std::string, AlgebraicNumber>& constants);

} // namespace algint

#endif
