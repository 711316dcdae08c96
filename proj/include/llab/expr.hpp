#pragma once

#include <map>
#include <string>
#include <vector>

#include "llab/eig.hpp"
#include "llab/matrix.hpp"

namespace llab {

// name -> file path. The syntactic position of a name decides how its file
// is read: matrix operand, operator field (inside theta), or map spec
// (first argument of map).
using EvalBindings = std::map<std::string, std::string>;

// Each argument has the form NAME=path.
EvalBindings parse_bindings(const std::vector<std::string>& args);

// Grammar:
//   expr := mean(sharp|nabla|harm, expr, expr)
//         | persp(<function spec>, expr, expr)
//         | theta(<function spec>, NAME, NAME)
//         | map(NAME, expr)
//         | fn(<function spec>, expr)
//         | NAME
// ParseError carries the offending position; evaluation errors (dimensions,
// positivity) propagate from the library operations.
HermitianMatrix eval_expression(const std::string& text,
                                const EvalBindings& bindings,
                                double floor = kDefaultEigFloor);

}  // namespace llab
