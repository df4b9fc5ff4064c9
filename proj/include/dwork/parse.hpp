#pragma once

#include "dwork/element.hpp"

#include <string>
#include <string_view>

namespace dwork {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := rational | var ['^' nat] | '(' expr ')'
// var    := 'x' nat | 'y' posnat | 'e' posnat
SuperElement parse(std::string_view text, const ContextPtr& ctx);

std::string render(const SuperElement& a);
std::string render_monomial(const VariableContext& ctx, const SuperMonomial& m);

}  // namespace dwork
