#pragma once

#include <string>
#include <string_view>

#include "substfactor/catalog.hpp"
#include "substfactor/core.hpp"
#include "substfactor/text_format.hpp"

namespace testing_support {

using namespace substfactor;

inline Pattern block(const Substitution& s, std::string_view text) { return parse_block(text, s.alphabet()); }
inline std::string text(const Substitution& s, const Pattern& p) { return format_block(s.alphabet(), p); }

/// Letter of `p` at lattice position `q`.
inline std::string name_at(const Substitution& s, const Pattern& p, Point q) { return s.alphabet().name(p.at_global(q)); }

}  // namespace testing_support
