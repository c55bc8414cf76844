#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "substfactor/core.hpp"
#include "substfactor/language.hpp"

namespace substfactor {

/// Parse error with the offending line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Splits a block such as "1 0 / 3 0" or "ab̄" into rows of symbol names.
/// Juxtaposed 1D words are tokenized by greedy longest match against the
/// alphabet.
std::vector<std::vector<std::string>> split_block(std::string_view block, const Alphabet& alphabet);

/// Pattern from block text; 2D when the text contains '/'.
Pattern parse_block(std::string_view block, const Alphabet& alphabet);
std::string format_block(const Alphabet& alphabet, const Pattern& p);

/// Substitution definition file:
///
///     alphabet: s1 s2 ...
///     s -> block
///
/// A 1D block is a juxtaposed word, a 2D block lists rows separated by '/'
/// with cells separated by spaces. '#' starts a comment.
Substitution parse_substitution(std::string_view text);
std::string format_substitution(const Substitution& sub);

/// One pattern per line after a `shape:` header.
std::string format_pattern_set(const Alphabet& alphabet, const PatternSet& set);

/// Symbol names are written juxtaposed in 1D only when each is a single glyph.
bool juxtaposable(const Alphabet& alphabet);

std::string read_file(const std::string& path);

}  // namespace substfactor
