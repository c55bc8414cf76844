#include "substfactor/text_format.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace substfactor {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> tokenize_word(std::string_view word, const Alphabet& alphabet) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < word.size()) {
        std::size_t best = 0;
        for (const auto& name : alphabet.names())
            if (name.size() > best && word.substr(pos, name.size()) == name) best = name.size();
        if (best == 0) throw std::invalid_argument("cannot tokenize '" + std::string(word.substr(pos)) + "'");
        out.emplace_back(word.substr(pos, best));
        pos += best;
    }
    return out;
}

// One ASCII character followed only by combining marks (U+0300..U+036F).
bool single_glyph(const std::string& name) {
    if (name.empty() || static_cast<unsigned char>(name[0]) >= 0x80 || name[0] == '-') return false;
    for (std::size_t i = 1; i < name.size(); i += 2) {
        if (i + 1 >= name.size()) return false;
        const auto b0 = static_cast<unsigned char>(name[i]), b1 = static_cast<unsigned char>(name[i + 1]);
        const bool combining = (b0 == 0xCC && b1 >= 0x80) || (b0 == 0xCD && b1 <= 0xAF);
        if (!combining) return false;
    }
    return true;
}

}  // namespace

bool juxtaposable(const Alphabet& alphabet) {
    for (const auto& n : alphabet.names())
        if (!single_glyph(n)) return false;
    return true;
}

std::vector<std::vector<std::string>> split_block(std::string_view block, const Alphabet& alphabet) {
    std::vector<std::vector<std::string>> rows;
    const bool two_d = block.find('/') != std::string_view::npos;
    if (!two_d) {
        const auto t = trim(block);
        if (t.find_first_of(" \t") != std::string_view::npos)
            rows.push_back(split_ws(t));
        else
            rows.push_back(tokenize_word(t, alphabet));
        return rows;
    }
    std::size_t start = 0;
    while (true) {
        const auto slash = block.find('/', start);
        rows.push_back(split_ws(block.substr(start, slash == std::string_view::npos ? block.npos : slash - start)));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
    }
    return rows;
}

Pattern parse_block(std::string_view block, const Alphabet& alphabet) {
    const auto rows = split_block(block, alphabet);
    const bool two_d = block.find('/') != std::string_view::npos;
    std::vector<Letter> cells;
    const std::size_t width = rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != width) throw std::invalid_argument("ragged block rows");
        for (const auto& name : row) cells.push_back(alphabet.index(name));
    }
    if (!two_d) return Pattern::word(std::move(cells));
    return Pattern(2, static_cast<int>(rows.size()), static_cast<int>(width), std::move(cells));
}

std::string format_block(const Alphabet& alphabet, const Pattern& p) {
    std::string out;
    const bool joined = p.dim() == 1 && juxtaposable(alphabet);
    for (int r = 0; r < p.rows(); ++r) {
        if (r > 0) out += " / ";
        for (int c = 0; c < p.cols(); ++c) {
            if (c > 0 && !joined) out += ' ';
            out += alphabet.name(p.at(r, c));
        }
    }
    return out;
}

Substitution parse_substitution(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    std::optional<Alphabet> alphabet;
    std::vector<std::optional<Pattern>> images;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (!alphabet) {
            constexpr std::string_view key = "alphabet:";
            if (line.substr(0, key.size()) != key) throw ParseError(line_no, "expected 'alphabet:' header");
            try {
                alphabet = Alphabet(split_ws(line.substr(key.size())));
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_no, e.what());
            }
            images.resize(alphabet->size());
            continue;
        }
        const auto arrow = line.find("->");
        if (arrow == std::string_view::npos) throw ParseError(line_no, "expected 's -> block'");
        const auto lhs = trim(line.substr(0, arrow));
        try {
            const Letter l = alphabet->index(lhs);
            if (images[l]) throw std::invalid_argument("duplicate rule for '" + std::string(lhs) + "'");
            images[l] = parse_block(line.substr(arrow + 2), *alphabet);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (!alphabet) throw ParseError(line_no, "missing 'alphabet:' header");
    std::vector<Pattern> out;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!images[i]) throw ParseError(line_no, "no rule for '" + alphabet->name(static_cast<Letter>(i)) + "'");
        out.push_back(*images[i]);
    }
    try {
        return Substitution(*alphabet, std::move(out));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

std::string format_substitution(const Substitution& sub) {
    std::string out = "alphabet:";
    for (const auto& n : sub.alphabet().names()) out += " " + n;
    out += "\n";
    for (std::size_t l = 0; l < sub.size(); ++l)
        out += sub.alphabet().name(static_cast<Letter>(l)) + " -> " +
               format_block(sub.alphabet(), sub.image(static_cast<Letter>(l))) + "\n";
    return out;
}

std::string format_pattern_set(const Alphabet& alphabet, const PatternSet& set) {
    std::string out = "shape: " + std::to_string(set.shape.rows) + "x" + std::to_string(set.shape.cols) + "\n";
    out += "count: " + std::to_string(set.size()) + "\n";
    for (const auto& p : set.members) out += format_block(alphabet, p) + "\n";
    return out;
}

std::string to_string(const Alphabet& alphabet, const Pattern& p) { return format_block(alphabet, p); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace substfactor
