#include "substfactor/core.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "substfactor/language.hpp"

namespace substfactor {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("alphabet must be nonempty");
    if (names_.size() > 0xffff) throw std::invalid_argument("alphabet too large");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw std::invalid_argument("empty symbol name");
        if (!index_.emplace(names_[i], static_cast<Letter>(i)).second)
            throw std::invalid_argument("duplicate symbol '" + names_[i] + "'");
    }
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Letter Alphabet::index(std::string_view name) const {
    if (auto l = find(name)) return *l;
    throw std::invalid_argument("unknown symbol '" + std::string(name) + "'");
}

Pattern::Pattern(int dim, int rows, int cols, std::vector<Letter> cells, Point origin)
    : dim_(dim), rows_(rows), cols_(cols), origin_(origin), cells_(std::move(cells)) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("pattern dimension must be 1 or 2");
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative pattern extent");
    if (dim == 1 && rows != 1) throw std::invalid_argument("1D pattern must have a single row");
    if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != cells_.size())
        throw std::invalid_argument("pattern extent does not match cell count");
}

Pattern Pattern::word(std::vector<Letter> letters, std::int64_t origin) {
    const int n = static_cast<int>(letters.size());
    return Pattern(1, 1, n, std::move(letters), Point{0, origin});
}

Pattern Pattern::single(int dim, Letter l, Point origin) { return Pattern(dim, 1, 1, {l}, origin); }

bool Pattern::contains(Point p) const {
    return p.row >= origin_.row && p.row < origin_.row + rows_ && p.col >= origin_.col &&
           p.col < origin_.col + cols_;
}

Letter Pattern::at_global(Point p) const {
    if (!contains(p)) throw std::out_of_range("position outside pattern");
    return at(static_cast<int>(p.row - origin_.row), static_cast<int>(p.col - origin_.col));
}

Pattern Pattern::sub(int r0, int c0, int h, int w) const {
    if (r0 < 0 || c0 < 0 || h < 0 || w < 0 || r0 + h > rows_ || c0 + w > cols_)
        throw std::out_of_range("sub-pattern outside pattern");
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(h) * w);
    for (int r = r0; r < r0 + h; ++r) {
        auto first = cells_.begin() + static_cast<std::ptrdiff_t>(r) * cols_ + c0;
        out.insert(out.end(), first, first + w);
    }
    return Pattern(dim_, h, w, std::move(out), Point{origin_.row + r0, origin_.col + c0});
}

Pattern Pattern::sub_global(Point first, int h, int w) const {
    return sub(static_cast<int>(first.row - origin_.row), static_cast<int>(first.col - origin_.col), h, w);
}

Pattern Pattern::transposed() const {
    if (dim_ != 2) throw std::invalid_argument("transpose needs a 2D pattern");
    std::vector<Letter> out(cells_.size());
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(c) * rows_ + r] = at(r, c);
    return Pattern(2, cols_, rows_, std::move(out), Point{origin_.col, origin_.row});
}

std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.cells_.begin(), a.cells_.end(), b.cells_.begin(),
                                                  b.cells_.end());
}

Substitution::Substitution(Alphabet alphabet, std::vector<Pattern> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
    if (images_.size() != alphabet_.size())
        throw std::invalid_argument("substitution needs exactly one image per letter");
    dim_ = images_.front().dim();
    for (const auto& img : images_) {
        if (img.dim() != dim_) throw std::invalid_argument("images of mixed dimension");
        if (img.empty()) throw std::invalid_argument("substitution image must be nonempty");
        for (Letter l : img.cells())
            if (l >= alphabet_.size()) throw std::invalid_argument("image cell outside alphabet");
    }
    const bool same_shape = std::all_of(images_.begin(), images_.end(), [&](const Pattern& p) {
        return p.rows() == images_.front().rows() && p.cols() == images_.front().cols();
    });
    if (dim_ == 2) {
        if (!same_shape) throw std::invalid_argument("2D substitution must be constant-shape");
        if (images_.front().rows() < 2 || images_.front().cols() < 2)
            throw std::invalid_argument("2D block extents must be at least 2");
        kind_ = SubstitutionKind::constant_shape;
        block_rows_ = images_.front().rows();
        block_cols_ = images_.front().cols();
    } else if (same_shape && images_.front().cols() >= 2) {
        kind_ = SubstitutionKind::constant_shape;
        block_cols_ = images_.front().cols();
    }
    for (auto& img : images_) img.set_origin({});
}

IntMatrix substitution_matrix(const Substitution& sub) {
    const auto n = static_cast<Eigen::Index>(sub.size());
    IntMatrix m = IntMatrix::Zero(n, n);
    for (Eigen::Index b = 0; b < n; ++b)
        for (Letter a : sub.image(static_cast<Letter>(b)).cells()) m(a, b) += 1;
    return m;
}

bool is_primitive(const Substitution& sub) {
    const auto n = static_cast<Eigen::Index>(sub.size());
    const Matrix<int> adj = (substitution_matrix(sub).array() > 0).cast<int>();
    Matrix<int> pw = adj;
    const Eigen::Index bound = (n - 1) * (n - 1) + 1;
    for (Eigen::Index k = 1; k <= bound; ++k) {
        if ((pw.array() > 0).all()) return true;
        pw = ((pw * adj).array() > 0).cast<int>();
    }
    return false;
}

namespace {

void check_letters(const Substitution& sub, const Pattern& p) {
    if (p.dim() != sub.dim()) throw std::invalid_argument("pattern dimension does not match substitution");
    for (Letter l : p.cells())
        if (l >= sub.size()) throw std::invalid_argument("pattern letter outside alphabet");
}

}  // namespace

Pattern apply(const Substitution& sub, const Pattern& p) {
    check_letters(sub, p);
    if (sub.constant_shape()) {
        const int br = sub.block_rows(), bc = sub.block_cols();
        const int rows = p.rows() * br, cols = p.cols() * bc;
        std::vector<Letter> out(static_cast<std::size_t>(rows) * cols);
        for (int r = 0; r < p.rows(); ++r)
            for (int c = 0; c < p.cols(); ++c) {
                const Pattern& img = sub.image(p.at(r, c));
                for (int i = 0; i < br; ++i)
                    std::copy_n(img.cells().begin() + static_cast<std::ptrdiff_t>(i) * bc, bc,
                                out.begin() + static_cast<std::ptrdiff_t>(r * br + i) * cols + c * bc);
            }
        return Pattern(p.dim(), p.dim() == 1 ? 1 : rows, cols, std::move(out),
                       Point{p.origin().row * br, p.origin().col * bc});
    }
    std::vector<Letter> out;
    std::int64_t left = 0;
    for (int i = 0; i < p.cols(); ++i) {
        const auto& img = sub.image(p[i]).cells();
        if (p.origin().col + i < 0) left += static_cast<std::int64_t>(img.size());
        out.insert(out.end(), img.begin(), img.end());
    }
    // Positions right of the origin are not tracked for non-constant lengths.
    const std::int64_t origin = p.origin().col <= 0 ? -left : p.origin().col;
    return Pattern::word(std::move(out), origin);
}

Pattern apply_power(const Substitution& sub, const Pattern& p, int n) {
    if (n < 0) throw std::invalid_argument("negative substitution power");
    Pattern out = p;
    for (int i = 0; i < n; ++i) out = apply(sub, out);
    return out;
}

Substitution power(const Substitution& sub, int n) {
    if (n < 1) throw std::invalid_argument("substitution power must be at least 1");
    std::vector<Pattern> images;
    images.reserve(sub.size());
    for (std::size_t l = 0; l < sub.size(); ++l) images.push_back(supertile(sub, static_cast<Letter>(l), n));
    return Substitution(sub.alphabet(), std::move(images));
}

Pattern supertile(const Substitution& sub, Letter l, int n) {
    if (l >= sub.size()) throw std::invalid_argument("letter outside alphabet");
    return apply_power(sub, Pattern::single(sub.dim(), l), n);
}

std::vector<Letter> corner_map(const Substitution& sub, int corner) {
    std::vector<Letter> out(sub.size());
    for (std::size_t l = 0; l < sub.size(); ++l) {
        const Pattern& img = sub.image(static_cast<Letter>(l));
        const int r = (corner & 2) ? img.rows() - 1 : 0;
        const int c = (corner & 1) ? img.cols() - 1 : 0;
        out[l] = img.at(r, c);
    }
    return out;
}

namespace {

std::vector<Letter> compose(const std::vector<Letter>& outer, const std::vector<Letter>& inner) {
    std::vector<Letter> out(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
    return out;
}

std::vector<Letter> map_power(const std::vector<Letter>& f, int m) {
    std::vector<Letter> out(f.size());
    std::iota(out.begin(), out.end(), Letter{0});
    for (int i = 0; i < m; ++i) out = compose(f, out);
    return out;
}

int corner_count(const Substitution& sub) { return sub.dim() == 1 ? 2 : 4; }

}  // namespace

int seed_period(const Substitution& sub) {
    std::vector<std::vector<Letter>> maps;
    for (int c = 0; c < corner_count(sub); ++c) maps.push_back(corner_map(sub, c));
    constexpr int max_period = 5040;
    for (int m = 1; m <= max_period; ++m) {
        bool ok = true;
        for (const auto& f : maps) {
            const auto fm = map_power(f, m);
            if (compose(fm, fm) != fm) {
                ok = false;
                break;
            }
        }
        if (ok) return m;
    }
    throw std::runtime_error("no seed period found");
}

namespace {

// Corner of the image that must reproduce each seed cell, in seed cell order.
constexpr int seed_corner_1d[2] = {1, 0};
constexpr int seed_corner_2d[4] = {3, 2, 1, 0};

bool recurrent(const Substitution& sub, const Pattern& seed, int period) {
    const int* corners = sub.dim() == 1 ? seed_corner_1d : seed_corner_2d;
    for (std::size_t i = 0; i < seed.size(); ++i) {
        const auto f = map_power(corner_map(sub, corners[i]), period);
        if (f[seed.cells()[i]] != seed.cells()[i]) return false;
    }
    return true;
}

}  // namespace

bool seed_is_recurrent(const Substitution& sub, const Seed& seed) {
    if (seed.period < 1) return false;
    const std::size_t expected = sub.dim() == 1 ? 2 : 4;
    if (seed.letters.size() != expected || seed.letters.dim() != sub.dim()) return false;
    return recurrent(sub, seed.letters, seed.period);
}

std::vector<Seed> enumerate_seeds(const Substitution& sub, int period) {
    if (period < 1) throw std::invalid_argument("seed period must be at least 1");
    if (!is_primitive(sub)) throw std::invalid_argument("seed enumeration needs a primitive substitution");
    const Shape shape = sub.dim() == 1 ? Shape{1, 2} : Shape{2, 2};
    std::vector<Seed> seeds;
    for (const Pattern& p : legal_patterns(sub, shape).members) {
        if (!recurrent(sub, p, period)) continue;
        Pattern placed = p;
        placed.set_origin(sub.dim() == 1 ? Point{0, -1} : Point{-1, -1});
        seeds.push_back(Seed{std::move(placed), period});
    }
    return seeds;
}

Pattern fixed_point_patch(const Substitution& sub, const Seed& seed, int n, int max_level_2d) {
    if (n < 0) throw std::invalid_argument("negative level");
    if (!seed_is_recurrent(sub, seed)) throw std::invalid_argument("seed fails the recurrence condition");
    const int m = seed.period;
    const int level = (n + m - 1) / m * m;
    if (sub.dim() == 2 && level > max_level_2d)
        throw std::invalid_argument("level " + std::to_string(level) + " exceeds the 2D level cap " +
                                    std::to_string(max_level_2d));
    Pattern start = seed.letters;
    start.set_origin(sub.dim() == 1 ? Point{0, -1} : Point{-1, -1});
    return apply_power(sub, start, level);
}

Seed make_seed(const Substitution& sub, const std::vector<std::vector<std::string>>& rows, int period) {
    std::vector<Letter> cells;
    for (const auto& row : rows)
        for (const auto& name : row) cells.push_back(sub.alphabet().index(name));
    if (sub.dim() == 1) {
        if (rows.size() != 1 || cells.size() != 2) throw std::invalid_argument("1D seed needs two letters");
        return Seed{Pattern(1, 1, 2, std::move(cells), Point{0, -1}), period};
    }
    if (rows.size() != 2 || cells.size() != 4) throw std::invalid_argument("2D seed needs a 2x2 block");
    return Seed{Pattern(2, 2, 2, std::move(cells), Point{-1, -1}), period};
}

Eigen::VectorXd letter_frequencies(const Pattern& p, std::size_t alphabet_size) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(alphabet_size));
    for (Letter l : p.cells()) f(l) += 1.0;
    if (!p.empty()) f /= static_cast<double>(p.size());
    return f;
}

Eigen::VectorXd perron_vector(const Substitution& sub) {
    const Eigen::MatrixXd m = substitution_matrix(sub).cast<double>();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < solver.eigenvalues().size(); ++i)
        if (solver.eigenvalues()(i).real() > solver.eigenvalues()(best).real()) best = i;
    Eigen::VectorXd v = solver.eigenvectors().col(best).real();
    v = v.cwiseAbs();
    return v / v.sum();
}

}  // namespace substfactor
