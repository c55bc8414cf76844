#pragma once

#include <cstdint>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace substfactor {

/// Index of a symbol in its alphabet.
using Letter = std::uint16_t;

/// Cell coordinate on Z^d. For 1D data only `col` is used and `row` is 0.
struct Point {
    std::int64_t row = 0;
    std::int64_t col = 0;
    friend auto operator<=>(const Point&, const Point&) = default;
};

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using IntMatrix = Matrix<std::int64_t>;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Letter l) const { return names_.at(l); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Letter> find(std::string_view name) const;
    Letter index(std::string_view name) const;  ///< throws std::invalid_argument

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, Letter, std::less<>> index_;
};

/// Finite rectangular array of letters anchored on Z^d.
///
/// Storage is row-major with the row index increasing downward. A 1D pattern
/// is a single row. `origin` is the lattice position of the cell stored at
/// local index (0, 0); equality and ordering ignore it and compare shape and
/// contents only.
class Pattern {
public:
    Pattern() = default;
    Pattern(int dim, int rows, int cols, std::vector<Letter> cells, Point origin = {});

    static Pattern word(std::vector<Letter> letters, std::int64_t origin = 0);
    static Pattern single(int dim, Letter l, Point origin = {});

    int dim() const { return dim_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    Point origin() const { return origin_; }
    void set_origin(Point p) { origin_ = p; }

    Letter at(int r, int c) const { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }
    Letter& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }
    Letter operator[](int i) const { return cells_[i]; }
    const std::vector<Letter>& cells() const { return cells_; }

    bool contains(Point p) const;
    Letter at_global(Point p) const;

    /// Sub-block in local coordinates; the result keeps lattice positions.
    Pattern sub(int r0, int c0, int h, int w) const;
    /// Sub-block given by lattice coordinates of its first cell.
    Pattern sub_global(Point first, int h, int w) const;

    Pattern transposed() const;

    friend bool operator==(const Pattern& a, const Pattern& b) {
        return a.dim_ == b.dim_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
    }
    friend std::strong_ordering operator<=>(const Pattern& a, const Pattern& b);

private:
    int dim_ = 1;
    int rows_ = 0;
    int cols_ = 0;
    Point origin_{};
    std::vector<Letter> cells_;
};

enum class SubstitutionKind { general_1d, constant_shape };

/// A 1D morphism or a constant-shape block substitution on Z^2.
///
/// A 1D morphism whose images all share one length L >= 2 is classified as
/// constant-shape with block extent 1 x L.
class Substitution {
public:
    Substitution() = default;
    Substitution(Alphabet alphabet, std::vector<Pattern> images);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t size() const { return alphabet_.size(); }
    int dim() const { return dim_; }
    SubstitutionKind kind() const { return kind_; }
    bool constant_shape() const { return kind_ == SubstitutionKind::constant_shape; }
    int block_rows() const { return block_rows_; }
    int block_cols() const { return block_cols_; }
    const Pattern& image(Letter l) const { return images_.at(l); }
    const std::vector<Pattern>& images() const { return images_; }

    friend bool operator==(const Substitution& a, const Substitution& b) {
        return a.alphabet_ == b.alphabet_ && a.images_ == b.images_;
    }

private:
    Alphabet alphabet_;
    std::vector<Pattern> images_;
    int dim_ = 1;
    SubstitutionKind kind_ = SubstitutionKind::general_1d;
    int block_rows_ = 1;
    int block_cols_ = 1;
};

/// Central legal configuration generating a fixed point of the period-fold
/// substitution. 1D: pattern b|a with origin -1. 2D: 2x2 block with origin
/// (-1,-1), so the central vertex is the lattice origin.
struct Seed {
    Pattern letters;
    int period = 1;

    int dim() const { return letters.dim(); }
};

IntMatrix substitution_matrix(const Substitution& sub);
bool is_primitive(const Substitution& sub);

Pattern apply(const Substitution& sub, const Pattern& p);
Pattern apply_power(const Substitution& sub, const Pattern& p, int n);
Substitution power(const Substitution& sub, int n);

/// Level-n supertile of a single letter.
Pattern supertile(const Substitution& sub, Letter l, int n);

/// Letter sitting in the corner cell of the image of each letter. Corners are
/// indexed 0 = top-left, 1 = top-right, 2 = bottom-left, 3 = bottom-right; in
/// 1D only 0 (first letter) and 1 (last letter) are meaningful.
std::vector<Letter> corner_map(const Substitution& sub, int corner);

/// Smallest m such that every corner map of the m-fold substitution is
/// idempotent; every seed orbit then settles within period m.
int seed_period(const Substitution& sub);

std::vector<Seed> enumerate_seeds(const Substitution& sub, int period);
bool seed_is_recurrent(const Substitution& sub, const Seed& seed);

inline constexpr int default_max_level_2d = 8;

/// Central patch of the fixed point grown from `seed`, of extent 2 L^n per axis
/// (n rounded up to a multiple of the seed period).
Pattern fixed_point_patch(const Substitution& sub, const Seed& seed, int n,
                          int max_level_2d = default_max_level_2d);

/// Seed built from a legal 1D pair or 2D block given by letter names.
Seed make_seed(const Substitution& sub, const std::vector<std::vector<std::string>>& rows, int period);

/// Frequency vector of letters in a pattern.
Eigen::VectorXd letter_frequencies(const Pattern& p, std::size_t alphabet_size);
/// Normalised Perron eigenvector of the substitution matrix.
Eigen::VectorXd perron_vector(const Substitution& sub);

std::string to_string(const Alphabet& alphabet, const Pattern& p);

}  // namespace substfactor
