#include "substfactor/appcomplex.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "substfactor/language.hpp"

namespace substfactor {

namespace {

BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

Pattern plain(const Pattern& p) {
    Pattern q = p;
    q.set_origin({});
    return q;
}

std::vector<Pattern> legal_list(const Substitution& sub, int rows, int cols) {
    const auto set = legal_patterns(sub, Shape{rows, cols});
    std::vector<Pattern> out;
    for (const auto& p : set.members) out.push_back(plain(p));
    return out;
}

std::string describe(const Pattern& p) {
    std::ostringstream s;
    for (int r = 0; r < p.rows(); ++r) {
        if (r) s << " / ";
        for (int c = 0; c < p.cols(); ++c) s << (c ? " " : "") << p.at(r, c);
    }
    return s.str();
}

BigMatrix zeros(std::size_t rows, std::size_t cols) {
    return BigMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

BigInt mod(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

// Invariant factors (> 1) of (span(g) + D Z^t) / D Z^t inside Z^t / D Z^t.
std::vector<BigInt> subgroup_invariants(const BigMatrix& g, const std::vector<BigInt>& d) {
    const auto t = static_cast<Eigen::Index>(d.size());
    if (t == 0) return {};
    BigMatrix a = zeros(d.size(), static_cast<std::size_t>(g.cols()) + d.size());
    a.leftCols(g.cols()) = g;
    for (Eigen::Index i = 0; i < t; ++i) a(i, g.cols() + i) = d[static_cast<std::size_t>(i)];
    const auto f = smith_normal_form(a);
    // Basis of the lattice: columns of p_inv * diag(s); coordinates of D in it.
    BigMatrix c = zeros(d.size(), d.size());
    for (Eigen::Index i = 0; i < t; ++i)
        for (Eigen::Index j = 0; j < t; ++j) c(i, j) = f.p(i, j) * d[static_cast<std::size_t>(j)] / f.d(i, i);
    std::vector<BigInt> out;
    for (const auto& x : smith_normal_form(c).diagonal())
        if (x > 1) out.push_back(x);
    return out;
}

BigInt product(const std::vector<BigInt>& v) {
    BigInt p = 1;
    for (const auto& x : v) p *= x;
    return p;
}

}  // namespace

std::size_t CWApproximant::index(int k, const Pattern& p) const {
    const auto& list = cells.at(static_cast<std::size_t>(k));
    auto first = list.begin(), last = list.end();
    if (d == 2 && k == 1) {
        if (p.rows() == 2 * radius)
            last = first + static_cast<std::ptrdiff_t>(horizontal_edges);
        else
            first += static_cast<std::ptrdiff_t>(horizontal_edges);
    }
    const auto it = std::lower_bound(first, last, p);
    if (it == last || !(*it == p)) throw std::out_of_range("no " + std::to_string(k) + "-cell with collar " + describe(p));
    return static_cast<std::size_t>(it - list.begin());
}

CWApproximant build_approximant(const Substitution& sub, int radius) {
    if (!sub.constant_shape()) throw std::invalid_argument("approximant needs a constant-shape substitution");
    if (!is_primitive(sub)) throw std::invalid_argument("approximant needs a primitive substitution");
    if (radius < 1) throw std::invalid_argument("collar radius must be at least 1");
    const int r = radius, n = 2 * radius;
    CWApproximant cw;
    cw.d = sub.dim();
    cw.radius = r;
    if (cw.d == 1) {
        cw.cells = {legal_list(sub, 1, n), legal_list(sub, 1, n + 1)};
        cw.boundary = {zeros(0, cw.count(0)), zeros(cw.count(0), cw.count(1))};
        for (std::size_t e = 0; e < cw.count(1); ++e) {
            const Pattern& p = cw.cells[1][e];
            cw.boundary[1](static_cast<Eigen::Index>(cw.index(0, plain(p.sub(0, 1, 1, n)))), static_cast<Eigen::Index>(e)) += 1;
            cw.boundary[1](static_cast<Eigen::Index>(cw.index(0, plain(p.sub(0, 0, 1, n)))), static_cast<Eigen::Index>(e)) -= 1;
        }
        return cw;
    }
    auto horizontal = legal_list(sub, n, n + 1);
    auto vertical = legal_list(sub, n + 1, n);
    cw.horizontal_edges = horizontal.size();
    horizontal.insert(horizontal.end(), vertical.begin(), vertical.end());
    cw.cells = {legal_list(sub, n, n), std::move(horizontal), legal_list(sub, n + 1, n + 1)};
    cw.boundary = {zeros(0, cw.count(0)), zeros(cw.count(0), cw.count(1)), zeros(cw.count(1), cw.count(2))};
    auto add = [&](int k, std::size_t cell, const Pattern& face, int sign) {
        cw.boundary[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(cw.index(k - 1, plain(face))), static_cast<Eigen::Index>(cell)) += sign;
    };
    for (std::size_t e = 0; e < cw.count(1); ++e) {
        const Pattern& p = cw.cells[1][e];
        if (e < cw.horizontal_edges) {
            add(1, e, p.sub(0, 1, n, n), +1);  // right endpoint
            add(1, e, p.sub(0, 0, n, n), -1);  // left endpoint
        } else {
            add(1, e, p.sub(0, 0, n, n), +1);  // upper endpoint
            add(1, e, p.sub(1, 0, n, n), -1);  // lower endpoint
        }
    }
    for (std::size_t f = 0; f < cw.count(2); ++f) {
        const Pattern& p = cw.cells[2][f];
        add(2, f, p.sub(1, 0, n, n + 1), +1);  // bottom
        add(2, f, p.sub(0, 1, n + 1, n), +1);  // right
        add(2, f, p.sub(0, 0, n, n + 1), -1);  // top
        add(2, f, p.sub(0, 0, n + 1, n), -1);  // left
    }
    return cw;
}

CochainAction substitution_action(const Substitution& sub, const CWApproximant& cw) {
    const int r = cw.radius, n = 2 * r;
    const int lr = sub.block_rows(), lc = sub.block_cols();
    CochainAction out;
    for (int k = 0; k <= cw.d; ++k) out.chain.push_back(zeros(cw.count(k), cw.count(k)));
    auto record = [&](int k, std::size_t source, const Pattern& image) {
        std::size_t target;
        try {
            target = cw.index(k, plain(image));
        } catch (const std::out_of_range&) {
            throw std::runtime_error("substituted collar of " + std::to_string(k) + "-cell " + describe(cw.cells[static_cast<std::size_t>(k)][source]) +
                                     " is not a cell: " + describe(image));
        }
        out.chain[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(source)) += 1;
    };
    if (cw.d == 1) {
        for (std::size_t v = 0; v < cw.count(0); ++v) record(0, v, apply(sub, cw.cells[0][v]).sub(0, r * lc - r, 1, n));
        for (std::size_t e = 0; e < cw.count(1); ++e) {
            const Pattern img = apply(sub, cw.cells[1][e]);
            for (int i = 0; i < lc; ++i) record(1, e, img.sub(0, r * lc + i - r, 1, n + 1));
        }
    } else {
        for (std::size_t v = 0; v < cw.count(0); ++v) record(0, v, apply(sub, cw.cells[0][v]).sub(r * lr - r, r * lc - r, n, n));
        for (std::size_t e = 0; e < cw.count(1); ++e) {
            const Pattern img = apply(sub, cw.cells[1][e]);
            if (e < cw.horizontal_edges)
                for (int j = 0; j < lc; ++j) record(1, e, img.sub(r * lr - r, r * lc + j - r, n, n + 1));
            else
                for (int i = 0; i < lr; ++i) record(1, e, img.sub(r * lr + i - r, r * lc - r, n + 1, n));
        }
        for (std::size_t f = 0; f < cw.count(2); ++f) {
            const Pattern img = apply(sub, cw.cells[2][f]);
            for (int i = 0; i < lr; ++i)
                for (int j = 0; j < lc; ++j) record(2, f, img.sub(r * lr + i - r, r * lc + j - r, n + 1, n + 1));
        }
    }
    for (const auto& s : out.chain) out.cochain.push_back(s.transpose());
    return out;
}

ComplexCheck check_complex(const CWApproximant& cw, const CochainAction* action) {
    ComplexCheck out;
    for (int k = 2; k <= cw.d; ++k) {
        const BigMatrix dd = cw.boundary[static_cast<std::size_t>(k - 1)] * cw.boundary[static_cast<std::size_t>(k)];
        for (Eigen::Index i = 0; i < dd.rows() && out.boundary_squared_zero; ++i)
            for (Eigen::Index j = 0; j < dd.cols(); ++j)
                if (dd(i, j) != 0) {
                    out.boundary_squared_zero = false;
                    out.witness = "boundary squared nonzero in degree " + std::to_string(k) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                    break;
                }
    }
    if (!action) return out;
    for (int k = 1; k <= cw.d; ++k) {
        const auto& b = cw.boundary[static_cast<std::size_t>(k)];
        const BigMatrix lhs = b * action->chain[static_cast<std::size_t>(k)];
        const BigMatrix rhs = action->chain[static_cast<std::size_t>(k - 1)] * b;
        for (Eigen::Index i = 0; i < lhs.rows() && out.chain_map; ++i)
            for (Eigen::Index j = 0; j < lhs.cols(); ++j)
                if (lhs(i, j) != rhs(i, j)) {
                    out.chain_map = false;
                    if (out.witness.empty())
                        out.witness = "chain map fails in degree " + std::to_string(k) + " on cell " +
                                      describe(cw.cells[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
                    break;
                }
    }
    return out;
}

void AbelianInvariants::normalize() {
    std::map<BigInt, int> merged;
    for (const auto& [n, m] : localized) {
        if (big_abs(n) == 1)
            free_rank += m;
        else if (m > 0)
            merged[big_abs(n)] += m;
    }
    localized.clear();
    for (auto it = merged.rbegin(); it != merged.rend(); ++it) localized.emplace_back(it->first, it->second);
    std::erase_if(torsion, [](const BigInt& t) { return t < 2; });
    std::sort(torsion.begin(), torsion.end());
}

std::string format_invariants(const AbelianInvariants& g) {
    std::vector<std::string> parts;
    auto power = [](std::string base, int m) { return m == 1 ? base : base + "^" + std::to_string(m); };
    for (const auto& [n, m] : g.localized) parts.push_back(power("Z[1/" + n.str() + "]", m));
    if (g.free_rank > 0) parts.push_back(power("Z", g.free_rank));
    std::map<BigInt, int> torsion;
    for (const auto& t : g.torsion) ++torsion[t];
    for (const auto& [t, m] : torsion) parts.push_back(power("Z_" + t.str(), m));
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
}

AbelianInvariants parse_invariants(std::string_view text) {
    AbelianInvariants g;
    static const std::regex term(R"(\s*(?:Z\[1/(\d+)\]|Z_(\d+)|(Z)|(0))(?:\^(\d+))?\s*)");
    std::string s(text);
    std::size_t pos = 0;
    while (true) {
        const std::size_t plus = s.find('+', pos);
        const std::string piece = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        std::smatch m;
        if (!std::regex_match(piece, m, term)) throw std::invalid_argument("cannot parse group term '" + piece + "'");
        const int mult = m[5].matched ? std::stoi(m[5]) : 1;
        if (m[1].matched)
            g.localized.emplace_back(BigInt(m[1].str()), mult);
        else if (m[2].matched)
            for (int i = 0; i < mult; ++i) g.torsion.emplace_back(m[2].str());
        else if (m[3].matched)
            g.free_rank += mult;
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    g.normalize();
    return g;
}

AbelianInvariants CohomologyGroup::invariants() const {
    AbelianInvariants g;
    g.free_rank = free_rank;
    g.torsion = torsion_orders;
    g.normalize();
    return g;
}

std::vector<CohomologyGroup> cohomology_groups(const CWApproximant& cw, const CochainAction* action) {
    std::vector<CohomologyGroup> out;
    for (int k = 0; k <= cw.d; ++k) {
        const std::size_t nk = cw.count(k);
        // delta_k : C^k -> C^{k+1} and delta_{k-1} : C^{k-1} -> C^k.
        const BigMatrix delta = k < cw.d ? BigMatrix(cw.boundary[static_cast<std::size_t>(k + 1)].transpose()) : zeros(0, nk);
        const BigMatrix prev = k > 0 ? BigMatrix(cw.boundary[static_cast<std::size_t>(k)].transpose()) : zeros(nk, 0);
        const auto f = smith_normal_form(delta);
        const Eigen::Index kernel_dim = static_cast<Eigen::Index>(nk) - f.rank;
        const BigMatrix kernel = f.q.rightCols(kernel_dim);
        const BigMatrix x = BigMatrix(f.q_inv * prev).bottomRows(kernel_dim);
        const auto g = smith_normal_form(x);
        CohomologyGroup h;
        h.degree = k;
        h.free_rank = static_cast<int>(kernel_dim - g.rank);
        std::vector<Eigen::Index> tors;
        for (Eigen::Index i = 0; i < g.rank; ++i)
            if (g.d(i, i) > 1) {
                tors.push_back(i);
                h.torsion_orders.push_back(g.d(i, i));
            }
        if (action) {
            const BigMatrix& a = action->cochain[static_cast<std::size_t>(k)];
            const BigMatrix on_kernel = BigMatrix(f.q_inv * a * kernel).bottomRows(kernel_dim);
            const BigMatrix m = g.p * on_kernel * g.p_inv;
            h.free_action = m.bottomRightCorner(h.free_rank, h.free_rank);
            for (Eigen::Index i = g.rank; i < kernel_dim; ++i)
                for (Eigen::Index j = 0; j < g.rank; ++j)
                    if (m(i, j) != 0) throw std::logic_error("cochain action does not preserve the torsion subgroup");
            const auto t = static_cast<Eigen::Index>(tors.size());
            h.torsion_action = zeros(tors.size(), tors.size());
            for (Eigen::Index i = 0; i < t; ++i)
                for (Eigen::Index j = 0; j < t; ++j) h.torsion_action(i, j) = mod(m(tors[i], tors[j]), h.torsion_orders[static_cast<std::size_t>(i)]);
        }
        out.push_back(std::move(h));
    }
    return out;
}

std::vector<AbelianInvariants> integral_cohomology(const CWApproximant& cw) {
    std::vector<AbelianInvariants> out;
    for (const auto& h : cohomology_groups(cw)) out.push_back(h.invariants());
    return out;
}

AbelianInvariants direct_limit(const BigMatrix& f) {
    AbelianInvariants out;
    if (f.rows() == 0) return out;
    const auto split = integer_roots(characteristic_polynomial(f));
    for (const auto& [lambda, mult] : split.roots) {
        if (lambda == 0) continue;
        out.localized.emplace_back(big_abs(lambda), mult);
        if (mult > 1) {
            BigMatrix shifted = f;
            for (Eigen::Index i = 0; i < f.rows(); ++i) shifted(i, i) -= lambda;
            const auto geometric = f.rows() - rational_rank(shifted);
            if (geometric < mult)
                out.notes.push_back("eigenvalue " + lambda.str() + " has a Jordan block (algebraic " + std::to_string(mult) +
                                    ", geometric " + std::to_string(geometric) + ")");
        }
    }
    if (split.cofactor.size() > 1) {
        const int degree = static_cast<int>(split.cofactor.size()) - 1;
        BigInt det = split.cofactor.front();
        // Leading zero coefficients were split off as the root 0; det is the block's norm.
        out.localized.emplace_back(big_abs(det), degree);
        std::string poly;
        for (std::size_t i = 0; i < split.cofactor.size(); ++i) poly += (i ? " " : "") + split.cofactor[i].str();
        out.notes.push_back("irrational block with characteristic coefficients [" + poly + "] reported as Z[1/" + big_abs(det).str() + "]^" +
                            std::to_string(degree));
    }
    out.normalize();
    return out;
}

AbelianInvariants direct_limit(const CohomologyGroup& g) {
    AbelianInvariants out = direct_limit(g.free_action);
    const auto& d = g.torsion_orders;
    if (!d.empty()) {
        const auto t = static_cast<Eigen::Index>(d.size());
        BigMatrix gens = identity<BigInt>(t);
        std::vector<BigInt> invariants = subgroup_invariants(gens, d);
        BigInt order = product(invariants);
        const BigInt bound = product(d) + 1;
        for (BigInt step = 0; step < bound; ++step) {
            BigMatrix next = g.torsion_action * gens;
            for (Eigen::Index i = 0; i < t; ++i)
                for (Eigen::Index j = 0; j < next.cols(); ++j) next(i, j) = mod(next(i, j), d[static_cast<std::size_t>(i)]);
            auto next_invariants = subgroup_invariants(next, d);
            const BigInt next_order = product(next_invariants);
            gens = std::move(next);
            if (next_order == order) break;
            invariants = std::move(next_invariants);
            order = next_order;
        }
        out.torsion = invariants;
    }
    out.normalize();
    return out;
}

HullCohomology cohomology_of_hull(const Substitution& sub) {
    std::string failure;
    for (int radius = 1; radius <= 3; ++radius) {
        HullCohomology out;
        out.cw = build_approximant(sub, radius);
        try {
            out.action = substitution_action(sub, out.cw);
        } catch (const std::runtime_error& e) {
            failure = e.what();
            continue;
        }
        const auto check = check_complex(out.cw, &out.action);
        if (!check.ok()) {
            failure = check.witness;
            continue;
        }
        out.approximant = cohomology_groups(out.cw, &out.action);
        for (const auto& h : out.approximant) out.groups.push_back(direct_limit(h));
        return out;
    }
    throw std::runtime_error("substitution action not well defined up to collar radius 3: " + failure);
}

std::vector<BigInt> periodic_point_counts(const Substitution& sub, int max_power) {
    if (!sub.constant_shape()) throw std::invalid_argument("periodic point counts need a constant-shape substitution");
    const auto n = static_cast<Letter>(sub.size());
    const bool planar = sub.dim() == 2;
    const auto pairs_h = legal_patterns(sub, Shape{1, 2});
    const auto pairs_v = planar ? legal_patterns(sub, Shape{2, 1}) : PatternSet{};
    const auto blocks = planar ? legal_patterns(sub, Shape{2, 2}) : PatternSet{};
    std::vector<BigInt> out;
    for (int m = 1; m <= max_power; ++m) {
        std::vector<Pattern> st;
        for (Letter l = 0; l < n; ++l) st.push_back(supertile(sub, l, m));
        const int rows = st[0].rows(), cols = st[0].cols();
        auto fixed = [&](Letter l, int r, int c) { return st[l].at(r, c) == l; };
        BigInt total = 0;
        const int row_positions = planar ? rows - 1 : 1;
        for (int v = 0; v < row_positions; ++v)
            for (int u = 0; u < cols - 1; ++u) {
                const bool on_row_line = planar && v == 0, on_col_line = u == 0;
                const int rv = planar ? v : 0;
                if (!on_row_line && !on_col_line) {
                    for (Letter l = 0; l < n; ++l) total += fixed(l, rv, u);
                } else if (on_col_line && !on_row_line) {
                    for (const auto& p : pairs_h.members) total += fixed(p.at(0, 0), rv, cols - 1) && fixed(p.at(0, 1), rv, 0);
                } else if (on_row_line && !on_col_line) {
                    for (const auto& p : pairs_v.members) total += fixed(p.at(0, 0), rows - 1, u) && fixed(p.at(1, 0), 0, u);
                } else {
                    for (const auto& p : blocks.members)
                        total += fixed(p.at(0, 0), rows - 1, cols - 1) && fixed(p.at(0, 1), rows - 1, 0) && fixed(p.at(1, 0), 0, cols - 1) &&
                                 fixed(p.at(1, 1), 0, 0);
                }
            }
        out.push_back(total);
    }
    return out;
}

CWApproximant torus_approximant(int d) {
    if (d < 1 || d > 2) throw std::invalid_argument("torus dimension must be 1 or 2");
    CWApproximant cw;
    cw.d = d;
    const std::vector<std::size_t> counts = d == 1 ? std::vector<std::size_t>{1, 1} : std::vector<std::size_t>{1, 2, 1};
    for (int k = 0; k <= d; ++k) {
        cw.cells.emplace_back(counts[static_cast<std::size_t>(k)]);
        cw.boundary.push_back(zeros(k ? counts[static_cast<std::size_t>(k - 1)] : 0, counts[static_cast<std::size_t>(k)]));
    }
    cw.horizontal_edges = d == 2 ? 1 : 0;
    return cw;
}

CochainAction torus_action(int d, int q) {
    CochainAction out;
    const auto cw = torus_approximant(d);
    for (int k = 0; k <= d; ++k) {
        BigMatrix s = identity<BigInt>(static_cast<Eigen::Index>(cw.count(k)));
        BigInt factor = 1;
        for (int i = 0; i < k; ++i) factor *= q;
        s *= factor;
        out.chain.push_back(s);
        out.cochain.push_back(s.transpose());
    }
    return out;
}

void write_matrix(std::ostream& out, const BigMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
        out << '\n';
    }
}

BigMatrix read_matrix(std::istream& in) {
    Eigen::Index rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw std::invalid_argument("bad matrix header");
    BigMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            std::string token;
            if (!(in >> token)) throw std::invalid_argument("matrix file truncated");
            m(i, j) = BigInt(token);
        }
    return m;
}

}  // namespace substfactor
