#pragma once

#include <cstdint>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "substfactor/core.hpp"

// Eigen 3.4 matrices expose `const_iterator = void`, which Boost 1.74's byte
// container probe cannot digest when Eigen tries scalar promotion.
namespace boost::multiprecision::detail {
template <class C>
    requires std::is_void_v<typename C::const_iterator>
struct is_byte_container<C> : boost::false_type {};
}  // namespace boost::multiprecision::detail

namespace substfactor {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using BigRational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;
using BigMatrix = Matrix<BigInt>;

template <typename To, typename From>
Matrix<To> convert(const Matrix<From>& a) {
    Matrix<To> out(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = To(a(i, j));
    return out;
}

template <typename Scalar>
Matrix<Scalar> identity(Eigen::Index n) {
    Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out(i, i) = Scalar(1);
    return out;
}

/// P * A * Q = D with P, Q unimodular and D diagonal, d_i dividing d_{i+1}.
template <typename Scalar>
struct SmithForm {
    Matrix<Scalar> d, p, p_inv, q, q_inv;
    Eigen::Index rank = 0;

    std::vector<Scalar> diagonal() const {
        std::vector<Scalar> out;
        for (Eigen::Index i = 0; i < rank; ++i) out.push_back(d(i, i));
        return out;
    }
};

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
    return x < 0 ? Scalar(-x) : x;
}

// Floor division rounding toward negative infinity.
template <typename Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
    Scalar q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

template <typename Scalar>
struct SmithWork {
    SmithForm<Scalar>& f;

    void add_row(Eigen::Index dst, Eigen::Index src, const Scalar& c) {
        if (c == 0) return;
        f.d.row(dst) += c * f.d.row(src);
        f.p.row(dst) += c * f.p.row(src);
        f.p_inv.col(src) -= c * f.p_inv.col(dst);
    }
    void add_col(Eigen::Index dst, Eigen::Index src, const Scalar& c) {
        if (c == 0) return;
        f.d.col(dst) += c * f.d.col(src);
        f.q.col(dst) += c * f.q.col(src);
        f.q_inv.row(src) -= c * f.q_inv.row(dst);
    }
    void swap_rows(Eigen::Index a, Eigen::Index b) {
        if (a == b) return;
        f.d.row(a).swap(f.d.row(b));
        f.p.row(a).swap(f.p.row(b));
        f.p_inv.col(a).swap(f.p_inv.col(b));
    }
    void swap_cols(Eigen::Index a, Eigen::Index b) {
        if (a == b) return;
        f.d.col(a).swap(f.d.col(b));
        f.q.col(a).swap(f.q.col(b));
        f.q_inv.row(a).swap(f.q_inv.row(b));
    }
    void negate_row(Eigen::Index a) {
        f.d.row(a) *= Scalar(-1);
        f.p.row(a) *= Scalar(-1);
        f.p_inv.col(a) *= Scalar(-1);
    }
};

}  // namespace detail

template <typename Scalar>
SmithForm<Scalar> smith_normal_form(const Matrix<Scalar>& a) {
    using detail::abs_value;
    using detail::floor_div;
    const Eigen::Index m = a.rows(), n = a.cols();
    SmithForm<Scalar> f{a, identity<Scalar>(m), identity<Scalar>(m), identity<Scalar>(n), identity<Scalar>(n), 0};
    detail::SmithWork<Scalar> w{f};
    Eigen::Index t = 0;
    while (t < m && t < n) {
        // Pivot: least nonzero absolute value in the trailing block.
        Eigen::Index pr = -1, pc = -1;
        Scalar best = 0;
        for (Eigen::Index i = t; i < m; ++i)
            for (Eigen::Index j = t; j < n; ++j)
                if (f.d(i, j) != 0 && (pr < 0 || abs_value<Scalar>(f.d(i, j)) < best)) {
                    best = abs_value<Scalar>(f.d(i, j));
                    pr = i;
                    pc = j;
                }
        if (pr < 0) break;
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        bool done = false;
        while (!done) {
            done = true;
            for (Eigen::Index i = t + 1; i < m; ++i) {
                if (f.d(i, t) == 0) continue;
                w.add_row(i, t, Scalar(-floor_div<Scalar>(f.d(i, t), f.d(t, t))));
                if (f.d(i, t) != 0) {
                    w.swap_rows(t, i);
                    done = false;
                }
            }
            for (Eigen::Index j = t + 1; j < n; ++j) {
                if (f.d(t, j) == 0) continue;
                w.add_col(j, t, Scalar(-floor_div<Scalar>(f.d(t, j), f.d(t, t))));
                if (f.d(t, j) != 0) {
                    w.swap_cols(t, j);
                    done = false;
                }
            }
            if (!done) continue;
            // Divisibility: fold an offending row into the pivot row.
            for (Eigen::Index i = t + 1; i < m && done; ++i)
                for (Eigen::Index j = t + 1; j < n; ++j)
                    if (f.d(i, j) % f.d(t, t) != 0) {
                        w.add_row(t, i, Scalar(1));
                        done = false;
                        break;
                    }
        }
        if (f.d(t, t) < 0) w.negate_row(t);
        ++t;
    }
    f.rank = t;
    return f;
}

/// Columns spanning the integer kernel of `a` (a lattice basis).
template <typename Scalar>
Matrix<Scalar> kernel_basis(const Matrix<Scalar>& a) {
    const auto f = smith_normal_form(a);
    return f.q.rightCols(a.cols() - f.rank);
}

/// Coefficients, lowest degree first, of det(x I - a).
std::vector<BigInt> characteristic_polynomial(const BigMatrix& a);

template <typename Scalar>
std::vector<BigInt> characteristic_polynomial(const Matrix<Scalar>& a) {
    return characteristic_polynomial(convert<BigInt>(a));
}

/// Rank over the rationals.
template <typename Scalar>
Eigen::Index rational_rank(const Matrix<Scalar>& a) {
    return smith_normal_form(convert<BigInt>(a)).rank;
}

/// Integer roots of an integer polynomial (coefficients lowest first), with
/// multiplicity, and the remaining cofactor.
struct RootSplit {
    std::vector<std::pair<BigInt, int>> roots;
    std::vector<BigInt> cofactor;
};
RootSplit integer_roots(std::vector<BigInt> poly);

}  // namespace substfactor
