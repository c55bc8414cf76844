#pragma once

#include <optional>
#include <string>
#include <vector>

#include "substfactor/linalg.hpp"

namespace substfactor {

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    IntPolynomial(std::vector<BigInt> coefficients);
    static IntPolynomial constant(const BigInt& c) { return IntPolynomial({c}); }
    /// 1 - c z^k
    static IntPolynomial binomial(const BigInt& c, int k);

    const std::vector<BigInt>& coefficients() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  ///< -1 for zero
    bool is_zero() const { return c_.empty(); }
    BigInt operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : BigInt(0); }
    BigInt content() const;
    IntPolynomial derivative() const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    /// Exact quotient when `d` divides this polynomial over Z.
    std::optional<IntPolynomial> divide_exact(const IntPolynomial& d) const;
    IntPolynomial divide_scalar(const BigInt& s) const;
    IntPolynomial pow(int e) const;

private:
    std::vector<BigInt> c_;
};

/// Greatest common divisor over Q, returned primitive with positive leading term.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Quotient of integer polynomials in lowest terms with positive denominator
/// constant term and coprime contents.
class RationalFunction {
public:
    RationalFunction() : num_(IntPolynomial::constant(1)), den_(IntPolynomial::constant(1)) {}
    RationalFunction(IntPolynomial num, IntPolynomial den);
    static RationalFunction from_factors(const std::vector<std::pair<IntPolynomial, int>>& factors);

    const IntPolynomial& numerator() const { return num_; }
    const IntPolynomial& denominator() const { return den_; }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    RationalFunction pow(int e) const;

    /// Power series coefficients 0..order.
    std::vector<BigRational> series(int order) const;

private:
    IntPolynomial num_, den_;
};

/// Truncated power series with rational coefficients.
using Series = std::vector<BigRational>;

Series series_multiply(const Series& a, const Series& b, int order);

/// a_1..a_M from z * zeta'(z) / zeta(z). Throws if zeta(0) != 1.
std::vector<BigInt> counts_from_zeta(const RationalFunction& zeta, int m);

struct ZetaReconstruction {
    Series series;                        ///< exp(sum a_m z^m / m) to order M
    std::optional<RationalFunction> zeta; ///< Pade reconstruction, if found
    bool integral = false;                ///< series coefficients all integers
};

/// Exponential series of the counts and the least-degree rational function
/// matching it, with total degree at most (M - 1) / 2.
ZetaReconstruction zeta_from_counts(const std::vector<BigInt>& a);

struct CycleCounts {
    std::vector<BigRational> c;  ///< c_1..c_M
    bool integral = false;
    bool euler_product_ok = false;  ///< prod (1 - z^m)^(-c_m) matches exp(sum a_m z^m / m)
};

int mobius(long long n);

/// Moebius inversion c_m = (1/m) sum_{d | m} mu(m/d) a_d, checked against the
/// Euler product.
CycleCounts cycle_counts(const std::vector<BigInt>& a);

/// det(1 - z A) for a square integer matrix.
IntPolynomial det_one_minus_z(const BigMatrix& a);

template <typename Scalar>
IntPolynomial det_one_minus_z(const Matrix<Scalar>& a) {
    return det_one_minus_z(convert<BigInt>(a));
}

/// Alternating product over cochain degrees: a[k] acts on degree-k cochains.
RationalFunction zeta_ap(const std::vector<BigMatrix>& a);

/// d = 1: (1 - z)/(1 - q z); d = 2: (1 - q z)^2 / ((1 - q^2 z)(1 - z)).
RationalFunction solenoid_zeta(int d, int q);

struct ProductCheck {
    bool equal = false;
    RationalFunction residual;  ///< target divided by the product of the factors
};

ProductCheck product_decomposition_check(const RationalFunction& target, const std::vector<RationalFunction>& factors);

/// Printed zeta functions: squiral, fmax, table.
RationalFunction closed_form_zeta(const std::string& name);

std::string format_polynomial(const IntPolynomial& p);
/// Product of (1 - c z^k) powers when the polynomials factor that way,
/// expanded form otherwise; e.g. "1/((1-z)(1-9z)(1-z^2)^3)".
std::string format_rational_function(const RationalFunction& f);

/// Factors (1 - c z^k) with multiplicity, largest k extracted first, listed by
/// k then c; nullopt when a non-binomial remainder is left.
std::optional<std::vector<std::tuple<int, BigInt, int>>> binomial_factors(const IntPolynomial& p);

}  // namespace substfactor
