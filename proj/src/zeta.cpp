#include "substfactor/zeta.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace substfactor {

namespace {

BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt big_gcd(BigInt a, BigInt b) {
    a = big_abs(a);
    b = big_abs(b);
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
    if (p.is_zero()) return p;
    IntPolynomial q = p.divide_scalar(p.content());
    if (q.coefficients().back() < 0) q = q.divide_scalar(BigInt(-1));
    return q;
}

// Pseudo-remainder of a by b.
IntPolynomial pseudo_remainder(IntPolynomial a, const IntPolynomial& b) {
    const BigInt lead = b.coefficients().back();
    const int db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        const BigInt la = a.coefficients().back();
        const int shift = a.degree() - db;
        std::vector<BigInt> sb(static_cast<std::size_t>(shift), BigInt(0));
        for (const auto& c : b.coefficients()) sb.push_back(c * la);
        a = a * IntPolynomial::constant(lead) - IntPolynomial(std::move(sb));
    }
    return a;
}

BigInt to_integer(const BigRational& r) {
    if (denominator(r) != 1) throw std::domain_error("non-integral coefficient");
    return numerator(r);
}

std::vector<BigInt> divisors_of(const BigInt& n) {
    std::vector<BigInt> out;
    const BigInt a = big_abs(n);
    if (a == 0) return out;
    for (BigInt d = 1; d * d <= a && d <= 10000000; ++d)
        if (a % d == 0) {
            out.push_back(d);
            if (d * d != a) out.push_back(a / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Rising factorial c (c+1) ... (c+j-1) / j!, the z^{mj} coefficient of (1 - z^m)^(-c).
BigRational rising_binomial(const BigRational& c, int j) {
    BigRational out = 1;
    for (int i = 0; i < j; ++i) out = out * (c + i) / BigRational(i + 1);
    return out;
}

std::string binomial_term(int k, const BigInt& c) {
    std::string out = c < 0 ? "1+" : "1-";
    const BigInt a = big_abs(c);
    if (a != 1) out += a.str();
    out += "z";
    if (k > 1) out += "^" + std::to_string(k);
    return out;
}

std::optional<std::string> factored(const IntPolynomial& p, int* count) {
    const auto factors = binomial_factors(p);
    if (!factors) return std::nullopt;
    std::string out;
    *count = 0;
    for (const auto& [k, c, mult] : *factors) {
        out += "(" + binomial_term(k, c) + ")";
        if (mult > 1) out += "^" + std::to_string(mult);
        *count += mult;
    }
    if (out.empty()) out = "1";
    return out;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : c_(std::move(coefficients)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::binomial(const BigInt& c, int k) {
    std::vector<BigInt> v(static_cast<std::size_t>(k) + 1, BigInt(0));
    v[0] = 1;
    v[static_cast<std::size_t>(k)] -= c;
    return IntPolynomial(std::move(v));
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& c : c_) g = big_gcd(g, c);
    return g;
}

IntPolynomial IntPolynomial::derivative() const {
    std::vector<BigInt> out;
    for (std::size_t k = 1; k < c_.size(); ++k) out.push_back(c_[k] * static_cast<long long>(k));
    return IntPolynomial(std::move(out));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> out(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) out[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) out[k] += b.c_[k];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    return a + b * IntPolynomial::constant(-1);
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(out));
}

std::optional<IntPolynomial> IntPolynomial::divide_exact(const IntPolynomial& d) const {
    if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (is_zero()) return IntPolynomial{};
    if (degree() < d.degree()) return std::nullopt;
    std::vector<BigInt> rem = c_;
    std::vector<BigInt> q(static_cast<std::size_t>(degree() - d.degree() + 1), BigInt(0));
    const BigInt lead = d.c_.back();
    for (int k = degree() - d.degree(); k >= 0; --k) {
        const BigInt& top = rem[static_cast<std::size_t>(k + d.degree())];
        if (top % lead != 0) return std::nullopt;
        const BigInt f = top / lead;
        q[static_cast<std::size_t>(k)] = f;
        for (std::size_t i = 0; i < d.c_.size(); ++i) rem[static_cast<std::size_t>(k) + i] -= f * d.c_[i];
    }
    if (std::any_of(rem.begin(), rem.end(), [](const BigInt& x) { return x != 0; })) return std::nullopt;
    return IntPolynomial(std::move(q));
}

IntPolynomial IntPolynomial::divide_scalar(const BigInt& s) const {
    std::vector<BigInt> out = c_;
    for (auto& c : out) {
        if (c % s != 0) throw std::domain_error("inexact scalar division");
        c /= s;
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::pow(int e) const {
    IntPolynomial out = constant(1);
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial x = primitive_part(a), y = primitive_part(b);
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPolynomial r = primitive_part(pseudo_remainder(x, y));
        x = std::move(y);
        y = std::move(r);
    }
    return primitive_part(x);
}

RationalFunction::RationalFunction(IntPolynomial num, IntPolynomial den) {
    if (den.is_zero()) throw std::domain_error("zero denominator");
    if (num.is_zero()) {
        num_ = {};
        den_ = IntPolynomial::constant(1);
        return;
    }
    const IntPolynomial g = gcd(num, den);
    num = *num.divide_exact(g);
    den = *den.divide_exact(g);
    const BigInt c = big_gcd(num.content(), den.content());
    num = num.divide_scalar(c);
    den = den.divide_scalar(c);
    const auto& dc = den.coefficients();
    const BigInt& first = *std::find_if(dc.begin(), dc.end(), [](const BigInt& x) { return x != 0; });
    if (first < 0) {
        num = num.divide_scalar(BigInt(-1));
        den = den.divide_scalar(BigInt(-1));
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

RationalFunction RationalFunction::from_factors(const std::vector<std::pair<IntPolynomial, int>>& factors) {
    IntPolynomial num = IntPolynomial::constant(1), den = IntPolynomial::constant(1);
    for (const auto& [p, e] : factors) {
        if (e >= 0)
            num = num * p.pow(e);
        else
            den = den * p.pow(-e);
    }
    return RationalFunction(num, den);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::pow(int e) const {
    if (e < 0) return RationalFunction(den_.pow(-e), num_.pow(-e));
    return RationalFunction(num_.pow(e), den_.pow(e));
}

std::vector<BigRational> RationalFunction::series(int order) const {
    if (den_[0] == 0) throw std::domain_error("denominator vanishes at zero");
    std::vector<BigRational> s(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        BigRational acc(num_[n]);
        for (int k = 1; k <= n && k <= den_.degree(); ++k) acc -= BigRational(den_[k]) * s[static_cast<std::size_t>(n - k)];
        s[static_cast<std::size_t>(n)] = acc / BigRational(den_[0]);
    }
    return s;
}

Series series_multiply(const Series& a, const Series& b, int order) {
    Series out(static_cast<std::size_t>(order) + 1, BigRational(0));
    for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(order); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(order); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<BigInt> counts_from_zeta(const RationalFunction& zeta, int m) {
    const auto& n = zeta.numerator();
    const auto& d = zeta.denominator();
    if (n[0] != d[0] || d[0] == 0) throw std::domain_error("zeta(0) must be 1");
    // z zeta'/zeta = z (N' D - N D') / (N D)
    const IntPolynomial z({BigInt(0), BigInt(1)});
    const RationalFunction log_derivative(z * (n.derivative() * d - n * d.derivative()), n * d);
    const auto s = log_derivative.series(m);
    std::vector<BigInt> out;
    for (int k = 1; k <= m; ++k) out.push_back(to_integer(s[static_cast<std::size_t>(k)]));
    return out;
}

ZetaReconstruction zeta_from_counts(const std::vector<BigInt>& a) {
    const int m = static_cast<int>(a.size());
    ZetaReconstruction out;
    Series b(static_cast<std::size_t>(m) + 1, BigRational(0));
    b[0] = 1;
    for (int n = 1; n <= m; ++n) {
        BigRational acc = 0;
        for (int k = 1; k <= n; ++k) acc += BigRational(a[static_cast<std::size_t>(k - 1)]) * b[static_cast<std::size_t>(n - k)];
        b[static_cast<std::size_t>(n)] = acc / BigRational(n);
    }
    out.series = b;
    out.integral = std::all_of(b.begin(), b.end(), [](const BigRational& x) { return denominator(x) == 1; });
    auto coef = [&](int j) { return j < 0 ? BigRational(0) : b[static_cast<std::size_t>(j)]; };
    for (int total = 0; 2 * total + 1 <= m; ++total)
        for (int q = 0; q <= total; ++q) {
            const int p = total - q;
            // Denominator e_0 = 1, e_1..e_q with sum_i e_i b_{j-i} = 0 for j = p+1..p+q.
            std::vector<std::vector<BigRational>> sys(static_cast<std::size_t>(q), std::vector<BigRational>(static_cast<std::size_t>(q) + 1));
            for (int r = 0; r < q; ++r) {
                const int j = p + 1 + r;
                for (int i = 1; i <= q; ++i) sys[r][static_cast<std::size_t>(i - 1)] = coef(j - i);
                sys[r][static_cast<std::size_t>(q)] = -coef(j);
            }
            bool singular = false;
            for (int col = 0; col < q && !singular; ++col) {
                int piv = col;
                while (piv < q && sys[piv][col] == 0) ++piv;
                if (piv == q) {
                    singular = true;
                    break;
                }
                std::swap(sys[piv], sys[col]);
                for (int r = 0; r < q; ++r) {
                    if (r == col || sys[r][col] == 0) continue;
                    const BigRational f = sys[r][col] / sys[col][col];
                    for (int c = col; c <= q; ++c) sys[r][c] -= f * sys[col][c];
                }
            }
            if (singular) continue;
            std::vector<BigRational> e(static_cast<std::size_t>(q) + 1);
            e[0] = 1;
            for (int i = 1; i <= q; ++i) e[static_cast<std::size_t>(i)] = sys[i - 1][q] / sys[i - 1][i - 1];
            bool ok = true;
            for (int j = p + 1; j <= m && ok; ++j) {
                BigRational acc = 0;
                for (int i = 0; i <= q; ++i) acc += e[static_cast<std::size_t>(i)] * coef(j - i);
                ok = acc == 0;
            }
            if (!ok) continue;
            std::vector<BigRational> num(static_cast<std::size_t>(p) + 1);
            for (int j = 0; j <= p; ++j)
                for (int i = 0; i <= std::min(j, q); ++i) num[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(i)] * coef(j - i);
            BigInt scale = 1;
            for (const auto& x : num) scale = scale / big_gcd(scale, denominator(x)) * denominator(x);
            for (const auto& x : e) scale = scale / big_gcd(scale, denominator(x)) * denominator(x);
            std::vector<BigInt> ni, di;
            for (const auto& x : num) ni.push_back(numerator(x * BigRational(scale)));
            for (const auto& x : e) di.push_back(numerator(x * BigRational(scale)));
            out.zeta = RationalFunction(IntPolynomial(ni), IntPolynomial(di));
            return out;
        }
    return out;
}

int mobius(long long n) {
    if (n < 1) throw std::domain_error("Moebius function needs n >= 1");
    int result = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

CycleCounts cycle_counts(const std::vector<BigInt>& a) {
    const int m = static_cast<int>(a.size());
    CycleCounts out;
    out.integral = true;
    for (int k = 1; k <= m; ++k) {
        BigInt acc = 0;
        for (int d = 1; d <= k; ++d)
            if (k % d == 0) acc += a[static_cast<std::size_t>(d - 1)] * mobius(k / d);
        BigRational c(acc, BigInt(k));
        if (denominator(c) != 1) out.integral = false;
        out.c.push_back(c);
    }
    Series product(static_cast<std::size_t>(m) + 1, BigRational(0));
    product[0] = 1;
    for (int k = 1; k <= m; ++k) {
        Series factor(static_cast<std::size_t>(m) + 1, BigRational(0));
        for (int j = 0; j * k <= m; ++j) factor[static_cast<std::size_t>(j * k)] = rising_binomial(out.c[static_cast<std::size_t>(k - 1)], j);
        product = series_multiply(product, factor, m);
    }
    out.euler_product_ok = product == zeta_from_counts(a).series;
    return out;
}

IntPolynomial det_one_minus_z(const BigMatrix& a) {
    auto c = characteristic_polynomial(a);
    std::reverse(c.begin(), c.end());
    return IntPolynomial(std::move(c));
}

RationalFunction zeta_ap(const std::vector<BigMatrix>& a) {
    if (a.empty()) throw std::invalid_argument("zeta_ap needs at least one matrix");
    const int d = static_cast<int>(a.size()) - 1;
    IntPolynomial num = IntPolynomial::constant(1), den = IntPolynomial::constant(1);
    for (int k = 0; k <= d; ++k) {
        const IntPolynomial p = det_one_minus_z(a[static_cast<std::size_t>(d - k)]);
        if (k % 2)
            num = num * p;
        else
            den = den * p;
    }
    return RationalFunction(num, den);
}

RationalFunction solenoid_zeta(int d, int q) {
    if (q < 2) throw std::invalid_argument("solenoid expansion factor must be at least 2");
    using P = IntPolynomial;
    if (d == 1) return RationalFunction(P::binomial(1, 1), P::binomial(q, 1));
    if (d == 2) return RationalFunction(P::binomial(q, 1).pow(2), P::binomial(BigInt(q) * q, 1) * P::binomial(1, 1));
    throw std::invalid_argument("solenoid dimension must be 1 or 2");
}

ProductCheck product_decomposition_check(const RationalFunction& target, const std::vector<RationalFunction>& factors) {
    RationalFunction product;
    for (const auto& f : factors) product = product * f;
    ProductCheck out;
    out.residual = target / product;
    out.equal = out.residual == RationalFunction();
    return out;
}

RationalFunction closed_form_zeta(const std::string& name) {
    using P = IntPolynomial;
    if (name == "squiral") return RationalFunction::from_factors({{P::binomial(1, 1), -1}, {P::binomial(9, 1), -1}, {P::binomial(1, 2), -3}});
    if (name == "fmax") return RationalFunction::from_factors({{P::binomial(1, 1), -3}, {P::binomial(9, 1), -1}});
    if (name == "table")
        return RationalFunction::from_factors({{P::binomial(2, 1), 2},
                                               {P::binomial(4, 1), -1},
                                               {P::binomial(4, 2), -2},
                                               {P::binomial(1, 1), -2},
                                               {P::binomial(1, 2), -1}});
    throw std::invalid_argument("no printed zeta function for '" + name + "'");
}

std::optional<std::vector<std::tuple<int, BigInt, int>>> binomial_factors(const IntPolynomial& p) {
    if (p.is_zero() || p[0] != 1) return std::nullopt;
    std::map<std::pair<int, BigInt>, int> found;
    IntPolynomial rest = p;
    while (rest.degree() > 0) {
        bool progress = false;
        const auto divisors = divisors_of(rest.coefficients().back());
        for (int k = rest.degree(); k >= 1 && !progress; --k)
            for (const auto& d : divisors) {
                for (const BigInt& c : {BigInt(-d), BigInt(d)}) {
                    if (auto q = rest.divide_exact(IntPolynomial::binomial(c, k))) {
                        rest = *q;
                        ++found[{k, c}];
                        progress = true;
                        break;
                    }
                }
                if (progress) break;
            }
        if (!progress) return std::nullopt;
    }
    if (rest[0] != 1) return std::nullopt;
    std::vector<std::tuple<int, BigInt, int>> out;
    for (const auto& [key, mult] : found) out.emplace_back(key.first, key.second, mult);
    return out;
}

std::string format_polynomial(const IntPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = 0; k <= p.degree(); ++k) {
        const BigInt c = p[k];
        if (c == 0) continue;
        const BigInt a = big_abs(c);
        if (!out.empty())
            out += c < 0 ? "-" : "+";
        else if (c < 0)
            out += "-";
        if (k == 0 || a != 1) out += a.str();
        if (k >= 1) out += "z";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

std::string format_rational_function(const RationalFunction& f) {
    int num_count = 0, den_count = 0;
    const auto num = factored(f.numerator(), &num_count);
    const auto den = factored(f.denominator(), &den_count);
    const std::string n = num ? *num : "(" + format_polynomial(f.numerator()) + ")";
    if (f.denominator() == IntPolynomial::constant(1)) return n == "1" ? "1" : n;
    std::string d = den ? *den : "(" + format_polynomial(f.denominator()) + ")";
    const auto& df = binomial_factors(f.denominator());
    if (den && df && df->size() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace substfactor
