#include "substfactor/linalg.hpp"

#include <algorithm>

namespace substfactor {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 pow_mod(u64 b, u64 e, u64 p) {
    u64 r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

u64 reduce(const BigInt& x, u64 p) {
    BigInt r = x % p;
    if (r < 0) r += p;
    return static_cast<u64>(r);
}

std::vector<u64> charpoly_mod(const BigMatrix& a, u64 p) {
    const auto n = static_cast<std::size_t>(a.rows());
    std::vector<std::vector<u64>> h(n, std::vector<u64>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i][j] = reduce(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), p);
    // Similarity reduction to upper Hessenberg form.
    for (std::size_t j = 0; j + 2 < n; ++j) {
        std::size_t piv = j + 1;
        while (piv < n && h[piv][j] == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            std::swap(h[piv], h[j + 1]);
            for (std::size_t r = 0; r < n; ++r) std::swap(h[r][piv], h[r][j + 1]);
        }
        const u64 inv = inv_mod(h[j + 1][j], p);
        for (std::size_t i = j + 2; i < n; ++i) {
            const u64 u = h[i][j] * inv % p;
            if (u == 0) continue;
            for (std::size_t c = 0; c < n; ++c) h[i][c] = (h[i][c] + (p - u) * h[j + 1][c]) % p;
            for (std::size_t r = 0; r < n; ++r) h[r][j + 1] = (h[r][j + 1] + u * h[r][i]) % p;
        }
    }
    std::vector<std::vector<u64>> polys{{1}};
    for (std::size_t m = 1; m <= n; ++m) {
        const auto& prev = polys[m - 1];
        std::vector<u64> cur(m + 1, 0);
        for (std::size_t k = 0; k < prev.size(); ++k) {
            cur[k + 1] = (cur[k + 1] + prev[k]) % p;
            cur[k] = (cur[k] + (p - h[m - 1][m - 1]) * prev[k]) % p;
        }
        u64 t = 1;
        for (std::size_t i = m - 1; i >= 1; --i) {
            t = t * h[i][i - 1] % p;
            const u64 coef = t * h[i - 1][m - 1] % p;
            if (coef != 0)
                for (std::size_t k = 0; k < polys[i - 1].size(); ++k)
                    cur[k] = (cur[k] + (p - coef) * polys[i - 1][k]) % p;
        }
        polys.push_back(std::move(cur));
    }
    return polys[n];
}

BigInt eval(const std::vector<BigInt>& poly, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Exact division by (x - r); caller guarantees r is a root.
std::vector<BigInt> deflate(const std::vector<BigInt>& poly, const BigInt& r) {
    const std::size_t n = poly.size() - 1;
    std::vector<BigInt> out(n);
    BigInt carry = 0;
    for (std::size_t k = n; k-- > 0;) {
        carry = poly[k + 1] + carry * r;
        out[k] = carry;
    }
    return out;
}

}  // namespace

std::vector<BigInt> characteristic_polynomial(const BigMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("characteristic polynomial needs a square matrix");
    const auto n = static_cast<std::size_t>(a.rows());
    // Every coefficient is a sum of principal minors, bounded by prod(1 + row sums).
    BigInt bound = 1;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        BigInt row = 1;
        for (Eigen::Index j = 0; j < a.cols(); ++j) row += detail::abs_value<BigInt>(a(i, j));
        bound *= row;
    }
    std::vector<BigInt> acc(n + 1, 0);
    BigInt modulus = 1;
    u64 p = (u64(1) << 31) - 1;
    while (modulus <= 2 * bound) {
        while (!is_prime(p)) --p;
        const auto residues = charpoly_mod(a, p);
        const u64 m_inv = inv_mod(reduce(modulus, p), p);
        for (std::size_t k = 0; k <= n; ++k) {
            const u64 cur = reduce(acc[k], p);
            const u64 step = (residues[k] + p - cur) % p * m_inv % p;
            acc[k] += modulus * step;
        }
        modulus *= p;
        --p;
    }
    for (auto& c : acc)
        if (c > modulus / 2) c -= modulus;
    return acc;
}

RootSplit integer_roots(std::vector<BigInt> poly) {
    RootSplit out;
    while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
    int zeros = 0;
    while (poly.size() > 1 && poly.front() == 0) {
        poly.erase(poly.begin());
        ++zeros;
    }
    if (zeros) out.roots.emplace_back(0, zeros);
    if (poly.size() <= 1) {
        out.cofactor = poly;
        return out;
    }
    const BigInt c0 = detail::abs_value<BigInt>(poly.front());
    std::vector<BigInt> divisors;
    for (BigInt d = 1; d * d <= c0 && d <= 1000000; ++d)
        if (c0 % d == 0) {
            divisors.push_back(d);
            if (d * d != c0) divisors.push_back(c0 / d);
        }
    std::sort(divisors.begin(), divisors.end());
    for (const BigInt& d : divisors)
        for (const BigInt r : {BigInt(d), BigInt(-d)}) {
            int mult = 0;
            while (poly.size() > 1 && eval(poly, r) == 0) {
                poly = deflate(poly, r);
                ++mult;
            }
            if (mult) out.roots.emplace_back(r, mult);
        }
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& x, const auto& y) {
        const BigInt ax = detail::abs_value<BigInt>(x.first), ay = detail::abs_value<BigInt>(y.first);
        return ax != ay ? ax > ay : x.first > y.first;
    });
    out.cofactor = poly;
    return out;
}

}  // namespace substfactor
