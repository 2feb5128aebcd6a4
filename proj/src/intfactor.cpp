#include "pcf/intfactor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pcf {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m)
{
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m)
{
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n)
{
    if (n < 2)
        return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0)
            return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    /* Sufficient witness set for 64-bit integers. */
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

namespace {

uint64_t rho_brent(uint64_t n)
{
    if ((n & 1) == 0)
        return 2;
    uint64_t seed = 0x9e3779b97f4a7c15ull ^ n;
    auto next_seed = [&seed]() {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        return seed;
    };
    while (true) {
        uint64_t y = next_seed() % n;
        uint64_t c = next_seed() % n;
        if (c == 0)
            c = 1;
        uint64_t x = y, ys = y, q = 1, g = 1, r = 1;
        const uint64_t m = 128;
        auto f = [&](uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
        while (g == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i)
                y = f(y);
            for (uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n)
            return g;
    }
}

void factor_rec(uint64_t n, std::vector<int64_t>& out)
{
    while (n > 1) {
        if (is_prime_u64(n)) {
            out.push_back(static_cast<int64_t>(n));
            return;
        }
        uint64_t g = rho_brent(n);
        factor_rec(g, out);
        n /= g;
    }
}

} // namespace

std::vector<std::pair<int64_t, int>> factorize(int64_t n)
{
    if (n < 1)
        throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<int64_t> primes;
    uint64_t m = static_cast<uint64_t>(n);
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull, 41ull, 43ull, 47ull}) {
        while (m % p == 0) {
            m /= p;
            primes.push_back(static_cast<int64_t>(p));
        }
    }
    for (uint64_t p = 53; p * p <= m && p < 100000; p += 2) {
        while (m % p == 0) {
            m /= p;
            primes.push_back(static_cast<int64_t>(p));
        }
    }
    factor_rec(m, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

int valuation(int64_t n, int64_t p)
{
    if (n == 0 || p < 2)
        throw std::invalid_argument("valuation: need n != 0, p >= 2");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

bool is_squarefree(int64_t n)
{
    if (n < 0)
        n = -n;
    if (n == 0)
        return false;
    for (auto& [p, e] : factorize(n))
        if (e > 1)
            return false;
    return true;
}

} // namespace pcf
