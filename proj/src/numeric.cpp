#include "maass/numeric.hpp"

#include <algorithm>

namespace maass {

std::vector<Int> divisors(const Int& n) {
    if (n <= 0) throw std::domain_error("divisors: n must be positive");
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= n; ++d) {
        if (divides(d, n)) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

int valuation(Int n, const Int& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (divides(p, n)) {
        n /= p;
        ++v;
    }
    return v;
}

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_squarefree_negative(const Int& d) {
    if (d >= 0) return false;
    Int m = -d;
    for (Int q = 2; q * q <= m; ++q)
        if (divides(q * q, m)) return false;
    return true;
}

int kronecker(Int a, Int n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

Int sqrt_mod_prime_power(const Int& a, const Int& p, int e) {
    // base solution mod p by scanning (desk-scale p)
    Int r = -1;
    for (Int x = 0; x < p; ++x)
        if ((x * x - a) % p == 0) { r = x; break; }
    if (r < 0) throw std::domain_error("sqrt_mod_prime_power: not a square mod p");
    Int pk = p;
    for (int k = 1; k < e; ++k) {
        // lift r from mod p^k to mod p^(k+1): Newton step, 2r invertible (p odd)
        Int pk1 = pk * p;
        Int f = (r * r - a) % pk1;
        Int inv2r;
        Int two_r = (2 * r) % pk1;
        if (mpz_invert(inv2r.get_mpz_t(), two_r.get_mpz_t(), pk1.get_mpz_t()) == 0)
            throw std::domain_error("sqrt_mod_prime_power: Hensel step failed");
        r = ((r - f * inv2r) % pk1 + pk1) % pk1;
        pk = pk1;
    }
    return ((r % pk) + pk) % pk;
}

std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

}  // namespace maass
