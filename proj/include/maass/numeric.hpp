#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace maass {

using Int = mpz_class;
using Rat = mpq_class;

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rpow(const Rat& base, long e) {
    if (e >= 0) {
        Rat r;
        mpz_pow_ui(mpq_numref(r.get_mpq_t()), base.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(mpq_denref(r.get_mpq_t()), base.get_den_mpz_t(), static_cast<unsigned long>(e));
        r.canonicalize();
        return r;
    }
    if (base == 0) throw std::domain_error("rpow: zero to negative power");
    return 1 / rpow(base, -e);
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline bool divides(const Int& d, const Int& n) {
    return d != 0 && mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t());
}

/// Positive divisors of n > 0, ascending.
std::vector<Int> divisors(const Int& n);

/// Largest e with p^e | n (n != 0).
int valuation(Int n, const Int& p);

bool is_prime(const Int& n);
bool is_squarefree_negative(const Int& d);

/// Kronecker symbol (a/n), fully general.
int kronecker(Int a, Int n);

/// x with x^2 = a mod p^e (p odd prime, (a/p)=1), by Hensel lifting.
Int sqrt_mod_prime_power(const Int& a, const Int& p, int e);

std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

}  // namespace maass
