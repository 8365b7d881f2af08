#pragma once

#include <vector>

#include "maass/field.hpp"

namespace maass {

/// q-expansion of a classical form of weight k-1, level D_F, character chi_F,
/// with coefficients in F and explicit truncation bound N.
struct QExpansion {
    long weight = 0;  // = k - 1
    Int level;        // = D_F
    Int N;            // coefficients stored for 0 <= n <= N
    std::vector<FieldElement> a;

    /// a(n) with the convention a(m) = 0 for m not a nonnegative integer.
    /// Reading beyond N is a truncation error, never a silent zero.
    FieldElement at(const Rat& n) const;
    bool is_zero() const;
    friend bool operator==(const QExpansion& x, const QExpansion& y);
};

QExpansion zero_expansion(const QuadField& K, long weight, const Int& N);

/// T_p on M_{k-1}(D_F, chi_F): a'(n) = a(np) + chi_F(p) p^{k-2} a(n/p).
/// Output bound floor(N/p).
QExpansion hecke_Tp(const QuadField& K, const QExpansion& Q, const Int& p);

/// Eigenvalue of T_p on the Eisenstein series below: 1 + chi_F(p) p^{k-2}.
Rat eisenstein_eigenvalue(const QuadField& K, long k, const Int& p);

/// Concrete Hecke eigenform in M_{k-1}(D_F, chi_F):
/// a(n) = sum_{d | n} chi_F(d) d^{k-2}, a(0) = 0.
QExpansion eisenstein(const QuadField& K, long k, const Int& N);

/// #{alpha in d^{-1}/O_F : D_F N(alpha) = -n (mod D_F)} where d^{-1} is the
/// inverse different (the group has order D_F).
Int a_F(const QuadField& K, const Int& n);

/// The base-indexed tuple; permutations act by (sigma A)_b = a_{sigma^{-1}(b)}.
struct TupleOfQExpansions {
    std::vector<QExpansion> f;

    friend bool operator==(const TupleOfQExpansions& x, const TupleOfQExpansions& y) {
        return x.f == y.f;
    }
};

}  // namespace maass
