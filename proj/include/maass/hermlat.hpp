#pragma once

#include <array>
#include <vector>

#include "maass/linalg.hpp"

namespace maass {

/// Hermitian 2x2 matrix [[a, b], [conj(b), c]] with rational diagonal.
struct HermitianForm {
    Rat a, c;
    FieldElement b;

    Rat det() const { return a * c - b.norm(); }
    Rat trace() const { return a + c; }
    bool is_zero() const { return a == 0 && c == 0 && b.is_zero(); }
    FMat2 matrix(const QuadField& K) const;

    friend bool operator==(const HermitianForm& x, const HermitianForm& y) {
        return x.a == y.a && x.c == y.c && x.b == y.b;
    }
};

HermitianForm operator+(const HermitianForm& x, const HermitianForm& y);
HermitianForm operator-(const HermitianForm& x, const HermitianForm& y);
HermitianForm operator*(const Rat& c, const HermitianForm& x);

/// Coordinates of h against the trace pairing: (a, c, Tr b, Tr(conj(omega) b)).
/// h lies in the integral lattice T iff all four are integers.
std::array<Rat, 4> t_coordinates(const QuadField& K, const HermitianForm& h);

bool in_T(const QuadField& K, const HermitianForm& h);

/// Largest e with h/p^e still in T (h in T, h != 0).
int epsilon_p(const QuadField& K, const HermitianForm& h, const Int& p);

/// Content of h: the product of p^{epsilon_p(h)} over all primes.
Int epsilon(const QuadField& K, const HermitianForm& h);

/// u* h u for u with entries in F.
HermitianForm transform(const QuadField& K, const HermitianForm& h, const FMat2& u);

/// All positive semidefinite forms in T with trace <= max_trace,
/// deterministically ordered.
std::vector<HermitianForm> enumerate_T(const QuadField& K, const Int& max_trace);

/// phi(h) mod p^prec at a split prime: the 2x2 matrix over Z/p^prec obtained by
/// applying the embedding (bar selects the conjugate one) entrywise. Requires
/// h p-integral, p not dividing D_F.
std::array<std::array<Int, 2>, 2> local_form(const QuadField& K, const HermitianForm& h,
                                             const SplittingType& s, int prec, bool bar);

/// Result of local diagonalization: u in SL2(O_F) with
/// u* h u = epsilon(h) * diag(a, d) modulo p^n T, and p does not divide a.
struct Diagonalization {
    FMat2 u;
    Int a, d;
};

/// Diagonalize h in T (h != 0) at a split prime p not dividing D_F, to
/// precision p^n. Works in the split local picture and lifts the reduction
/// word back to an exact SL2(O_F) matrix.
Diagonalization diagonalize_mod(const QuadField& K, const HermitianForm& h, const Int& p, int n);

/// Independent verifier: u is in SL2(O_F), p does not divide a, and
/// (u* h u - epsilon(h) diag(a, d)) / p^n lies in T. Shares no machinery with
/// diagonalize_mod beyond exact arithmetic.
bool check_diagonalization(const QuadField& K, const HermitianForm& h, const Diagonalization& dg,
                           const Int& p, int n);

}  // namespace maass
