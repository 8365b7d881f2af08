#pragma once

#include <map>
#include <optional>
#include <vector>

#include "maass/base.hpp"
#include "maass/classical.hpp"
#include "maass/hermlat.hpp"

namespace maass {

/// A Maass coefficient system: the per-class functions c_{b,f} (here alpha),
/// finitely supported on nonnegative integers.
struct MaassSystem {
    QuadField K;
    long k = 0;
    Base B;
    Int N_alpha;                                 // support bound
    std::vector<std::map<Int, FieldElement>> alpha;  // one sparse table per base entry

    MaassSystem(const QuadField& K_, long k_, Base B_, const Int& N);

    /// alpha_b(n) with alpha(m) = 0 for m not a nonnegative integer.
    FieldElement alpha_at(std::size_t b, const Rat& n) const;
    void set_alpha(std::size_t b, const Int& n, const FieldElement& v);
    bool is_zero() const;
};

/// Pair of 2x2 rational matrices: the (phi_pfrak, phi_pfrakbar) components of
/// a local GL2 element at a split prime.
struct MatPair {
    QMat2 w1, w2;
};

MatPair mp_ident();
MatPair mp_mul(const MatPair& a, const MatPair& b);
/// The hat involution: (W1, W2) -> ((W2^t)^{-1}, (W1^t)^{-1}).
MatPair mp_hat(const MatPair& a);

/// The local generator words: alpha'_a (a = 0..p-1), alpha'_p, beta'_p,
/// gamma'_a, gamma'_p, delta'_p.
MatPair word_alpha(const Int& p, const Int& a);  // a in 0..p
MatPair word_beta(const Int& p);
MatPair word_gamma(const Int& p, const Int& a);  // a in 0..p
MatPair word_delta(const Int& p);

/// A point q_f = b * (local modifications at finitely many split primes).
struct AdelicPoint {
    std::size_t b = 0;
    std::vector<std::pair<Int, MatPair>> mods;  // (rational prime p, word), distinct p

    static AdelicPoint at_base(std::size_t b) { return {b, {}}; }
    AdelicPoint modified(const Int& p, const MatPair& w) const;
};

/// The Krieg-type divisor sum: sum over d | eps(h) of
/// d^{k-1} alpha_b(D_F d^{-2} det h). Requires h in T, h != 0, psd.
FieldElement krieg_coeff(const MaassSystem& M, std::size_t b, const HermitianForm& h);

/// Normalized Fourier coefficient c-hat_f(h, q): classifies q, computes the
/// gamma determinant factor, the content of q* h q (locally at modified
/// primes), and the determinant valuation shift, then assembles the Maass
/// condition sum. Returns 0 when some local content is negative.
FieldElement coeff_at(const MaassSystem& M, const HermitianForm& h, const AdelicPoint& q);

/// Result of the Maass-consistency test.
struct ConsistencyResult {
    bool consistent = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // (h index, b)
    std::vector<std::map<Int, FieldElement>> recovered;          // alpha per b
    std::size_t skipped = 0;  // entries skipped as underdetermined
};

/// Checks that the table value[h][b] (indexed like `hs`) satisfies the Krieg
/// condition for some alpha, recovering alpha from eps = 1 entries.
ConsistencyResult is_maass_consistent(const QuadField& K, long k, const Base& B,
                                      const std::vector<HermitianForm>& hs,
                                      const std::vector<std::vector<FieldElement>>& value);

/// All nonzero psd forms in T with trace <= max_trace (enumerate_T minus 0).
std::vector<HermitianForm> table_domain(const QuadField& K, const Int& max_trace);

/// Coefficient table value[h][b] = krieg_coeff(M, b, hs[h]).
/// `parallel` switches between the serial reference loop and the OpenMP one;
/// both produce identical tables.
std::vector<std::vector<FieldElement>> coefficient_table(const MaassSystem& M,
                                                         const std::vector<HermitianForm>& hs,
                                                         bool parallel);

/// Deterministic pseudo-random system for test corpora (alphas are small
/// integers drawn from a seeded 64-bit LCG, supported on 0..N).
MaassSystem random_system(const QuadField& K, long k, const Base& B, const Int& N,
                          std::uint64_t seed);

/// System with alpha_b(n) = a(n)/a_F(n) on {n : a_F(n) != 0}, 0 elsewhere.
/// This is the lift of a q-expansion through the descent normalization.
MaassSystem lift_expansion(const QuadField& K, long k, const Base& B, const QExpansion& E);

}  // namespace maass
