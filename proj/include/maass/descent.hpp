#pragma once

#include <string>

#include "maass/hecke.hpp"

namespace maass {

/// Normalized descent: the tuple of q-expansions with coefficients
/// a_b(n) = a_F(n) * alpha_b(n) for 0 <= n <= N (the global scalar i/sqrt(D_F)
/// is dropped; coefficients stay in F). Requires N <= M.N_alpha.
TupleOfQExpansions descend(const MaassSystem& M, const Int& N);

/// Composite operator on tuples: out_b = scale[b] * (sum_i poly[i] T_p^i)
/// applied to the source at index perm[b]. poly[i] is the coefficient of
/// T_p^i; the output truncation bound is floor(N / p^deg).
struct DescendedOperator {
    Int p;
    std::vector<FieldElement> scale;   // per-entry scalar tuple
    std::vector<Rat> poly;             // polynomial in T_p, ascending degree
    std::vector<std::size_t> perm;     // index map b -> source index
};

TupleOfQExpansions apply_descended(const QuadField& K, const DescendedOperator& op,
                                   const TupleOfQExpansions& A);

/// The split-prime descent images:
///   T:     (gamma_{B,pfrak,1})^{-k} p^2(p+1) T_p,  sources at sigma_{pfrak,1}
///   U:     (gamma_{B,pfrak,2})^{-k} p^4(T_p^2 + p^{k-1} + p^{k-3}), sigma_{pfrak,2}
///   Delta: the delta gamma tuple, identity polynomial, sigma_{pfrak,-4}
DescendedOperator desc_op_split(HeckeOp op, const Base& B, const PrimeSymbol& pfrak, long k);

/// The inert-prime descent images (diagonal: trivial scale and permutation):
///   T: p^{-k+4}(p^2+1) T_p^2 + (p^4 + p^3 + p - 1)
///   U: p^8 (T_p^4 + (p+3) p^{k-2} T_p^2 + p^{2k-4}(p^2+p+1))
DescendedOperator desc_op_inert(HeckeOp op, const QuadField& K, const Int& p, long k,
                                std::size_t base_size);

struct EquivarianceReport {
    Int d;             // field selector
    long k = 0;
    std::string op;    // "T", "U", "Delta"
    Int p;
    Int checked_N;     // coefficients 0..checked_N compared
    struct Mismatch {
        Int n;
        std::size_t b;
        FieldElement lhs, rhs;
    };
    std::vector<Mismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Checks commutation of the descent diagram on M:
/// descend(closed op) vs descended op applied to descend(M), exact
/// coefficient comparison over 0 <= n <= floor(min(N, N_alpha) / p^deg).
EquivarianceReport verify_equivariance(const MaassSystem& M, HeckeOp op, const PrimeSymbol& pfrak,
                                       const Int& N);

}  // namespace maass
