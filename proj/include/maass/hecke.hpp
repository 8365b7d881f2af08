#pragma once

#include <optional>
#include <string>
#include <utility>

#include "maass/maass.hpp"

namespace maass {

enum class HeckeOp { T, U, Delta };

/// Left-coset representatives of a split-prime Hecke double coset, as exact
/// rational 4x4 pairs (A1, A2) with A2 = -J (A1^t)^{-1} J.
struct CosetTable {
    HeckeOp op = HeckeOp::T;
    Int p;
    std::vector<std::pair<QMat4, QMat4>> reps;
};

/// The symplectic-type reference matrix J = [[0, -I2], [I2, 0]].
QMat4 hecke_J();

/// Representative lists: T -> p^3+p^2+p+1 entries, U -> p^4+p^3+2p^2+p+1,
/// Delta -> 1, parameterized by residues mod p.
CosetTable coset_table(HeckeOp op, const Int& p);

struct TableVerdict {
    bool valid = true;
    std::string reason;
    std::optional<std::pair<std::size_t, std::size_t>> pair_witness;  // inequivalence failure
    std::optional<std::size_t> entry_witness;                         // per-entry failure
};

/// Checks pair compatibility A1 J A2^t = J, pairwise K_p-inequivalence
/// (p-integrality and p-unit determinant of A1 B1^{-1}), and membership in
/// the defining double coset via p-local invariant factors.
TableVerdict validate_coset_table(const CosetTable& t);

/// Direct coset-sum actions on a single normalized coefficient, evaluated
/// entirely through coeff_at:
///   T:     p^2 sum_a c(h, q alpha_a) + sum_a c(h, q alpha-hat_a)
///   U:     p^4 c(h, q beta) + c(h, q beta-hat) + p sum_{a,c} c(h, q gamma_a gamma-hat_c)
///   Delta: c(h, q delta)
FieldElement apply_T_direct(const MaassSystem& M, const PrimeSymbol& pfrak, const HermitianForm& h,
                            std::size_t b);
FieldElement apply_U_direct(const MaassSystem& M, const PrimeSymbol& pfrak, const HermitianForm& h,
                            std::size_t b);
FieldElement apply_Delta_direct(const MaassSystem& M, const PrimeSymbol& pfrak,
                                const HermitianForm& h, std::size_t b);

/// The four-case aggregate evaluation of the T action (an independent middle
/// form between the direct coset sum and the closed formula), with
/// sum_n A^(m) = sum_{d | p^n eps(h)} d^{k-1} c_{b',f}(D d^{-2} p^m).
FieldElement case_formula_eval(const MaassSystem& M, const PrimeSymbol& pfrak, const HermitianForm& h,
                            std::size_t b);

/// Closed-form actions on alpha data. Output support bounds: floor(N/p) for
/// T, floor(N/p^2) for U, N for Delta. Arguments outside the achieved set
/// {D : a_F(D) > 0} are set to zero.
MaassSystem apply_T_closed(const MaassSystem& M, const PrimeSymbol& pfrak);
MaassSystem apply_U_closed(const MaassSystem& M, const PrimeSymbol& pfrak);
MaassSystem apply_Delta_closed(const MaassSystem& M, const PrimeSymbol& pfrak);

MaassSystem apply_closed(HeckeOp op, const MaassSystem& M, const PrimeSymbol& pfrak);
FieldElement apply_direct(HeckeOp op, const MaassSystem& M, const PrimeSymbol& pfrak,
                          const HermitianForm& h, std::size_t b);

}  // namespace maass
