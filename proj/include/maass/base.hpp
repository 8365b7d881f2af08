#pragma once

#include <cstddef>
#include <vector>

#include "maass/class_group.hpp"

namespace maass {

/// One representative of the ordered base: the identity, or a scalar adele
/// supported at a split prime (value p at pfrak, p^-1 at its conjugate),
/// raised to `exponent`.
struct BaseEntry {
    bool is_identity = true;
    PrimeSymbol prime{};
    int exponent = 0;

    /// det(b) as a fractional ideal symbol (pfrak^{2m} pfrakbar^{-2m}).
    IdealSymbol det_symbol() const;
};

/// Ordered base of h_F scalar-matrix class representatives.
class Base {
  public:
    Base(const QuadField& K, std::vector<BaseEntry> entries);

    const QuadField& field() const { return K_; }
    const IdealClassGroup& group() const { return group_; }
    std::size_t size() const { return entries_.size(); }
    const BaseEntry& entry(std::size_t i) const { return entries_[i]; }
    std::size_t class_of_entry(std::size_t i) const { return classes_[i]; }
    /// Index of the entry representing the given class.
    std::size_t entry_of_class(std::size_t cls) const;

  private:
    QuadField K_;
    IdealClassGroup group_;
    std::vector<BaseEntry> entries_;
    std::vector<std::size_t> classes_;
};

/// Base construction: identity entry first, then split primes in ascending
/// order until every ideal class is represented. The adele exponent is a
/// parameter (2 matches the U(2,2) corollary).
Base build_base(const QuadField& K, int exponent = 2, const Int& prime_bound = Int(500));

/// The permutation of base indices induced by right multiplication by alpha_p^n.
struct ClassPermutation {
    PrimeSymbol prime;
    long n = 0;
    std::vector<std::size_t> map;  // entry index -> entry index

    std::size_t operator()(std::size_t i) const { return map[i]; }
    std::size_t inv(std::size_t i) const;
    bool is_identity() const;
};

ClassPermutation sigma(const Base& B, const PrimeSymbol& pfrak, long n);

ClassPermutation compose(const ClassPermutation& f, const ClassPermutation& g);

/// Per-entry values (det gamma*_{b,pfrak,n})^{-k}.
struct GammaTuple {
    PrimeSymbol prime;
    long n = 0;
    long k = 0;
    std::vector<FieldElement> value;
};

GammaTuple gamma_tuple(const Base& B, const PrimeSymbol& pfrak, long n, long k,
                       const Int& norm_bound = Int(1000000000000));

/// The gamma value for a single principal ideal symbol: conj(generator)^{-k}.
FieldElement gamma_of_ideal(const QuadField& K, const IdealSymbol& I, long k,
                            const Int& norm_bound = Int(1000000000000));

}  // namespace maass
