#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "maass/numeric.hpp"

namespace maass {

struct SearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The imaginary quadratic field Q(sqrt(d)), d < 0 squarefree, odd class number.
struct QuadField {
    Int d;           // squarefree, negative
    Int disc;        // field discriminant: d if d = 1 mod 4, else 4d (negative)
    Int D_F;         // |disc|
    bool omega_half; // integral basis {1,(1+sqrt d)/2} instead of {1,sqrt d}
    int w;           // #O_F^x
    Int h_F;         // class number, odd

    Int trace_omega() const { return omega_half ? 1 : 0; }
    Int norm_omega() const { return omega_half ? Int((1 - d) / 4) : Int(-d); }
};

/// Constructor of QuadField; h_F by exhaustive reduced-form enumeration.
/// Rejects non-squarefree d and even class numbers.
QuadField make_field(const Int& d);

/// chi_F(n): the Kronecker symbol of disc(F) at n.
int chi_F(const QuadField& K, const Int& n);

/// x + y*sqrt(d) with exact rational x, y.
struct FieldElement {
    Int d = 0;
    Rat x, y;

    FieldElement() = default;
    FieldElement(Int d_, Rat x_, Rat y_) : d(std::move(d_)), x(std::move(x_)), y(std::move(y_)) {}

    bool is_zero() const { return x == 0 && y == 0; }
    bool is_rational() const { return y == 0; }
    FieldElement conj() const { return {d, x, -y}; }
    Rat norm() const { return x * x - Rat(d) * y * y; }
    Rat trace() const { return 2 * x; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.x == b.x && a.y == b.y;
    }
    std::string str() const;
};

FieldElement fe_rat(const QuadField& K, const Rat& q);
FieldElement fe_omega(const QuadField& K);

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const Rat& c, const FieldElement& a);
FieldElement inverse(const FieldElement& a);
FieldElement operator/(const FieldElement& a, const FieldElement& b);
FieldElement fe_pow(const FieldElement& a, long e);

/// (u, v) in the integral basis {1, omega}.
struct AlgebraicInteger {
    Int u, v;
    FieldElement to_element(const QuadField& K) const;
};

/// Writes z = (U + V*omega)/den with integer U, V and positive integer den.
void integral_coords(const QuadField& K, const FieldElement& z, Int& U, Int& V, Int& den);

enum class SplitKind { split, inert, ramified };

/// Splitting of a rational prime, with the residue fixing the embedding labeled p-frak.
struct SplittingType {
    Int p;
    SplitKind kind;
    Int r;         // split only: r^2 = d (mod p), the sqrt(d) image under phi_pfrak
    Int omega_root; // split only: root of the minimal polynomial of omega mod p
};

SplittingType splitting(const QuadField& K, const Int& p);

/// phi_pfrak mod p^prec for a split prime: exact ring map O_F -> Z/p^prec,
/// extended to p-integral field elements. `bar` selects the conjugate embedding.
class LocalEmbedding {
  public:
    LocalEmbedding(const QuadField& K, const SplittingType& s, int prec, bool bar);

    Int modulus() const { return pk_; }
    Int prec() const { return prec_; }
    const Int& p() const { return p_; }

    Int map(const FieldElement& z) const;
    /// Valuation of a nonzero element whose valuation is known to be < prec.
    int val(const FieldElement& z) const;

  private:
    QuadField K_;
    Int p_, pk_;
    int prec_;
    Int rho_;  // image of omega mod p^prec
};

/// One of the two primes over a split rational prime p: bar=false is the
/// embedding fixed by SplittingType::r, bar=true its conjugate.
struct PrimeSymbol {
    Int p;
    bool bar = false;
    bool operator==(const PrimeSymbol& o) const { return p == o.p && bar == o.bar; }
    bool operator<(const PrimeSymbol& o) const {
        if (p != o.p) return p < o.p;
        return bar < o.bar;
    }
    PrimeSymbol conj() const { return {p, !bar}; }
};

/// Fractional ideal supported on split primes: symbol -> exponent.
struct IdealSymbol {
    std::map<PrimeSymbol, int> e;

    static IdealSymbol one() { return {}; }
    static IdealSymbol prime(const PrimeSymbol& s, int n = 1);
    /// (m) for a positive integer m supported on split primes of K.
    static IdealSymbol rational(const QuadField& K, const Int& m);

    IdealSymbol& mul(const IdealSymbol& o, int mult = 1);
    IdealSymbol inverse() const;
    IdealSymbol conj() const;
    bool is_one() const { return e.empty(); }
    Rat norm() const;
    std::string str() const;
};

/// Valuation of a nonzero field element at a split prime symbol.
int val_at(const QuadField& K, const FieldElement& z, const PrimeSymbol& s);

/// Generator of a principal fractional ideal given as a symbol; nullopt if the
/// class is nontrivial. Enumerates algebraic integers of the forced norm.
/// Throws SearchExhausted when the forced norm exceeds norm_bound.
std::optional<FieldElement> find_generator(const QuadField& K, const IdealSymbol& I,
                                           const Int& norm_bound = Int(1000000000000));

}  // namespace maass
