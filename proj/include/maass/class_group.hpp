#pragma once

#include <vector>

#include "maass/field.hpp"

namespace maass {

/// Primitive positive definite binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    Int a, b, c;
    Int disc() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

/// Gauss reduction.
QuadForm reduce(QuadForm f);

/// Composition of forms of the same discriminant (Dirichlet composition after
/// moving to coprime leading coefficients), reduced output.
QuadForm compose(const QuadForm& f, const QuadForm& g);

QuadForm principal_form(const Int& disc);
inline QuadForm form_inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

/// Cl_F as the set of reduced forms of disc(F) with its composition table.
class IdealClassGroup {
  public:
    explicit IdealClassGroup(const QuadField& K);

    const std::vector<QuadForm>& elements() const { return elems_; }
    std::size_t order() const { return elems_.size(); }
    std::size_t identity() const { return id_; }
    std::size_t index_of(const QuadForm& reduced) const;
    std::size_t compose_idx(std::size_t i, std::size_t j) const { return table_[i][j]; }
    std::size_t inverse_idx(std::size_t i) const;
    std::size_t power_idx(std::size_t i, long n) const;

    /// Class of a split prime symbol via the form correspondence.
    std::size_t class_of_prime(const QuadField& K, const PrimeSymbol& s) const;
    /// Class of a fractional ideal symbol.
    std::size_t class_of(const QuadField& K, const IdealSymbol& I) const;
    /// Order of an element in the group.
    std::size_t element_order(std::size_t i) const;

  private:
    Int disc_;
    std::vector<QuadForm> elems_;
    std::size_t id_;
    std::vector<std::vector<std::size_t>> table_;
};

}  // namespace maass
