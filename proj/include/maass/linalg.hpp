#pragma once

#include <array>

#include "maass/field.hpp"

namespace maass {

/// 2x2 matrix over Q.
struct QMat2 {
    std::array<std::array<Rat, 2>, 2> m{};

    static QMat2 ident();
    static QMat2 diag(const Rat& a, const Rat& b);
    QMat2 transpose() const;
    Rat det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    QMat2 inverse() const;
    friend QMat2 operator*(const QMat2& a, const QMat2& b);
    friend bool operator==(const QMat2& a, const QMat2& b) = default;
};

/// 4x4 matrix over Q.
struct QMat4 {
    std::array<std::array<Rat, 4>, 4> m{};

    static QMat4 ident();
    QMat4 transpose() const;
    QMat4 inverse() const;  // Gauss-Jordan, exact
    Rat det() const;
    bool is_integral() const;
    friend QMat4 operator*(const QMat4& a, const QMat4& b);
    friend bool operator==(const QMat4& a, const QMat4& b) = default;
};

/// 2x2 matrix over the quadratic field.
struct FMat2 {
    std::array<std::array<FieldElement, 2>, 2> m{};

    static FMat2 ident(const QuadField& K);
    FMat2 conj_transpose() const;
    FieldElement det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    friend FMat2 operator*(const FMat2& a, const FMat2& b);
};

/// p-adic valuations of the invariant factors of a nonsingular rational
/// matrix (Smith normal form over Z_p), ascending.
std::array<int, 4> invariant_factor_valuations(const QMat4& A, const Int& p);

}  // namespace maass
