#include "maass/linalg.hpp"

#include <stdexcept>

namespace maass {

QMat2 QMat2::ident() {
    QMat2 r;
    r.m[0][0] = 1;
    r.m[1][1] = 1;
    return r;
}

QMat2 QMat2::diag(const Rat& a, const Rat& b) {
    QMat2 r;
    r.m[0][0] = a;
    r.m[1][1] = b;
    return r;
}

QMat2 QMat2::transpose() const {
    QMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = m[j][i];
    return r;
}

QMat2 QMat2::inverse() const {
    Rat D = det();
    if (D == 0) throw std::domain_error("QMat2::inverse: singular");
    QMat2 r;
    r.m[0][0] = m[1][1] / D;
    r.m[0][1] = -m[0][1] / D;
    r.m[1][0] = -m[1][0] / D;
    r.m[1][1] = m[0][0] / D;
    return r;
}

QMat2 operator*(const QMat2& a, const QMat2& b) {
    QMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r.m[i][j] += a.m[i][k] * b.m[k][j];
    return r;
}

QMat4 QMat4::ident() {
    QMat4 r;
    for (int i = 0; i < 4; ++i) r.m[i][i] = 1;
    return r;
}

QMat4 QMat4::transpose() const {
    QMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
    return r;
}

QMat4 operator*(const QMat4& a, const QMat4& b) {
    QMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) r.m[i][j] += a.m[i][k] * b.m[k][j];
    return r;
}

QMat4 QMat4::inverse() const {
    std::array<std::array<Rat, 8>, 4> w{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) w[i][j] = m[i][j];
        w[i][4 + i] = 1;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (w[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::domain_error("QMat4::inverse: singular");
        std::swap(w[col], w[piv]);
        Rat inv = 1 / w[col][col];
        for (int j = 0; j < 8; ++j) w[col][j] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || w[r][col] == 0) continue;
            Rat f = w[r][col];
            for (int j = 0; j < 8; ++j) w[r][j] -= f * w[col][j];
        }
    }
    QMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.m[i][j] = w[i][4 + j];
    return out;
}

Rat QMat4::det() const {
    std::array<std::array<Rat, 4>, 4> w = m;
    Rat d = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (w[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(w[col], w[piv]);
            d = -d;
        }
        d *= w[col][col];
        Rat inv = 1 / w[col][col];
        for (int r = col + 1; r < 4; ++r) {
            if (w[r][col] == 0) continue;
            Rat f = w[r][col] * inv;
            for (int j = col; j < 4; ++j) w[r][j] -= f * w[col][j];
        }
    }
    return d;
}

bool QMat4::is_integral() const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!is_integer(m[i][j])) return false;
    return true;
}

FMat2 FMat2::ident(const QuadField& K) {
    FMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = fe_rat(K, i == j ? 1 : 0);
    return r;
}

FMat2 FMat2::conj_transpose() const {
    FMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = m[j][i].conj();
    return r;
}

FMat2 operator*(const FMat2& a, const FMat2& b) {
    FMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            FieldElement s{a.m[0][0].d, 0, 0};
            for (int k = 0; k < 2; ++k) s = s + a.m[i][k] * b.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

std::array<int, 4> invariant_factor_valuations(const QMat4& A, const Int& p) {
    // v(d_1...d_k) = min over kxk minors of the p-valuation; compute the
    // gcd-of-minors chain exactly on a scaled integral matrix, then remove the
    // scaling s from each invariant factor.
    Int den = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) den = lcm(den, A.m[i][j].get_den());
    int s = valuation(den, p);
    std::array<std::array<Int, 4>, 4> M;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat q = A.m[i][j] * Rat(den);
            M[i][j] = q.get_num();
        }
    // minor gcd valuations via recursive expansion over all index subsets
    auto minor_val = [&](int k) {
        int best = -1;
        std::vector<int> rows(k), cols(k);
        // iterate over k-subsets of {0,1,2,3} for rows and cols
        std::vector<std::vector<int>> subs;
        for (int mask = 0; mask < 16; ++mask) {
            if (__builtin_popcount(mask) != k) continue;
            std::vector<int> s2;
            for (int b = 0; b < 4; ++b)
                if (mask & (1 << b)) s2.push_back(b);
            subs.push_back(s2);
        }
        for (auto& R : subs)
            for (auto& C : subs) {
                // determinant of the kxk submatrix by Laplace (k <= 4)
                std::vector<std::vector<Int>> sm(k, std::vector<Int>(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sm[i][j] = M[R[i]][C[j]];
                // recursive det
                auto det = [&](auto&& self, const std::vector<std::vector<Int>>& a) -> Int {
                    int n = static_cast<int>(a.size());
                    if (n == 1) return a[0][0];
                    Int r = 0;
                    for (int j = 0; j < n; ++j) {
                        if (a[0][j] == 0) continue;
                        std::vector<std::vector<Int>> sub(n - 1, std::vector<Int>(n - 1));
                        for (int i = 1; i < n; ++i) {
                            int jj = 0;
                            for (int j2 = 0; j2 < n; ++j2) {
                                if (j2 == j) continue;
                                sub[i - 1][jj++] = a[i][j2];
                            }
                        }
                        Int term = a[0][j] * self(self, sub);
                        r += (j % 2 == 0) ? term : -term;
                    }
                    return r;
                };
                Int dv = det(det, sm);
                if (dv == 0) continue;
                int v = valuation(dv, p);
                if (best < 0 || v < best) best = v;
            }
        if (best < 0) throw std::domain_error("invariant_factor_valuations: singular matrix");
        return best;
    };
    std::array<int, 4> g{};
    for (int k = 1; k <= 4; ++k) g[k - 1] = minor_val(k);
    std::array<int, 4> out;
    out[0] = g[0] - s;
    for (int k = 1; k < 4; ++k) out[k] = g[k] - g[k - 1] - s;
    return out;
}

}  // namespace maass
