#include "maass/hermlat.hpp"

#include <stdexcept>

namespace maass {

FMat2 HermitianForm::matrix(const QuadField& K) const {
    FMat2 H;
    H.m[0][0] = fe_rat(K, a);
    H.m[0][1] = b;
    H.m[1][0] = b.conj();
    H.m[1][1] = fe_rat(K, c);
    return H;
}

HermitianForm operator+(const HermitianForm& x, const HermitianForm& y) {
    return {x.a + y.a, x.c + y.c, x.b + y.b};
}

HermitianForm operator-(const HermitianForm& x, const HermitianForm& y) {
    return {x.a - y.a, x.c - y.c, x.b - y.b};
}

HermitianForm operator*(const Rat& c, const HermitianForm& x) {
    return {c * x.a, c * x.c, c * x.b};
}

std::array<Rat, 4> t_coordinates(const QuadField& K, const HermitianForm& h) {
    FieldElement wbar = fe_omega(K).conj();
    return {h.a, h.c, h.b.trace(), (wbar * h.b).trace()};
}

bool in_T(const QuadField& K, const HermitianForm& h) {
    for (const Rat& q : t_coordinates(K, h))
        if (!is_integer(q)) return false;
    return true;
}

int epsilon_p(const QuadField& K, const HermitianForm& h, const Int& p) {
    if (h.is_zero()) throw std::invalid_argument("epsilon_p: zero form");
    if (!in_T(K, h)) throw std::invalid_argument("epsilon_p: form not in T");
    int e = 0;
    Int pe = p;
    while (in_T(K, Rat(1, pe) * h)) {
        ++e;
        pe *= p;
    }
    return e;
}

Int epsilon(const QuadField& K, const HermitianForm& h) {
    if (h.is_zero()) throw std::invalid_argument("epsilon: zero form");
    if (!in_T(K, h)) throw std::invalid_argument("epsilon: form not in T");
    Int g = 0;
    for (const Rat& q : t_coordinates(K, h)) g = gcd(g, q.get_num());
    g = abs(g);
    Int result = 1;
    for (Int p = 2; p * p <= g; ++p) {
        if (!divides(p, g)) continue;
        result *= ipow(p, static_cast<unsigned long>(epsilon_p(K, h, p)));
        while (divides(p, g)) g /= p;
    }
    if (g > 1) result *= ipow(g, static_cast<unsigned long>(epsilon_p(K, h, g)));
    return result;
}

HermitianForm transform(const QuadField& K, const HermitianForm& h, const FMat2& u) {
    FMat2 r = u.conj_transpose() * h.matrix(K) * u;
    if (!r.m[0][0].is_rational() || !r.m[1][1].is_rational() || !(r.m[0][1] == r.m[1][0].conj()))
        throw std::logic_error("transform: result is not hermitian");
    return {r.m[0][0].x, r.m[1][1].x, r.m[0][1]};
}

std::vector<HermitianForm> enumerate_T(const QuadField& K, const Int& max_trace) {
    std::vector<HermitianForm> out;
    if (max_trace < 0) return out;
    Int ad = abs(K.d);
    for (Int a = 0; a <= max_trace; ++a) {
        for (Int c = 0; a + c <= max_trace; ++c) {
            Int ac4 = 4 * a * c;
            Int smax = sqrt(ac4);
            // generous bound for the second coordinate, filtered exactly below
            Int tmax = sqrt(ac4 * ad) + smax + 2;
            for (Int s = -smax; s <= smax; ++s) {
                for (Int t = -tmax; t <= tmax; ++t) {
                    Rat x(s, 2);
                    x.canonicalize();
                    Rat y;
                    if (K.omega_half) {
                        y = (x - Rat(t)) / Rat(K.d);
                    } else {
                        y = Rat(t, 2 * ad);
                        y.canonicalize();
                    }
                    FieldElement b(K.d, x, y);
                    HermitianForm h{Rat(a), Rat(c), b};
                    if (h.det() < 0) continue;
                    out.push_back(h);
                }
            }
        }
    }
    return out;
}

std::array<std::array<Int, 2>, 2> local_form(const QuadField& K, const HermitianForm& h,
                                             const SplittingType& s, int prec, bool bar) {
    LocalEmbedding emb(K, s, prec, bar);
    return {{{emb.map(fe_rat(K, h.a)), emb.map(h.b)},
             {emb.map(h.b.conj()), emb.map(fe_rat(K, h.c))}}};
}

namespace {

// An elementary shear over Z/p^k: E12(x) (upper) or E21(x) (lower).
struct Shear {
    bool lower;
    Int x;
};

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::logic_error("inv_mod: not invertible");
    return r;
}

// M <- M * E (column operation), entries mod pk.
void apply_right(std::array<std::array<Int, 2>, 2>& M, const Shear& e, const Int& pk) {
    if (e.lower) {  // E21: col0 += x * col1
        for (int i = 0; i < 2; ++i) M[i][0] = (M[i][0] + e.x * M[i][1]) % pk;
    } else {  // E12: col1 += x * col0
        for (int i = 0; i < 2; ++i) M[i][1] = (M[i][1] + e.x * M[i][0]) % pk;
    }
}

// M <- E * M (row operation), entries mod pk.
void apply_left(std::array<std::array<Int, 2>, 2>& M, const Shear& e, const Int& pk) {
    if (e.lower) {  // E21: row1 += x * row0
        for (int j = 0; j < 2; ++j) M[1][j] = (M[1][j] + e.x * M[0][j]) % pk;
    } else {  // E12: row0 += x * row1
        for (int j = 0; j < 2; ++j) M[0][j] = (M[0][j] + e.x * M[1][j]) % pk;
    }
}

// The swap [[0,-1],[1,0]] as three shears, in application order.
std::vector<Shear> swap_word(const Int& pk) {
    return {{true, 1}, {false, (pk - 1) % pk}, {true, 1}};
}

// Shear in SL2(O_F) with parameter xi.
FMat2 shear_matrix(const QuadField& K, bool lower, const FieldElement& xi) {
    FMat2 E = FMat2::ident(K);
    if (lower)
        E.m[1][0] = xi;
    else
        E.m[0][1] = xi;
    return E;
}

}  // namespace

Diagonalization diagonalize_mod(const QuadField& K, const HermitianForm& h, const Int& p, int n) {
    if (n < 1) throw std::invalid_argument("diagonalize_mod: precision must be positive");
    if (divides(p, K.D_F)) throw std::invalid_argument("diagonalize_mod: prime divides D_F");
    SplittingType sp = splitting(K, p);
    if (sp.kind != SplitKind::split) throw std::invalid_argument("diagonalize_mod: prime not split");

    Int eps = epsilon(K, h);
    HermitianForm h0 = Rat(1, eps) * h;
    Int pk = ipow(p, static_cast<unsigned long>(n));

    auto M = local_form(K, h0, sp, n, false);
    for (auto& row : M)
        for (auto& v : row) v = ((v % pk) + pk) % pk;

    std::vector<Shear> right_ops, left_ops;
    auto unit = [&](const Int& v) { return !divides(p, v); };

    // pivot: bring a unit into position (0,0)
    if (!unit(M[0][0])) {
        if (unit(M[0][1])) {
            for (const Shear& e : swap_word(pk)) {
                apply_right(M, e, pk);
                right_ops.push_back(e);
            }
        } else if (unit(M[1][0])) {
            for (const Shear& e : swap_word(pk)) {
                apply_left(M, e, pk);
                left_ops.push_back(e);
            }
        } else if (unit(M[1][1])) {
            for (const Shear& e : swap_word(pk)) {
                apply_right(M, e, pk);
                right_ops.push_back(e);
            }
            for (const Shear& e : swap_word(pk)) {
                apply_left(M, e, pk);
                left_ops.push_back(e);
            }
        } else {
            throw std::logic_error("diagonalize_mod: no unit entry after content removal");
        }
    }

    Int u0 = inv_mod(M[0][0], pk);
    if (M[0][1] % pk != 0) {
        Shear e{false, ((pk - M[0][1] % pk) * u0) % pk};
        apply_right(M, e, pk);
        right_ops.push_back(e);
    }
    if (M[1][0] % pk != 0) {
        Shear e{true, ((pk - M[1][0] % pk) * u0) % pk};
        apply_left(M, e, pk);
        left_ops.push_back(e);
    }

    // CRT idempotents in O_F/p^n: ehat -> (1, 0), echeck -> (0, 1) under the
    // pair of embeddings (phi, phi-bar).
    LocalEmbedding emb(K, sp, n, false), embb(K, sp, n, true);
    FieldElement omega = fe_omega(K);
    Int rho = emb.map(omega), rhob = embb.map(omega);
    Int B = inv_mod(((rho - rhob) % pk + pk) % pk, pk);
    Int A = ((-B * rhob) % pk + pk) % pk;
    auto idem = [&](bool bar_side) {
        Int u = bar_side ? Int((pk + 1 - A) % pk) : A;
        Int v = bar_side ? Int((pk - B) % pk) : Int(B % pk);
        return AlgebraicInteger{u, v}.to_element(K);
    };
    FieldElement ehat = idem(false), echeck = idem(true);

    // u = (right ops lifted through ehat) * (transposed left ops lifted
    // through echeck): phi(u) reproduces the column word, phi-bar(u) the
    // transpose of the row word.
    FMat2 u = FMat2::ident(K);
    for (const Shear& e : right_ops)
        u = u * shear_matrix(K, e.lower, Rat(e.x) * ehat);
    for (const Shear& e : left_ops)
        u = u * shear_matrix(K, !e.lower, Rat(e.x) * echeck);

    Diagonalization dg{u, ((M[0][0] % pk) + pk) % pk, ((M[1][1] % pk) + pk) % pk};
    if (divides(p, dg.a)) throw std::logic_error("diagonalize_mod: pivot lost invertibility");
    return dg;
}

bool check_diagonalization(const QuadField& K, const HermitianForm& h, const Diagonalization& dg,
                           const Int& p, int n) {
    // u must be integral with determinant 1
    FieldElement det = dg.u.det();
    if (!(det == fe_rat(K, 1))) return false;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Int U, V, den;
            integral_coords(K, dg.u.m[i][j], U, V, den);
            if (den != 1) return false;
        }
    if (divides(p, dg.a)) return false;
    HermitianForm target{Rat(epsilon(K, h)) * Rat(dg.a), Rat(epsilon(K, h)) * Rat(dg.d),
                         fe_rat(K, 0)};
    HermitianForm diff = transform(K, h, dg.u) - target;
    Int pk = ipow(p, static_cast<unsigned long>(n));
    return in_T(K, Rat(1, pk) * diff);
}

}  // namespace maass
