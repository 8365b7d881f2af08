#include "maass/hecke.hpp"

#include <stdexcept>

namespace maass {

namespace {

QMat4 q4(std::initializer_list<std::initializer_list<Rat>> rows) {
    QMat4 A;
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (const auto& x : row) A.m[i][j++] = x;
        ++i;
    }
    return A;
}

QMat4 q4diag(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
    QMat4 A;
    A.m[0][0] = a;
    A.m[1][1] = b;
    A.m[2][2] = c;
    A.m[3][3] = d;
    return A;
}

}  // namespace

QMat4 hecke_J() {
    QMat4 J;
    J.m[0][2] = -1;
    J.m[1][3] = -1;
    J.m[2][0] = 1;
    J.m[3][1] = 1;
    return J;
}

CosetTable coset_table(HeckeOp op, const Int& p) {
    CosetTable t;
    t.op = op;
    t.p = p;
    Rat P(p), ip(1, p);
    switch (op) {
        case HeckeOp::T: {
            for (Int a = 0; a < p; ++a)
                for (Int b = 0; b < p; ++b)
                    for (Int c = 0; c < p; ++c)
                        t.reps.emplace_back(
                            q4({{ip, Rat(a) * ip, Rat(b) * ip, Rat(c) * ip},
                                {0, 1, 0, 0},
                                {0, 0, 1, 0},
                                {0, 0, 0, 1}}),
                            q4({{1, 0, Rat(b), 0},
                                {0, 1, Rat(c), 0},
                                {0, 0, P, 0},
                                {0, 0, Rat(-a), 1}}));
            for (Int d = 0; d < p; ++d)
                for (Int e = 0; e < p; ++e)
                    t.reps.emplace_back(q4({{1, 0, 0, 0},
                                            {0, ip, Rat(d) * ip, Rat(e) * ip},
                                            {0, 0, 1, 0},
                                            {0, 0, 0, 1}}),
                                        q4({{1, 0, 0, Rat(d)},
                                            {0, 1, 0, Rat(e)},
                                            {0, 0, 1, 0},
                                            {0, 0, 0, P}}));
            for (Int f = 0; f < p; ++f)
                t.reps.emplace_back(
                    q4({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, ip, Rat(f) * ip}, {0, 0, 0, 1}}),
                    q4({{P, 0, 0, 0}, {Rat(-f), 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
            t.reps.emplace_back(q4diag(1, 1, 1, ip), q4diag(1, P, 1, 1));
            break;
        }
        case HeckeOp::U: {
            for (Int b = 0; b < p; ++b)
                for (Int c = 0; c < p; ++c)
                    for (Int d = 0; d < p; ++d)
                        for (Int e = 0; e < p; ++e)
                            t.reps.emplace_back(
                                q4({{ip, 0, Rat(b) * ip, Rat(d) * ip},
                                    {0, ip, Rat(c) * ip, Rat(e) * ip},
                                    {0, 0, 1, 0},
                                    {0, 0, 0, 1}}),
                                q4({{1, 0, Rat(b), Rat(c)},
                                    {0, 1, Rat(d), Rat(e)},
                                    {0, 0, P, 0},
                                    {0, 0, 0, P}}));
            for (Int a = 0; a < p; ++a)
                for (Int c = 0; c < p; ++c)
                    for (Int f = 0; f < p; ++f)
                        t.reps.emplace_back(q4({{1, 0, 0, 0},
                                                {Rat(-f) * ip, ip, Rat(c) * ip, 0},
                                                {0, 0, 1, 0},
                                                {0, 0, Rat(-a) * ip, ip}}),
                                            q4({{1, Rat(a), 0, Rat(c)},
                                                {0, P, 0, 0},
                                                {0, 0, 1, Rat(f)},
                                                {0, 0, 0, P}}));
            for (Int e = 0; e < p; ++e)
                for (Int f = 0; f < p; ++f)
                    t.reps.emplace_back(q4({{1, 0, 0, 0},
                                            {Rat(-f) * ip, ip, 0, Rat(e) * ip},
                                            {0, 0, ip, 0},
                                            {0, 0, 0, 1}}),
                                        q4({{P, 0, 0, 0},
                                            {0, 1, 0, Rat(e)},
                                            {0, 0, 1, Rat(f)},
                                            {0, 0, 0, P}}));
            for (Int a = 0; a < p; ++a)
                for (Int b = 0; b < p; ++b)
                    t.reps.emplace_back(q4({{ip, 0, Rat(b) * ip, 0},
                                            {0, 1, 0, 0},
                                            {0, 0, 1, 0},
                                            {0, 0, Rat(-a) * ip, ip}}),
                                        q4({{1, Rat(a), Rat(b), 0},
                                            {0, P, 0, 0},
                                            {0, 0, P, 0},
                                            {0, 0, 0, 1}}));
            for (Int d = 0; d < p; ++d)
                t.reps.emplace_back(
                    q4({{ip, 0, 0, Rat(d) * ip}, {0, 1, 0, 0}, {0, 0, ip, 0}, {0, 0, 0, 1}}),
                    q4({{P, 0, 0, 0}, {0, 1, Rat(d), 0}, {0, 0, P, 0}, {0, 0, 0, 1}}));
            t.reps.emplace_back(q4diag(1, 1, ip, ip), q4diag(P, P, 1, 1));
            break;
        }
        case HeckeOp::Delta:
            t.reps.emplace_back(q4diag(P, P, P, P), q4diag(ip, ip, ip, ip));
            break;
    }
    return t;
}

namespace {

bool p_integral(const QMat4& A, const Int& p) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (divides(p, A.m[i][j].get_den())) return false;
    return true;
}

int rat_val4(const Rat& q, const Int& p) {
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

std::array<int, 4> expected_profile(HeckeOp op) {
    switch (op) {
        case HeckeOp::T:
            return {-1, 0, 0, 0};
        case HeckeOp::U:
            return {-1, -1, 0, 0};
        default:
            return {1, 1, 1, 1};
    }
}

}  // namespace

TableVerdict validate_coset_table(const CosetTable& t) {
    TableVerdict v;
    QMat4 J = hecke_J();
    std::array<int, 4> want = expected_profile(t.op);
    for (std::size_t i = 0; i < t.reps.size(); ++i) {
        const auto& [A1, A2] = t.reps[i];
        if (!(A1 * J * A2.transpose() == J)) {
            v.valid = false;
            v.reason = "pair compatibility A1 J A2^t = J failed";
            v.entry_witness = i;
            return v;
        }
        if (invariant_factor_valuations(A1, t.p) != want) {
            v.valid = false;
            v.reason = "representative not in the defining double coset";
            v.entry_witness = i;
            return v;
        }
    }
    for (std::size_t i = 0; i < t.reps.size(); ++i)
        for (std::size_t j = i + 1; j < t.reps.size(); ++j) {
            QMat4 C = t.reps[i].first * t.reps[j].first.inverse();
            if (p_integral(C, t.p) && rat_val4(C.det(), t.p) == 0) {
                v.valid = false;
                v.reason = "representatives lie in the same left coset";
                v.pair_witness = {i, j};
                return v;
            }
        }
    return v;
}

namespace {

// Place the GL2 pair at the requested prime of the split pair: bar swaps the
// two components.
MatPair orient(const MatPair& w, bool bar) {
    if (!bar) return w;
    return {w.w2, w.w1};
}

void require_split(const QuadField& K, const PrimeSymbol& pfrak) {
    if (divides(pfrak.p, K.D_F)) throw std::invalid_argument("hecke: prime divides D_F");
    if (splitting(K, pfrak.p).kind != SplitKind::split)
        throw std::invalid_argument("hecke: prime not split");
}

}  // namespace

FieldElement apply_T_direct(const MaassSystem& M, const PrimeSymbol& pfrak, const HermitianForm& h,
                            std::size_t b) {
    require_split(M.K, pfrak);
    const Int& p = pfrak.p;
    AdelicPoint q0 = AdelicPoint::at_base(b);
    FieldElement s1 = fe_rat(M.K, 0), s2 = fe_rat(M.K, 0);
    for (Int a = 0; a <= p; ++a) {
        MatPair w = word_alpha(p, a);
        s1 = s1 + coeff_at(M, h, q0.modified(p, orient(w, pfrak.bar)));
        s2 = s2 + coeff_at(M, h, q0.modified(p, orient(mp_hat(w), pfrak.bar)));
    }
    return Rat(p * p) * s1 + s2;
}

FieldElement apply_U_direct(const MaassSystem& M, const PrimeSymbol& pfrak, const HermitianForm& h,
                            std::size_t b) {
    require_split(M.K, pfrak);
    const Int& p = pfrak.p;
    AdelicPoint q0 = AdelicPoint::at_base(b);
    MatPair beta = word_beta(p);
    FieldElement out = Rat(p * p * p * p) *
                       coeff_at(M, h, q0.modified(p, orient(beta, pfrak.bar)));
    out = out + coeff_at(M, h, q0.modified(p, orient(mp_hat(beta), pfrak.bar)));
    FieldElement s = fe_rat(M.K, 0);
    for (Int a = 0; a <= p; ++a)
        for (Int c = 0; c <= p; ++c) {
            MatPair w = mp_mul(word_gamma(p, a), mp_hat(word_gamma(p, c)));
            s = s + coeff_at(M, h, q0.modified(p, orient(w, pfrak.bar)));
        }
    return out + Rat(p) * s;
}

FieldElement apply_Delta_direct(const MaassSystem& M, const PrimeSymbol& pfrak,
                                const HermitianForm& h, std::size_t b) {
    require_split(M.K, pfrak);
    const Int& p = pfrak.p;
    return coeff_at(M, h, AdelicPoint::at_base(b).modified(p, orient(word_delta(p), pfrak.bar)));
}

FieldElement case_formula_eval(const MaassSystem& M, const PrimeSymbol& pfrak, const HermitianForm& h,
                            std::size_t b) {
    require_split(M.K, pfrak);
    const Int& p = pfrak.p;
    if (h.is_zero() || !in_T(M.K, h)) throw std::invalid_argument("case_formula_eval: bad form");
    ClassPermutation s = sigma(M.B, pfrak, 1);
    GammaTuple G = gamma_tuple(M.B, pfrak, 1, M.k);
    std::size_t b1 = s(b);
    Rat D = Rat(M.K.D_F) * h.det();
    Int eps = epsilon(M.K, h);
    Rat Dprime = D / Rat(eps * eps);

    // sum over d | p^n eps of d^{k-1} alpha_{b1}(D d^{-2} p^m); empty when
    // p^n eps is not a positive integer
    auto sumA = [&](int n, int m) {
        Rat bound = Rat(eps) * rpow(Rat(p), n);
        if (!is_integer(bound) || bound <= 0) return fe_rat(M.K, 0);
        FieldElement acc = fe_rat(M.K, 0);
        for (const Int& d : divisors(bound.get_num()))
            acc = acc + rpow(Rat(d), M.k - 1) * M.alpha_at(b1, D * rpow(Rat(p), m) / Rat(d * d));
        return acc;
    };

    bool pD = divides(p, Dprime.get_num()) && is_integer(Dprime);
    bool pe = divides(p, eps);
    FieldElement out = Rat(p * p) * sumA(0, 1);
    if (!pD && !pe) {
        out = out + Rat(p * p * p) * sumA(0, 1);
    } else if (!pD && pe) {
        out = out + rpow(Rat(p), M.k) * Rat(p + 1) * sumA(-1, -1) + Rat(p * p * p) * sumA(0, 1);
    } else if (pD && !pe) {
        out = out + Rat(p * p * (p - 1)) * sumA(0, 1) + Rat(p * p) * sumA(1, 1) +
              rpow(Rat(p), M.k) * sumA(0, -1);
    } else {
        out = out + Rat(p * p * (p - 1)) * sumA(0, 1) + Rat(p * p) * sumA(1, 1) +
              rpow(Rat(p), M.k) * sumA(0, -1) + rpow(Rat(p), M.k + 1) * sumA(-1, -1);
    }
    return G.value[b] * out;
}

namespace {

/// Shared skeleton of the closed-form operators: the output alpha at D is
/// gamma[b] * combine(alpha_{perm(b)}, D), zeroed off the achieved set.
template <typename F>
MaassSystem closed_action(const MaassSystem& M, const ClassPermutation& s,
                          const std::vector<FieldElement>& gamma, const Int& Nout, F&& combine) {
    MaassSystem g(M.K, M.k, M.B, Nout);
    for (std::size_t b = 0; b < M.B.size(); ++b)
        for (Int D = 0; D <= Nout; ++D) {
            if (a_F(M.K, D) == 0) continue;
            FieldElement v = gamma[b] * combine(s(b), D);
            if (!v.is_zero()) g.set_alpha(b, D, v);
        }
    return g;
}

}  // namespace

MaassSystem apply_T_closed(const MaassSystem& M, const PrimeSymbol& pfrak) {
    require_split(M.K, pfrak);
    const Int& p = pfrak.p;
    ClassPermutation s = sigma(M.B, pfrak, 1);
    GammaTuple G = gamma_tuple(M.B, pfrak, 1, M.k);
    Rat c1 = Rat(p * p * (p + 1)), c2 = rpow(Rat(p), M.k) * Rat(p + 1);
    return closed_action(M, s, G.value, Int(M.N_alpha / p), [&](std::size_t b1, const Int& D) {
        return c1 * M.alpha_at(b1, Rat(D * p)) + c2 * M.alpha_at(b1, Rat(D) / Rat(p));
    });
}

MaassSystem apply_U_closed(const MaassSystem& M, const PrimeSymbol& pfrak) {
    require_split(M.K, pfrak);
    const Int& p = pfrak.p;
    ClassPermutation s = sigma(M.B, pfrak, 2);
    GammaTuple G = gamma_tuple(M.B, pfrak, 2, M.k);
    Rat c0 = rpow(Rat(p), 4);
    Rat c1 = rpow(Rat(p), M.k + 3) + rpow(Rat(p), M.k + 2) + rpow(Rat(p), M.k + 1);
    Rat cp = rpow(Rat(p), M.k + 2), cpp = rpow(Rat(p), 2 * M.k);
    return closed_action(M, s, G.value, Int(M.N_alpha / (p * p)),
                         [&](std::size_t b1, const Int& D) {
                             FieldElement v = c0 * M.alpha_at(b1, Rat(D * p * p)) +
                                              c1 * M.alpha_at(b1, Rat(D));
                             if (divides(p, D)) v = v + cp * M.alpha_at(b1, Rat(D));
                             if (divides(p * p, D))
                                 v = v + cpp * M.alpha_at(b1, Rat(D) / Rat(p * p));
                             return v;
                         });
}

MaassSystem apply_Delta_closed(const MaassSystem& M, const PrimeSymbol& pfrak) {
    require_split(M.K, pfrak);
    const Int& p = pfrak.p;
    // det(delta_p) contributes pfrak^{-2} pfrakbar^{2}: the class shift is
    // [pfrak]^{-4} and the gamma factor is the generator of the full symbol.
    ClassPermutation s = sigma(M.B, pfrak, -4);
    std::vector<FieldElement> gam;
    for (std::size_t b = 0; b < M.B.size(); ++b) {
        IdealSymbol J = M.B.entry(b).det_symbol();
        J.mul(IdealSymbol::prime(pfrak, -2));
        J.mul(IdealSymbol::prime(pfrak.conj(), 2));
        J.mul(M.B.entry(s(b)).det_symbol().inverse());
        gam.push_back(gamma_of_ideal(M.K, J, M.k));
    }
    return closed_action(M, s, gam, M.N_alpha, [&](std::size_t b1, const Int& D) {
        return M.alpha_at(b1, Rat(D));
    });
}

MaassSystem apply_closed(HeckeOp op, const MaassSystem& M, const PrimeSymbol& pfrak) {
    switch (op) {
        case HeckeOp::T:
            return apply_T_closed(M, pfrak);
        case HeckeOp::U:
            return apply_U_closed(M, pfrak);
        default:
            return apply_Delta_closed(M, pfrak);
    }
}

FieldElement apply_direct(HeckeOp op, const MaassSystem& M, const PrimeSymbol& pfrak,
                          const HermitianForm& h, std::size_t b) {
    switch (op) {
        case HeckeOp::T:
            return apply_T_direct(M, pfrak, h, b);
        case HeckeOp::U:
            return apply_U_direct(M, pfrak, h, b);
        default:
            return apply_Delta_direct(M, pfrak, h, b);
    }
}

}  // namespace maass
