#include "maass/descent.hpp"

#include <stdexcept>

namespace maass {

TupleOfQExpansions descend(const MaassSystem& M, const Int& N) {
    if (N > M.N_alpha) throw std::invalid_argument("descend: N exceeds alpha support bound");
    TupleOfQExpansions out;
    for (std::size_t b = 0; b < M.B.size(); ++b) {
        QExpansion F = zero_expansion(M.K, M.k - 1, N);
        for (Int n = 0; n <= N; ++n)
            F.a[n.get_ui()] = Rat(a_F(M.K, n)) * M.alpha_at(b, Rat(n));
        out.f.push_back(std::move(F));
    }
    return out;
}

namespace {

QExpansion truncate(const QuadField& K, const QExpansion& Q, const Int& N) {
    if (N > Q.N) throw std::invalid_argument("truncate: cannot extend");
    QExpansion R = zero_expansion(K, Q.weight, N);
    for (Int n = 0; n <= N; ++n) R.a[n.get_ui()] = Q.at(Rat(n));
    return R;
}

void add_scaled(QExpansion& acc, const Rat& c, const QExpansion& Q) {
    for (Int n = 0; n <= acc.N; ++n) acc.a[n.get_ui()] = acc.a[n.get_ui()] + c * Q.at(Rat(n));
}

Int int_pow(const Int& p, std::size_t e) { return ipow(p, static_cast<unsigned long>(e)); }

}  // namespace

TupleOfQExpansions apply_descended(const QuadField& K, const DescendedOperator& op,
                                   const TupleOfQExpansions& A) {
    if (op.poly.empty() || op.scale.size() != A.f.size() || op.perm.size() != A.f.size())
        throw std::invalid_argument("apply_descended: malformed operator");
    std::size_t deg = op.poly.size() - 1;
    TupleOfQExpansions out;
    for (std::size_t b = 0; b < A.f.size(); ++b) {
        const QExpansion& src = A.f[op.perm[b]];
        Int Nout = src.N / int_pow(op.p, deg);
        QExpansion acc = zero_expansion(K, src.weight, Nout);
        QExpansion cur = src;
        for (std::size_t i = 0; i <= deg; ++i) {
            if (op.poly[i] != 0) add_scaled(acc, op.poly[i], truncate(K, cur, Nout));
            if (i < deg) cur = hecke_Tp(K, cur, op.p);
        }
        for (auto& a : acc.a) a = op.scale[b] * a;
        out.f.push_back(std::move(acc));
    }
    return out;
}

DescendedOperator desc_op_split(HeckeOp op, const Base& B, const PrimeSymbol& pfrak, long k) {
    const QuadField& K = B.field();
    if (divides(pfrak.p, K.D_F) || splitting(K, pfrak.p).kind != SplitKind::split)
        throw std::invalid_argument("desc_op_split: prime not split");
    if (k % K.w != 0) throw std::invalid_argument("desc_op_split: weight parity");
    const Int& p = pfrak.p;
    DescendedOperator D;
    D.p = p;
    switch (op) {
        case HeckeOp::T: {
            D.scale = gamma_tuple(B, pfrak, 1, k).value;
            D.poly = {Rat(0), Rat(p * p * (p + 1))};
            D.perm = sigma(B, pfrak, 1).map;
            break;
        }
        case HeckeOp::U: {
            D.scale = gamma_tuple(B, pfrak, 2, k).value;
            Rat p4 = rpow(Rat(p), 4);
            D.poly = {p4 * (rpow(Rat(p), k - 1) + rpow(Rat(p), k - 3)), Rat(0), p4};
            D.perm = sigma(B, pfrak, 2).map;
            break;
        }
        case HeckeOp::Delta: {
            ClassPermutation s = sigma(B, pfrak, -4);
            for (std::size_t b = 0; b < B.size(); ++b) {
                IdealSymbol J = B.entry(b).det_symbol();
                J.mul(IdealSymbol::prime(pfrak, -2));
                J.mul(IdealSymbol::prime(pfrak.conj(), 2));
                J.mul(B.entry(s(b)).det_symbol().inverse());
                D.scale.push_back(gamma_of_ideal(K, J, k));
            }
            D.poly = {Rat(1)};
            D.perm = s.map;
            break;
        }
    }
    return D;
}

DescendedOperator desc_op_inert(HeckeOp op, const QuadField& K, const Int& p, long k,
                                std::size_t base_size) {
    if (divides(p, K.D_F) || splitting(K, p).kind != SplitKind::inert)
        throw std::invalid_argument("desc_op_inert: prime not inert");
    DescendedOperator D;
    D.p = p;
    D.scale.assign(base_size, fe_rat(K, 1));
    for (std::size_t b = 0; b < base_size; ++b) D.perm.push_back(b);
    switch (op) {
        case HeckeOp::T:
            D.poly = {Rat(p * p * p * p + p * p * p + p - 1), Rat(0),
                      rpow(Rat(p), -k + 4) * Rat(p * p + 1)};
            break;
        case HeckeOp::U: {
            Rat p8 = rpow(Rat(p), 8);
            D.poly = {p8 * rpow(Rat(p), 2 * k - 4) * Rat(p * p + p + 1), Rat(0),
                      p8 * Rat(p + 3) * rpow(Rat(p), k - 2), Rat(0), p8};
            break;
        }
        default:
            throw std::invalid_argument("desc_op_inert: only T and U are defined");
    }
    return D;
}

EquivarianceReport verify_equivariance(const MaassSystem& M, HeckeOp op, const PrimeSymbol& pfrak,
                                       const Int& N) {
    EquivarianceReport rep;
    rep.d = M.K.d;
    rep.k = M.k;
    rep.op = op == HeckeOp::T ? "T" : op == HeckeOp::U ? "U" : "Delta";
    rep.p = pfrak.p;
    Int N0 = N <= M.N_alpha ? N : M.N_alpha;
    std::size_t deg = op == HeckeOp::T ? 1 : op == HeckeOp::U ? 2 : 0;
    Int Nc = N0 / int_pow(pfrak.p, deg);
    rep.checked_N = Nc;

    MaassSystem G = apply_closed(op, M, pfrak);
    TupleOfQExpansions lhs = descend(G, Nc < G.N_alpha ? Nc : G.N_alpha);
    TupleOfQExpansions rhs =
        apply_descended(M.K, desc_op_split(op, M.B, pfrak, M.k), descend(M, N0));
    for (std::size_t b = 0; b < lhs.f.size(); ++b)
        for (Int n = 0; n <= Nc; ++n) {
            FieldElement l = lhs.f[b].at(Rat(n));
            FieldElement r = rhs.f[b].at(Rat(n));
            if (!(l == r)) rep.mismatches.push_back({n, b, l, r});
        }
    return rep;
}

}  // namespace maass
