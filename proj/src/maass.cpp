#include "maass/maass.hpp"

#include <stdexcept>

namespace maass {

MaassSystem::MaassSystem(const QuadField& K_, long k_, Base B_, const Int& N)
    : K(K_), k(k_), B(std::move(B_)), N_alpha(N), alpha(B.size()) {
    if (k % K.w != 0)
        throw std::invalid_argument("MaassSystem: weight must be divisible by #O_F^x");
}

FieldElement MaassSystem::alpha_at(std::size_t b, const Rat& n) const {
    if (!is_integer(n) || n < 0) return fe_rat(K, 0);
    auto it = alpha[b].find(n.get_num());
    return it == alpha[b].end() ? fe_rat(K, 0) : it->second;
}

void MaassSystem::set_alpha(std::size_t b, const Int& n, const FieldElement& v) {
    if (n < 0 || n > N_alpha) throw std::out_of_range("MaassSystem::set_alpha");
    if (v.is_zero())
        alpha[b].erase(n);
    else
        alpha[b][n] = v;
}

bool MaassSystem::is_zero() const {
    for (const auto& t : alpha)
        if (!t.empty()) return false;
    return true;
}

MatPair mp_ident() { return {QMat2::ident(), QMat2::ident()}; }

MatPair mp_mul(const MatPair& a, const MatPair& b) { return {a.w1 * b.w1, a.w2 * b.w2}; }

MatPair mp_hat(const MatPair& a) {
    return {a.w2.transpose().inverse(), a.w1.transpose().inverse()};
}

MatPair word_alpha(const Int& p, const Int& a) {
    if (a < 0 || a > p) throw std::invalid_argument("word_alpha: residue out of range");
    MatPair w = mp_ident();
    if (a == p) {
        w.w1 = QMat2::diag(1, Rat(p));
    } else {
        w.w1.m[0][0] = Rat(p);
        w.w1.m[0][1] = Rat(-a);
    }
    return w;
}

MatPair word_beta(const Int& p) {
    MatPair w = mp_ident();
    w.w1 = QMat2::diag(Rat(p), Rat(p));
    return w;
}

MatPair word_gamma(const Int& p, const Int& a) {
    if (a < 0 || a > p) throw std::invalid_argument("word_gamma: residue out of range");
    MatPair w = mp_ident();
    if (a == p) {
        w.w1 = QMat2::diag(Rat(p), 1);
    } else {
        w.w1.m[1][0] = Rat(a);
        w.w1.m[1][1] = Rat(p);
    }
    return w;
}

MatPair word_delta(const Int& p) {
    Rat ip(1, p);
    return {QMat2::diag(ip, ip), QMat2::diag(Rat(p), Rat(p))};
}

AdelicPoint AdelicPoint::modified(const Int& p, const MatPair& w) const {
    AdelicPoint q = *this;
    for (auto& [pp, ww] : q.mods)
        if (pp == p) {
            ww = mp_mul(ww, w);
            return q;
        }
    q.mods.emplace_back(p, w);
    return q;
}

FieldElement krieg_coeff(const MaassSystem& M, std::size_t b, const HermitianForm& h) {
    const QuadField& K = M.K;
    if (h.is_zero()) throw std::invalid_argument("krieg_coeff: zero form");
    if (!in_T(K, h)) throw std::invalid_argument("krieg_coeff: form not in T");
    if (h.a < 0 || h.c < 0 || h.det() < 0)
        throw std::invalid_argument("krieg_coeff: form not positive semidefinite");
    Rat D = Rat(K.D_F) * h.det();
    FieldElement sum = fe_rat(K, 0);
    for (const Int& d : divisors(epsilon(K, h)))
        sum = sum + rpow(Rat(d), M.k - 1) * M.alpha_at(b, D / Rat(d * d));
    return sum;
}

namespace {

int rat_val(const Rat& q, const Int& p) {
    if (q == 0) throw std::domain_error("rat_val: zero");
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

// Smallest s >= 0 with p^s * W integral at p (entries may have p-power denominators).
int p_scale(const QMat2& W, const Int& p) {
    int s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (W.m[i][j] != 0) s = std::max(s, valuation(W.m[i][j].get_den(), p));
    return s;
}

// epsilon_p of q* h q from the split local picture: the minimal entry
// valuation of W2^t phi(h) W1. Negative when (q* h q)_p leaves T_p.
int local_content(const QuadField& K, const HermitianForm& h, const Int& p, const MatPair& W,
                  int eps_p_h) {
    SplittingType sp = splitting(K, p);
    int s1 = p_scale(W.w1, p), s2 = p_scale(W.w2, p);
    int m = eps_p_h + s1 + s2 + 24;
    Int pk = ipow(p, static_cast<unsigned long>(m));
    auto X = local_form(K, h, sp, m, false);
    Int ps1 = ipow(p, static_cast<unsigned long>(s1)), ps2 = ipow(p, static_cast<unsigned long>(s2));
    // integral scaled components
    Int A[2][2], Bm[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Rat a2 = Rat(ps2) * W.w2.m[j][i];  // transposed
            Rat b1 = Rat(ps1) * W.w1.m[i][j];
            if (!is_integer(a2) || !is_integer(b1))
                throw std::logic_error("local_content: non p-power denominator in word");
            A[i][j] = a2.get_num();
            Bm[i][j] = b1.get_num();
        }
    int best = m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Int e = 0;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) e += A[i][r] * X[r][c] * Bm[c][j];
            e = ((e % pk) + pk) % pk;
            if (e != 0) best = std::min(best, valuation(e, p));
        }
    if (best >= m) throw std::logic_error("local_content: precision exhausted");
    return best - s1 - s2;
}

}  // namespace

FieldElement coeff_at(const MaassSystem& M, const HermitianForm& h, const AdelicPoint& q) {
    const QuadField& K = M.K;
    if (h.is_zero()) throw std::invalid_argument("coeff_at: zero form");
    if (!in_T(K, h)) throw std::invalid_argument("coeff_at: form not in T");

    IdealSymbol det_sym = M.B.entry(q.b).det_symbol();
    Rat val_mult = 1;
    for (const auto& [p, W] : q.mods) {
        if (divides(p, K.D_F)) throw std::invalid_argument("coeff_at: prime divides D_F");
        if (splitting(K, p).kind != SplitKind::split)
            throw std::invalid_argument("coeff_at: modification at a non-split prime");
        int j1 = rat_val(W.w1.det(), p);
        int j2 = rat_val(W.w2.det(), p);
        det_sym.mul(IdealSymbol::prime(PrimeSymbol{p, false}, j1));
        det_sym.mul(IdealSymbol::prime(PrimeSymbol{p, true}, j2));
        val_mult *= rpow(Rat(p), j1 + j2);
    }

    std::size_t bp = M.B.entry_of_class(M.B.group().class_of(K, det_sym));
    IdealSymbol J = det_sym;
    J.mul(M.B.entry(bp).det_symbol().inverse());
    FieldElement gam = gamma_of_ideal(K, J, M.k);  // (det gamma*)^{-k}

    Int eps = epsilon(K, h);
    for (const auto& [p, W] : q.mods) {
        int e_h = epsilon_p(K, h, p);
        int e_loc = local_content(K, h, p, W, e_h);
        if (e_loc < 0) return fe_rat(K, 0);
        eps = eps / ipow(p, static_cast<unsigned long>(e_h)) *
              ipow(p, static_cast<unsigned long>(e_loc));
    }

    Rat D = Rat(K.D_F) * h.det() * val_mult;
    FieldElement sum = fe_rat(K, 0);
    for (const Int& d : divisors(eps))
        sum = sum + rpow(Rat(d), M.k - 1) * M.alpha_at(bp, D / Rat(d * d));
    return gam * sum;
}

ConsistencyResult is_maass_consistent(const QuadField& K, long k, const Base& B,
                                      const std::vector<HermitianForm>& hs,
                                      const std::vector<std::vector<FieldElement>>& value) {
    ConsistencyResult res;
    res.recovered.assign(B.size(), {});
    // recover candidate alphas from content-one entries
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (epsilon(K, hs[i]) != 1) continue;
        Rat Dq = Rat(K.D_F) * hs[i].det();
        Int D = Dq.get_num();
        for (std::size_t b = 0; b < B.size(); ++b) {
            auto it = res.recovered[b].find(D);
            if (it == res.recovered[b].end()) {
                res.recovered[b][D] = value[i][b];
            } else if (!(it->second == value[i][b])) {
                res.consistent = false;
                res.witness = {i, b};
                return res;
            }
        }
    }
    // re-evaluate everything through the Krieg condition
    for (std::size_t i = 0; i < hs.size(); ++i) {
        Rat Ddet = Rat(K.D_F) * hs[i].det();
        std::vector<Int> ds = divisors(epsilon(K, hs[i]));
        for (std::size_t b = 0; b < B.size(); ++b) {
            FieldElement sum = fe_rat(K, 0);
            bool underdetermined = false;
            for (const Int& d : ds) {
                Rat arg = Ddet / Rat(d * d);
                auto it = res.recovered[b].find(arg.get_num());
                if (it == res.recovered[b].end()) {
                    underdetermined = true;
                    break;
                }
                sum = sum + rpow(Rat(d), k - 1) * it->second;
            }
            if (underdetermined) {
                ++res.skipped;
                continue;
            }
            if (!(sum == value[i][b])) {
                res.consistent = false;
                res.witness = {i, b};
                return res;
            }
        }
    }
    return res;
}

std::vector<HermitianForm> table_domain(const QuadField& K, const Int& max_trace) {
    std::vector<HermitianForm> out;
    for (auto& h : enumerate_T(K, max_trace))
        if (!h.is_zero()) out.push_back(h);
    return out;
}

std::vector<std::vector<FieldElement>> coefficient_table(const MaassSystem& M,
                                                         const std::vector<HermitianForm>& hs,
                                                         bool parallel) {
    std::vector<std::vector<FieldElement>> out(hs.size());
    if (parallel) {
#ifdef MAASS_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(hs.size()); ++i) {
            std::vector<FieldElement> row;
            for (std::size_t b = 0; b < M.B.size(); ++b)
                row.push_back(krieg_coeff(M, b, hs[i]));
            out[i] = std::move(row);
        }
    } else {
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t b = 0; b < M.B.size(); ++b)
                out[i].push_back(krieg_coeff(M, b, hs[i]));
    }
    return out;
}

MaassSystem random_system(const QuadField& K, long k, const Base& B, const Int& N,
                          std::uint64_t seed) {
    MaassSystem M(K, k, B, N);
    std::uint64_t x = seed ? seed : 0x9e3779b97f4a7c15ULL;
    auto next = [&x]() {
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        return x >> 33;
    };
    for (std::size_t b = 0; b < B.size(); ++b)
        for (Int n = 0; n <= N; ++n) {
            long v = static_cast<long>(next() % 19) - 9;
            if (v != 0) M.set_alpha(b, n, fe_rat(K, Rat(v)));
        }
    return M;
}

MaassSystem lift_expansion(const QuadField& K, long k, const Base& B, const QExpansion& E) {
    if (E.weight != k - 1) throw std::invalid_argument("lift_expansion: weight mismatch");
    MaassSystem M(K, k, B, E.N);
    for (Int n = 0; n <= E.N; ++n) {
        Int an = a_F(K, n);
        if (an == 0) continue;  // projection: coefficients off the a_F support are dropped
        FieldElement v = Rat(1, an) * E.at(Rat(n));
        for (std::size_t b = 0; b < B.size(); ++b)
            if (!v.is_zero()) M.set_alpha(b, n, v);
    }
    return M;
}

}  // namespace maass
