#include "maass/classical.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace maass {

FieldElement QExpansion::at(const Rat& n) const {
    if (!is_integer(n) || n < 0) return FieldElement(a.front().d, 0, 0);
    Int m = n.get_num();
    if (m > N) throw std::out_of_range("QExpansion::at: index beyond truncation bound");
    return a[m.get_ui()];
}

bool QExpansion::is_zero() const {
    for (const auto& c : a)
        if (!c.is_zero()) return false;
    return true;
}

bool operator==(const QExpansion& x, const QExpansion& y) {
    return x.weight == y.weight && x.level == y.level && x.N == y.N && x.a == y.a;
}

QExpansion zero_expansion(const QuadField& K, long weight, const Int& N) {
    QExpansion q{weight, K.D_F, N, {}};
    q.a.assign(N.get_ui() + 1, fe_rat(K, 0));
    return q;
}

QExpansion hecke_Tp(const QuadField& K, const QExpansion& Q, const Int& p) {
    if (!is_prime(p) || divides(p, K.D_F))
        throw std::invalid_argument("hecke_Tp: p must be prime to the level");
    Int M = Q.N / p;
    QExpansion out = zero_expansion(K, Q.weight, M);
    Rat scale = Rat(chi_F(K, p)) * rpow(Rat(p), Q.weight - 1);  // chi(p) p^{k-2}
    for (Int n = 0; n <= M; ++n) {
        FieldElement v = Q.at(Rat(n * p));
        if (divides(p, n)) v = v + scale * Q.at(Rat(n / p));
        out.a[n.get_ui()] = v;
    }
    return out;
}

Rat eisenstein_eigenvalue(const QuadField& K, long k, const Int& p) {
    return 1 + Rat(chi_F(K, p)) * rpow(Rat(p), k - 2);
}

QExpansion eisenstein(const QuadField& K, long k, const Int& N) {
    // chi_F is odd, so weight k-1 must be odd
    if (k % 2 != 0 || k % K.w != 0)
        throw std::invalid_argument("eisenstein: weight parity/unit mismatch");
    QExpansion out = zero_expansion(K, k - 1, N);
    for (Int n = 1; n <= N; ++n) {
        Rat s = 0;
        for (const Int& d : divisors(n)) s += Rat(chi_F(K, d)) * rpow(Rat(d), k - 2);
        out.a[n.get_ui()] = fe_rat(K, s);
    }
    return out;
}

namespace {

// Residues D_F * N(alpha) mod D_F over the inverse-different torsion group,
// computed once per field.
std::vector<Int> dual_norm_residues(const QuadField& K) {
    // generator of d^{-1} as a fractional ideal: sqrt(d)/|d| if d = 1 mod 4,
    // else sqrt(d)/(2|d|)
    Int ad = -K.d;
    FieldElement g(K.d, 0, K.omega_half ? Rat(1, ad) : Rat(1, 2 * ad));
    std::map<std::pair<Rat, Rat>, Int> cosets;
    FieldElement w = fe_omega(K);
    for (Int u = 0; u < K.D_F; ++u) {
        for (Int v = 0; v < K.D_F; ++v) {
            FieldElement alpha = (fe_rat(K, Rat(u)) + Rat(v) * w) * g;
            // canonical coset representative of alpha mod O_F
            Int U, V, den;
            integral_coords(K, alpha, U, V, den);
            Rat cu = Rat(((U % den) + den) % den, den);
            cu.canonicalize();
            Rat cv = Rat(((V % den) + den) % den, den);
            cv.canonicalize();
            Rat nm = Rat(K.D_F) * alpha.norm();
            if (!is_integer(nm)) throw std::logic_error("a_F: D_F N(alpha) not integral");
            Int r = ((nm.get_num() % K.D_F) + K.D_F) % K.D_F;
            auto [it, fresh] = cosets.emplace(std::make_pair(cu, cv), r);
            if (!fresh && it->second != r) throw std::logic_error("a_F: residue not coset-constant");
        }
    }
    std::vector<Int> out;
    for (auto& [key, r] : cosets) out.push_back(r);
    return out;
}

}  // namespace

Int a_F(const QuadField& K, const Int& n) {
    if (n < 0) throw std::invalid_argument("a_F: negative argument");
    static std::map<Int, std::vector<Int>> cache;
    auto it = cache.find(K.d);
    if (it == cache.end()) it = cache.emplace(K.d, dual_norm_residues(K)).first;
    Int target = (((-n) % K.D_F) + K.D_F) % K.D_F;
    Int count = 0;
    for (const Int& r : it->second)
        if (r == target) ++count;
    return count;
}

}  // namespace maass
