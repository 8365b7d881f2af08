#include "maass/field.hpp"

#include <cmath>

namespace maass {

namespace {

// Class number by counting reduced positive definite forms (a,b,c) of
// discriminant `disc` < 0: b^2-4ac = disc, |b| <= a <= c, b >= 0 if |b|=a or a=c.
Int count_reduced_forms(const Int& disc) {
    Int count = 0;
    for (Int a = 1; 4 * a * a <= -disc + a * a; ++a) { // a <= sqrt(-disc/3)
        if (3 * a * a > -disc) break;
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - disc;
            if (!divides(4 * a, num)) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (c == a)) continue;
            if (b < 0 && (-b == a)) continue; // b = -a excluded by range anyway
            // primitive forms only (disc fundamental => automatic, keep the check)
            Int g = gcd(gcd(a, b), c);
            if (g != 1) continue;
            ++count;
        }
    }
    return count;
}

}  // namespace

QuadField make_field(const Int& d) {
    if (!is_squarefree_negative(d))
        throw std::invalid_argument("make_field: d must be a squarefree negative integer");
    QuadField K;
    K.d = d;
    Int dm4 = ((d % 4) + 4) % 4;
    K.omega_half = (dm4 == 1);
    K.disc = K.omega_half ? d : 4 * d;
    K.D_F = -K.disc;
    K.w = (d == -1) ? 4 : (d == -3) ? 6 : 2;
    K.h_F = count_reduced_forms(K.disc);
    if (divides(2, K.h_F))
        throw std::invalid_argument(
            "make_field: class number h_F = " + K.h_F.get_str() +
            " is even; this construction requires 2 not dividing h_F");
    return K;
}

int chi_F(const QuadField& K, const Int& n) {
    return kronecker(K.disc, n);
}

std::string FieldElement::str() const {
    if (y == 0) return x.get_str();
    return x.get_str() + " + " + y.get_str() + "*sqrt(" + d.get_str() + ")";
}

FieldElement fe_rat(const QuadField& K, const Rat& q) { return {K.d, q, 0}; }

FieldElement fe_omega(const QuadField& K) {
    if (K.omega_half) return {K.d, Rat(1, 2), Rat(1, 2)};
    return {K.d, 0, 1};
}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.d != b.d && !(a.is_zero() || b.is_zero()))
        throw std::invalid_argument("FieldElement: mixed fields");
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.is_zero() ? b.d : a.d, a.x + b.x, a.y + b.y};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.is_zero() ? b.d : a.d, a.x - b.x, a.y - b.y};
}

FieldElement operator-(const FieldElement& a) { return {a.d, -a.x, -a.y}; }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    Int d = a.is_zero() ? b.d : a.d;
    return {d, a.x * b.x + Rat(d) * a.y * b.y, a.x * b.y + a.y * b.x};
}

FieldElement operator*(const Rat& c, const FieldElement& a) { return {a.d, c * a.x, c * a.y}; }

FieldElement inverse(const FieldElement& a) {
    Rat n = a.norm();
    if (n == 0) throw std::domain_error("FieldElement: inverse of zero");
    return {a.d, a.x / n, -a.y / n};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * inverse(b); }

FieldElement fe_pow(const FieldElement& a, long e) {
    if (e < 0) return fe_pow(inverse(a), -e);
    FieldElement r{a.d, 1, 0};
    FieldElement base = a;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

FieldElement AlgebraicInteger::to_element(const QuadField& K) const {
    return fe_rat(K, Rat(u)) + Rat(v) * fe_omega(K);
}

void integral_coords(const QuadField& K, const FieldElement& z, Int& U, Int& V, Int& den) {
    // z = x + y sqrt(d); in basis {1, omega}: omega = sqrt(d) or (1+sqrt(d))/2.
    Rat cu, cv;
    if (K.omega_half) {
        cv = 2 * z.y;
        cu = z.x - z.y;
    } else {
        cu = z.x;
        cv = z.y;
    }
    den = lcm(cu.get_den(), cv.get_den());
    U = cu.get_num() * (den / cu.get_den());
    V = cv.get_num() * (den / cv.get_den());
    Int g = gcd(gcd(U, V), den);
    U /= g; V /= g; den /= g;
}

SplittingType splitting(const QuadField& K, const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("splitting: p must be prime");
    SplittingType s;
    s.p = p;
    if (divides(p, K.D_F)) {
        s.kind = SplitKind::ramified;
        return s;
    }
    s.kind = (chi_F(K, p) == 1) ? SplitKind::split : SplitKind::inert;
    if (s.kind == SplitKind::split) {
        // root of minimal polynomial of omega mod p
        Int t = K.trace_omega(), nm = K.norm_omega();
        for (Int x = 0; x < p; ++x) {
            if ((x * x - t * x + nm) % p == 0) { s.omega_root = x; break; }
        }
        // sqrt(d) = 2*omega - t when omega_half, else omega itself
        s.r = K.omega_half ? (((2 * s.omega_root - 1) % p) + p) % p : s.omega_root;
    }
    return s;
}

LocalEmbedding::LocalEmbedding(const QuadField& K, const SplittingType& s, int prec, bool bar)
    : K_(K), p_(s.p), prec_(prec) {
    if (s.kind != SplitKind::split)
        throw std::invalid_argument("LocalEmbedding: prime must split");
    pk_ = ipow(p_, static_cast<unsigned long>(prec));
    // Hensel-lift the omega root: f(x) = x^2 - t x + n, f'(root) is a unit mod p
    Int t = K.trace_omega(), nm = K.norm_omega();
    Int rho = s.omega_root;
    Int mod = p_;
    while (mod < pk_) {
        mod = mod * mod;
        if (mod > pk_) mod = pk_;
        Int f = ((rho * rho - t * rho + nm) % mod + mod) % mod;
        Int fp = ((2 * rho - t) % mod + mod) % mod;
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), fp.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw std::logic_error("LocalEmbedding: derivative not a unit");
        rho = ((rho - f * inv) % mod + mod) % mod;
    }
    if (bar) rho = ((t - rho) % pk_ + pk_) % pk_;
    rho_ = rho;
}

Int LocalEmbedding::map(const FieldElement& z) const {
    Int U, V, den;
    integral_coords(K_, z, U, V, den);
    if (divides(p_, den))
        throw std::domain_error("LocalEmbedding: element not p-integral");
    Int inv;
    Int d2 = ((den % pk_) + pk_) % pk_;
    if (mpz_invert(inv.get_mpz_t(), d2.get_mpz_t(), pk_.get_mpz_t()) == 0)
        throw std::logic_error("LocalEmbedding: denominator not invertible");
    Int r = ((U + V * rho_) % pk_ + pk_) % pk_;
    return (r * inv) % pk_;
}

int LocalEmbedding::val(const FieldElement& z) const {
    if (z.is_zero()) throw std::domain_error("LocalEmbedding::val of zero");
    Int m = map(z);
    if (m == 0) throw std::logic_error("LocalEmbedding::val: precision exhausted");
    return valuation(m, p_);
}

IdealSymbol IdealSymbol::prime(const PrimeSymbol& s, int n) {
    IdealSymbol I;
    if (n != 0) I.e[s] = n;
    return I;
}

IdealSymbol IdealSymbol::rational(const QuadField& K, const Int& m) {
    if (m <= 0) throw std::invalid_argument("IdealSymbol::rational: m must be positive");
    IdealSymbol I;
    Int rest = m;
    for (Int q = 2; q * q <= rest; ++q) {
        int v = 0;
        while (divides(q, rest)) { rest /= q; ++v; }
        if (v) {
            if (splitting(K, q).kind != SplitKind::split)
                throw std::invalid_argument("IdealSymbol::rational: prime does not split");
            I.e[{q, false}] = v;
            I.e[{q, true}] = v;
        }
    }
    if (rest > 1) {
        if (splitting(K, rest).kind != SplitKind::split)
            throw std::invalid_argument("IdealSymbol::rational: prime does not split");
        I.e[{rest, false}] += 1;
        I.e[{rest, true}] += 1;
    }
    return I;
}

IdealSymbol& IdealSymbol::mul(const IdealSymbol& o, int mult) {
    for (auto& [s, n] : o.e) {
        int v = (e[s] += n * mult);
        if (v == 0) e.erase(s);
    }
    return *this;
}

IdealSymbol IdealSymbol::inverse() const {
    IdealSymbol I;
    for (auto& [s, n] : e) I.e[s] = -n;
    return I;
}

IdealSymbol IdealSymbol::conj() const {
    IdealSymbol I;
    for (auto& [s, n] : e) I.e[s.conj()] = n;
    return I;
}

Rat IdealSymbol::norm() const {
    Rat n = 1;
    for (auto& [s, v] : e) n *= rpow(Rat(s.p), v);
    return n;
}

std::string IdealSymbol::str() const {
    if (e.empty()) return "(1)";
    std::string out;
    for (auto& [s, v] : e) {
        if (!out.empty()) out += " * ";
        out += "P" + s.p.get_str() + (s.bar ? "bar" : "") + "^" + std::to_string(v);
    }
    return out;
}

int val_at(const QuadField& K, const FieldElement& z, const PrimeSymbol& s) {
    if (z.is_zero()) throw std::domain_error("val_at: zero element");
    auto sp = splitting(K, s.p);
    // enough precision to see the valuation of numerator and denominator
    Rat nz = z.norm();
    Int U, V, den;
    integral_coords(K, z, U, V, den);
    int vden = 0;
    Int den2 = den;
    while (divides(s.p, den2)) { den2 /= s.p; ++vden; }
    FieldElement scaled = Rat(ipow(s.p, vden)) * z;  // now p-integral
    // v(scaled) <= v_p(norm numerator) + 2 vden, so this precision always sees it
    int bound = valuation(nz.get_num(), s.p) + valuation(nz.get_den(), s.p) + 2 * vden + 2;
    LocalEmbedding emb(K, sp, bound, s.bar);
    return emb.val(scaled) - vden;
}

namespace {

// All algebraic integers with norm exactly N (N >= 1), as (u,v) coordinates.
std::vector<AlgebraicInteger> integers_of_norm(const QuadField& K, const Int& N) {
    std::vector<AlgebraicInteger> out;
    Int ad = -K.d;
    if (!K.omega_half) {
        // u^2 + |d| v^2 = N
        for (Int v = 0; ad * v * v <= N; ++v) {
            Int rem = N - ad * v * v;
            Int u = sqrt(rem);
            if (u * u != rem) continue;
            for (Int uu : {u, Int(-u)}) {
                for (Int vv : {v, Int(-v)}) {
                    out.push_back({uu, vv});
                    if (v == 0) break;
                }
                if (u == 0) break;
            }
        }
    } else {
        // u^2 + uv + v^2 (1-d)/4 = N, i.e. (2u+v)^2 + |d| v^2 = 4N
        Int vmax = 0;
        while (ad * (vmax + 1) * (vmax + 1) <= 4 * N) ++vmax;
        for (Int v = -vmax; v <= vmax; ++v) {
            Int rem = 4 * N - ad * v * v;
            Int s = sqrt(rem);
            if (s * s != rem) continue;
            for (Int sg : {s, Int(-s)}) {
                if (divides(Int(2), sg - v)) out.push_back({(sg - v) / 2, v});
                if (s == 0) break;
            }
        }
    }
    return out;
}

}  // namespace

std::optional<FieldElement> find_generator(const QuadField& K, const IdealSymbol& I,
                                           const Int& norm_bound) {
    // clear denominators: J = I * (m) integral
    std::map<Int, int> clear_pow;
    for (auto& [s, v] : I.e)
        if (v < 0 && -v > clear_pow[s.p]) clear_pow[s.p] = -v;
    Int m = 1;
    for (auto& [p, v] : clear_pow) m *= ipow(p, v);
    IdealSymbol J = I;
    if (m > 1) J.mul(IdealSymbol::rational(K, m));
    Rat Nq = J.norm();
    if (!is_integer(Nq)) throw std::logic_error("find_generator: non-integral cleared symbol");
    Int N = Nq.get_num();
    if (N > norm_bound)
        throw SearchExhausted("find_generator: forced norm " + N.get_str() +
                              " exceeds bound " + norm_bound.get_str());
    for (auto& ai : integers_of_norm(K, N)) {
        FieldElement z = ai.to_element(K);
        if (z.is_zero()) continue;
        bool ok = true;
        for (auto& [s, v] : J.e) {
            if (val_at(K, z, s) < v) { ok = false; break; }
        }
        if (ok) return Rat(1, m) * z;
    }
    return std::nullopt;
}

}  // namespace maass
