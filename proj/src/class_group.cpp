#include "maass/class_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace maass {

QuadForm reduce(QuadForm f) {
    if (f.a <= 0 || f.disc() >= 0) throw std::invalid_argument("reduce: form not positive definite");
    for (;;) {
        // normalize b into (-a, a]
        if (f.b > f.a || f.b <= -f.a) {
            Int twoa = 2 * f.a;
            Int r = ((f.b % twoa) + twoa) % twoa;  // r in [0, 2a)
            if (r > f.a) r -= twoa;                // r in (-a, a]
            f.c = f.c + ((r * r - f.b * f.b) / (4 * f.a));
            f.b = r;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        if (f.b == -f.a) { f.b = f.a; continue; }
        break;
    }
    return f;
}

QuadForm principal_form(const Int& disc) {
    Int r = ((disc % 2) + 2) % 2;  // disc mod 2 (0 or 1)
    return reduce({1, r, (r * r - disc) / 4});
}

namespace {

// x = r1 (mod m1), x = r2 (mod m2); moduli need not be coprime.
Int crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    Int g = gcd(m1, m2);
    if (!divides(g, r2 - r1)) throw std::logic_error("crt: incompatible congruences");
    Int m1g = m1 / g, m2g = m2 / g;
    Int inv;
    Int a = ((m1g % m2g) + m2g) % m2g;
    if (m2g == 1) return r1;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m2g.get_mpz_t()) == 0)
        throw std::logic_error("crt: inversion failed");
    Int t = (((r2 - r1) / g) % m2g) * inv % m2g;
    Int m = m1 * m2g;
    Int x = (r1 + m1 * t) % m;
    return (x + m) % m;
}

// GL2(Z)-transform of a form by [[x, z],[y, w]], det 1.
QuadForm transform_form(const QuadForm& f, const Int& x, const Int& y, const Int& z, const Int& w) {
    Int a = f.a * x * x + f.b * x * y + f.c * y * y;
    Int c = f.a * z * z + f.b * z * w + f.c * w * w;
    Int b = 2 * (f.a * x * z + f.c * y * w) + f.b * (x * w + y * z);
    return {a, b, c};
}

}  // namespace

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    if (f.disc() != g.disc()) throw std::invalid_argument("compose: discriminant mismatch");
    // move g to a representative with leading coefficient coprime to f.a
    for (Int bound = 1;; ++bound) {
        for (Int x = -bound; x <= bound; ++x) {
            for (Int y = -bound; y <= bound; ++y) {
                if (abs(x) != bound && abs(y) != bound) continue;
                if (gcd(x, y) != 1) continue;
                Int a2 = g.a * x * x + g.b * x * y + g.c * y * y;
                if (gcd(a2, f.a) != 1) continue;
                // complete (x,y) to an SL2(Z) matrix [[x, z],[y, w]]
                Int z, w;
                mpz_gcdext(Int().get_mpz_t(), w.get_mpz_t(), z.get_mpz_t(),
                           x.get_mpz_t(), y.get_mpz_t());
                z = -z;
                QuadForm g2 = transform_form(g, x, y, z, w);
                // Dirichlet composition with gcd(f.a, g2.a) = 1
                Int B = crt(f.b, 2 * f.a, g2.b, 2 * g2.a);
                Int A = f.a * g2.a;
                return reduce({A, B, (B * B - f.disc()) / (4 * A)});
            }
        }
        if (bound > 64) throw std::logic_error("compose: no coprime representative found");
    }
}

IdealClassGroup::IdealClassGroup(const QuadField& K) : disc_(K.disc) {
    for (Int a = 1; 3 * a * a <= -disc_; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - disc_;
            if (!divides(4 * a, num)) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && c == a) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            elems_.push_back({a, b, c});
        }
    }
    std::sort(elems_.begin(), elems_.end());
    id_ = index_of(principal_form(disc_));
    table_.assign(elems_.size(), std::vector<std::size_t>(elems_.size()));
    for (std::size_t i = 0; i < elems_.size(); ++i)
        for (std::size_t j = 0; j < elems_.size(); ++j)
            table_[i][j] = index_of(compose(elems_[i], elems_[j]));
}

std::size_t IdealClassGroup::index_of(const QuadForm& reduced) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), reduced);
    if (it == elems_.end() || !(*it == reduced))
        throw std::logic_error("IdealClassGroup: form not in the enumerated set");
    return static_cast<std::size_t>(it - elems_.begin());
}

std::size_t IdealClassGroup::inverse_idx(std::size_t i) const {
    return index_of(form_inverse(elems_[i]));
}

std::size_t IdealClassGroup::power_idx(std::size_t i, long n) const {
    if (n < 0) return power_idx(inverse_idx(i), -n);
    std::size_t r = id_;
    for (long j = 0; j < n; ++j) r = table_[r][i];
    return r;
}

std::size_t IdealClassGroup::class_of_prime(const QuadField& K, const PrimeSymbol& s) const {
    auto sp = splitting(K, s.p);
    if (sp.kind != SplitKind::split)
        throw std::invalid_argument("class_of_prime: prime does not split");
    Int b0 = 2 * sp.omega_root - K.trace_omega();
    if (s.bar) b0 = -b0;
    Int twop = 2 * s.p;
    Int b = ((b0 % twop) + twop) % twop;
    QuadForm f{s.p, b, (b * b - disc_) / (4 * s.p)};
    return index_of(reduce(f));
}

std::size_t IdealClassGroup::class_of(const QuadField& K, const IdealSymbol& I) const {
    std::size_t r = id_;
    for (auto& [s, n] : I.e) {
        std::size_t c = power_idx(class_of_prime(K, s), n);
        r = table_[r][c];
    }
    return r;
}

std::size_t IdealClassGroup::element_order(std::size_t i) const {
    std::size_t r = i, n = 1;
    while (r != id_) {
        r = table_[r][i];
        ++n;
    }
    return n;
}

}  // namespace maass
