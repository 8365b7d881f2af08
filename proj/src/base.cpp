#include "maass/base.hpp"

#include <algorithm>
#include <stdexcept>

namespace maass {

IdealSymbol BaseEntry::det_symbol() const {
    if (is_identity) return IdealSymbol::one();
    IdealSymbol I = IdealSymbol::prime(prime, 2 * exponent);
    I.mul(IdealSymbol::prime(prime.conj(), -2 * exponent));
    return I;
}

Base::Base(const QuadField& K, std::vector<BaseEntry> entries)
    : K_(K), group_(K), entries_(std::move(entries)) {
    if (entries_.size() != group_.order())
        throw std::invalid_argument("Base: entry count differs from h_F");
    std::vector<bool> seen(group_.order(), false);
    for (auto& b : entries_) {
        std::size_t c = group_.class_of(K_, b.det_symbol());
        if (seen[c]) throw std::invalid_argument("Base: duplicate ideal class");
        seen[c] = true;
        classes_.push_back(c);
    }
}

std::size_t Base::entry_of_class(std::size_t cls) const {
    for (std::size_t i = 0; i < classes_.size(); ++i)
        if (classes_[i] == cls) return i;
    throw std::logic_error("Base: class without representative");
}

Base build_base(const QuadField& K, int exponent, const Int& prime_bound) {
    IdealClassGroup G(K);
    std::vector<BaseEntry> entries;
    std::vector<bool> covered(G.order(), false);
    entries.push_back(BaseEntry{});
    covered[G.identity()] = true;
    std::size_t found = 1;
    for (Int p = 2; p <= prime_bound && found < G.order(); ++p) {
        if (!is_prime(p)) continue;
        if (splitting(K, p).kind != SplitKind::split) continue;
        PrimeSymbol s{p, false};
        BaseEntry b{false, s, exponent};
        std::size_t c = G.class_of(K, b.det_symbol());
        if (!covered[c]) {
            covered[c] = true;
            entries.push_back(b);
            ++found;
        }
    }
    if (found < G.order())
        throw std::runtime_error("build_base: no split prime below bound represents some class");
    return Base(K, std::move(entries));
}

std::size_t ClassPermutation::inv(std::size_t i) const {
    for (std::size_t j = 0; j < map.size(); ++j)
        if (map[j] == i) return j;
    throw std::logic_error("ClassPermutation: not a bijection");
}

bool ClassPermutation::is_identity() const {
    for (std::size_t j = 0; j < map.size(); ++j)
        if (map[j] != j) return false;
    return true;
}

ClassPermutation sigma(const Base& B, const PrimeSymbol& pfrak, long n) {
    const auto& G = B.group();
    if (divides(pfrak.p, B.field().D_F))
        throw std::invalid_argument("sigma: prime must not divide D_F");
    ClassPermutation perm{pfrak, n, {}};
    std::size_t shift = G.power_idx(G.class_of_prime(B.field(), pfrak), n);
    for (std::size_t i = 0; i < B.size(); ++i) {
        std::size_t c = G.compose_idx(B.class_of_entry(i), shift);
        perm.map.push_back(B.entry_of_class(c));
    }
    return perm;
}

ClassPermutation compose(const ClassPermutation& f, const ClassPermutation& g) {
    ClassPermutation r{f.prime, f.n + g.n, {}};
    for (std::size_t i = 0; i < g.map.size(); ++i) r.map.push_back(f.map[g.map[i]]);
    return r;
}

FieldElement gamma_of_ideal(const QuadField& K, const IdealSymbol& I, long k,
                            const Int& norm_bound) {
    auto g = find_generator(K, I, norm_bound);
    if (!g) throw std::logic_error("gamma_of_ideal: ideal " + I.str() + " is not principal");
    return fe_pow(g->conj(), -k);
}

GammaTuple gamma_tuple(const Base& B, const PrimeSymbol& pfrak, long n, long k,
                       const Int& norm_bound) {
    const QuadField& K = B.field();
    if (k % K.w != 0)
        throw std::invalid_argument("gamma_tuple: weight must be divisible by #O_F^x");
    if (divides(pfrak.p, K.D_F))
        throw std::invalid_argument("gamma_tuple: prime must not divide D_F");
    auto perm = sigma(B, pfrak, n);
    GammaTuple t{pfrak, n, k, {}};
    for (std::size_t i = 0; i < B.size(); ++i) {
        IdealSymbol J = B.entry(i).det_symbol();
        J.mul(IdealSymbol::prime(pfrak, static_cast<int>(n)));
        J.mul(B.entry(perm(i)).det_symbol().inverse());
        t.value.push_back(gamma_of_ideal(K, J, k, norm_bound));
    }
    return t;
}

}  // namespace maass
