// Quotient biextensions: bisubgroups, trivializations, the biextension
// P_psi of N x T, its two partial addition laws, transport between fiber
// basepoints, and the Weil pairing psi(la,b) - psi(a,lb).
//
// Groups enter through small value-semantic models so the same machinery
// runs on normal-form abelian groups, divisors on a curve, and complex
// vectors modulo a lattice.
#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "biext/zmatrix.hpp"  // biext::Error

namespace biext::bx {

using Rng = std::mt19937_64;

template <class M>
concept GroupModel = requires(const M& m, const typename M::Elem& x) {
    typename M::Elem;
    { m.add(x, x) } -> std::convertible_to<typename M::Elem>;
    { m.neg(x) } -> std::convertible_to<typename M::Elem>;
    { m.zero() } -> std::convertible_to<typename M::Elem>;
    { m.eq(x, x) } -> std::convertible_to<bool>;
    { m.str(x) } -> std::convertible_to<std::string>;
};

struct AuditError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};

struct AuditConfig {
    std::uint64_t seed = 0;
    int samples = 500;
    // Enumerate instead of sampling when both sides enumerate and the tuple
    // count stays below this bound.
    std::size_t exhaustive_limit = 1000000;
};

/// T ⊂ A x B together with the kernels of the quotient maps, samplers for
/// audits/property tests, and optional disjointness-repair oracles.
template <GroupModel MA, GroupModel MB>
struct Bisubgroup {
    using AElem = typename MA::Elem;
    using BElem = typename MB::Elem;

    MA ga;
    MB gb;
    std::function<bool(const AElem&, const BElem&)> in_t;
    std::function<bool(const AElem&)> in_ker_a;
    std::function<bool(const BElem&)> in_ker_b;

    // Samplers (ambient and kernel); may be empty for enumerable instances.
    std::function<AElem(Rng&)> sample_a;
    std::function<BElem(Rng&)> sample_b;
    std::function<AElem(Rng&)> sample_ker_a;
    std::function<BElem(Rng&)> sample_ker_b;

    // Full (or representative) element lists for exhaustive audits.
    std::function<std::vector<AElem>()> enum_a;
    std::function<std::vector<BElem>()> enum_b;

    // Section oracles: replace a by an equivalent a' (a'-a in Ker) such that
    // (a', b_i) lands in T for every constraint b_i. Used when a transport
    // corner falls outside T.
    std::function<std::optional<AElem>(const AElem&, const std::vector<BElem>&, std::uint64_t)>
        reroute_a;
    std::function<std::optional<BElem>(const BElem&, const std::vector<AElem>&, std::uint64_t)>
        reroute_b;
};

/// psi on S = T ∩ (Ker φ_A x B ∪ A x Ker φ_B). The slot says which kernel
/// condition the caller asserts (1: first argument, 2: second argument); on
/// the overlap both formulas must agree, which the audit checks.
template <GroupModel MA, GroupModel MB, GroupModel MN>
struct Trivialization {
    using AElem = typename MA::Elem;
    using BElem = typename MB::Elem;
    using NElem = typename MN::Elem;

    MN gn;
    std::function<NElem(const AElem&, const BElem&, int)> psi;
};

template <GroupModel MA, GroupModel MB, GroupModel MN>
class Biextension {
public:
    using AElem = typename MA::Elem;
    using BElem = typename MB::Elem;
    using NElem = typename MN::Elem;
    using Bisub = Bisubgroup<MA, MB>;
    using Triv = Trivialization<MA, MB, MN>;

    /// A point of N x T: n together with the basepoint (a,b); the fiber it
    /// lives in is indexed by (φ_A(a), φ_B(b)).
    struct Fiber {
        NElem n;
        AElem a;
        BElem b;
    };

    Biextension(Bisub t, Triv psi) : t_(std::move(t)), psi_(std::move(psi)) {}

    const Bisub& bisub() const { return t_; }
    const MA& ga() const { return t_.ga; }
    const MB& gb() const { return t_.gb; }
    const MN& gn() const { return t_.gn; }

    NElem psi(const AElem& a, const BElem& b, int slot) const {
        if (!t_.in_t(a, b))
            throw PreconditionError("psi: (" + t_.ga.str(a) + ", " + t_.gb.str(b) +
                                    ") is not in T");
        if (slot == 1 && !t_.in_ker_a(a))
            throw PreconditionError("psi slot 1: first argument " + t_.ga.str(a) +
                                    " is not in Ker(phi_A)");
        if (slot == 2 && !t_.in_ker_b(b))
            throw PreconditionError("psi slot 2: second argument " + t_.gb.str(b) +
                                    " is not in Ker(phi_B)");
        return psi_.psi(a, b, slot);
    }

    Fiber element(const AElem& a, const BElem& b) const { return element(t_.gn.zero(), a, b); }

    Fiber element(const NElem& n, const AElem& a, const BElem& b) const {
        if (!t_.in_t(a, b))
            throw PreconditionError("fiber basepoint (" + t_.ga.str(a) + ", " + t_.gb.str(b) +
                                    ") is not in T");
        return Fiber{n, a, b};
    }

    bool same_base(const Fiber& x, const Fiber& y) const {
        return t_.in_ker_a(t_.ga.add(x.a, t_.ga.neg(y.a))) &&
               t_.in_ker_b(t_.gb.add(x.b, t_.gb.neg(y.b)));
    }

    /// Re-express x with basepoint (a2, b2) (same fiber). Moves along
    /// T-corners when possible, otherwise through the section oracle.
    Fiber transported(const Fiber& x, const AElem& a2, const BElem& b2) const;

    /// x over (α,γ), y over (β,γ)  ->  element over (α+β, γ).
    Fiber add_first(const Fiber& x, const Fiber& y) const;
    /// x over (α,γ), y over (α,δ)  ->  element over (α, γ+δ).
    Fiber add_second(const Fiber& x, const Fiber& y) const;

    /// Equality in P_psi: same fiber and equal N-part after transport.
    bool eq(const Fiber& x, const Fiber& y) const {
        if (!same_base(x, y)) return false;
        Fiber z = transported(x, y.a, y.b);
        return t_.gn.eq(z.n, y.n);
    }

    /// The l-torsion obstruction psi(l*a, b) - psi(a, l*b).
    NElem weil_pairing(const AElem& a, const BElem& b, long l) const;

    AElem scale_a(long l, const AElem& a) const {
        AElem acc = t_.ga.zero();
        for (long i = 0; i < l; ++i) acc = t_.ga.add(acc, a);
        return acc;
    }
    BElem scale_b(long l, const BElem& b) const {
        BElem acc = t_.gb.zero();
        for (long i = 0; i < l; ++i) acc = t_.gb.add(acc, b);
        return acc;
    }

private:
    Bisub t_;
    Triv psi_;

    NElem nadd(const NElem& x, const NElem& y) const { return t_.gn.add(x, y); }
    NElem nsub(const NElem& x, const NElem& y) const { return t_.gn.add(x, t_.gn.neg(y)); }
};

template <GroupModel MA, GroupModel MB, GroupModel MN>
typename Biextension<MA, MB, MN>::Fiber Biextension<MA, MB, MN>::transported(
    const Fiber& x, const AElem& a2, const BElem& b2) const {
    const MA& ga = t_.ga;
    const MB& gb = t_.gb;
    AElem da = ga.add(a2, ga.neg(x.a));
    BElem db = gb.add(b2, gb.neg(x.b));
    if (!t_.in_ker_a(da) || !t_.in_ker_b(db))
        throw PreconditionError("transport: target basepoint lies in a different fiber");
    if (!t_.in_t(a2, b2))
        throw PreconditionError("transport: target basepoint is not in T");
    bool move_a = !ga.eq(da, ga.zero());
    bool move_b = !gb.eq(db, gb.zero());
    NElem n = x.n;
    if (!move_a && !move_b) return Fiber{n, a2, b2};
    if (!move_b) {
        if (t_.in_t(da, x.b)) return Fiber{nadd(n, psi_.psi(da, x.b, 1)), a2, b2};
    } else if (!move_a) {
        if (t_.in_t(x.a, db)) return Fiber{nadd(n, psi_.psi(x.a, db, 2)), a2, b2};
    } else {
        // Corner (a2, b): A-move first, then B-move.
        if (t_.in_t(da, x.b) && t_.in_t(a2, x.b) && t_.in_t(a2, db))
            return Fiber{nadd(nadd(n, psi_.psi(da, x.b, 1)), psi_.psi(a2, db, 2)), a2, b2};
        // Corner (a, b2): B-move first.
        if (t_.in_t(x.a, db) && t_.in_t(x.a, b2) && t_.in_t(da, b2))
            return Fiber{nadd(nadd(n, psi_.psi(x.a, db, 2)), psi_.psi(da, b2, 1)), a2, b2};
    }
    // No direct corner inside T: route through a section-oracle intermediate
    // a3 ~ a2 compatible with both B-components.
    if (t_.reroute_a) {
        std::uint64_t h = std::hash<std::string>{}(ga.str(x.a) + "|" + ga.str(a2) + "|" +
                                                   gb.str(x.b) + "|" + gb.str(b2));
        auto a3 = t_.reroute_a(a2, std::vector<BElem>{x.b, b2}, h);
        if (a3) {
            AElem d13 = ga.add(*a3, ga.neg(x.a));
            AElem d32 = ga.add(a2, ga.neg(*a3));
            NElem n2 = n;
            if (!ga.eq(d13, ga.zero())) n2 = nadd(n2, psi_.psi(d13, x.b, 1));
            if (!gb.eq(db, gb.zero())) n2 = nadd(n2, psi_.psi(*a3, db, 2));
            if (!ga.eq(d32, ga.zero())) n2 = nadd(n2, psi_.psi(d32, b2, 1));
            return Fiber{n2, a2, b2};
        }
    }
    throw PreconditionError("transport: no path inside T between basepoints (" + ga.str(x.a) +
                            ", " + gb.str(x.b) + ") and (" + ga.str(a2) + ", " + gb.str(b2) + ")");
}

template <GroupModel MA, GroupModel MB, GroupModel MN>
typename Biextension<MA, MB, MN>::Fiber Biextension<MA, MB, MN>::add_first(const Fiber& x,
                                                                            const Fiber& y) const {
    if (!t_.in_ker_b(t_.gb.add(x.b, t_.gb.neg(y.b))))
        throw PreconditionError("add_first: second base coordinates differ");
    Fiber y2 = t_.gb.eq(x.b, y.b) ? y : transported(y, y.a, x.b);
    AElem a = t_.ga.add(x.a, y2.a);
    if (!t_.in_t(a, x.b))
        throw PreconditionError("add_first: combined basepoint left T (closure violation)");
    return Fiber{nadd(x.n, y2.n), a, x.b};
}

template <GroupModel MA, GroupModel MB, GroupModel MN>
typename Biextension<MA, MB, MN>::Fiber Biextension<MA, MB, MN>::add_second(const Fiber& x,
                                                                             const Fiber& y) const {
    if (!t_.in_ker_a(t_.ga.add(x.a, t_.ga.neg(y.a))))
        throw PreconditionError("add_second: first base coordinates differ");
    Fiber y2 = t_.ga.eq(x.a, y.a) ? y : transported(y, x.a, y.b);
    BElem b = t_.gb.add(x.b, y2.b);
    if (!t_.in_t(x.a, b))
        throw PreconditionError("add_second: combined basepoint left T (closure violation)");
    return Fiber{nadd(x.n, y2.n), x.a, b};
}

template <GroupModel MA, GroupModel MB, GroupModel MN>
typename Biextension<MA, MB, MN>::NElem Biextension<MA, MB, MN>::weil_pairing(const AElem& a,
                                                                              const BElem& b,
                                                                              long l) const {
    if (l < 1) throw PreconditionError("weil_pairing: l must be >= 1");
    if (!t_.in_t(a, b))
        throw PreconditionError("weil_pairing: (a,b) not in T");
    AElem la = scale_a(l, a);
    BElem lb = scale_b(l, b);
    if (!t_.in_ker_a(la))
        throw PreconditionError("weil_pairing: l*a does not vanish in the base (a = " +
                                t_.ga.str(a) + ")");
    if (!t_.in_ker_b(lb))
        throw PreconditionError("weil_pairing: l*b does not vanish in the base (b = " +
                                t_.gb.str(b) + ")");
    if (!t_.in_t(la, b) || !t_.in_t(a, lb))
        throw PreconditionError("weil_pairing: (la,b) or (a,lb) fell outside T");
    return nsub(psi_.psi(la, b, 1), psi_.psi(a, lb, 2));
}

/// Audit the bisubgroup closure and psi bilinearity (including slot-overlap
/// agreement) on enumerated or sampled tuples, then assemble P_psi.
/// Reports the violating tuple on failure.
template <GroupModel MA, GroupModel MB, GroupModel MN>
Biextension<MA, MB, MN> build_quotient_biextension(Bisubgroup<MA, MB> t,
                                                   Trivialization<MA, MB, MN> psi,
                                                   const AuditConfig& cfg = {}) {
    const MA& ga = t.ga;
    const MB& gb = t.gb;
    const MN& gn = psi.gn;

    auto tuple_str = [&](const typename MA::Elem& a, const typename MB::Elem& b) {
        return "(" + ga.str(a) + ", " + gb.str(b) + ")";
    };

    auto check_closure = [&](const typename MA::Elem& a, const typename MA::Elem& a2,
                             const typename MB::Elem& b, const typename MB::Elem& b2) {
        // (a,b), (a',b) in T  =>  (a+a', b) in T; symmetrically for b.
        if (t.in_t(a, b) && t.in_t(a2, b) && !t.in_t(ga.add(a, a2), b))
            throw AuditError("bisubgroup closure fails in the first slot at " + tuple_str(a, b) +
                             " with a' = " + ga.str(a2));
        if (t.in_t(a, b) && t.in_t(a, b2) && !t.in_t(a, gb.add(b, b2)))
            throw AuditError("bisubgroup closure fails in the second slot at " + tuple_str(a, b) +
                             " with b' = " + gb.str(b2));
    };

    auto check_bilinear = [&](const typename MA::Elem& z, const typename MA::Elem& z2,
                              const typename MB::Elem& b, const typename MB::Elem& b2) {
        // z, z2 in Ker φ_A: additivity in both arguments of the slot-1 map.
        if (t.in_t(z, b) && t.in_t(z2, b) && t.in_t(ga.add(z, z2), b)) {
            auto lhs = gn.add(psi.psi(z, b, 1), psi.psi(z2, b, 1));
            auto rhs = psi.psi(ga.add(z, z2), b, 1);
            if (!gn.eq(lhs, rhs))
                throw AuditError("psi not additive in the first argument at " + tuple_str(z, b) +
                                 ", " + tuple_str(z2, b));
        }
        if (t.in_t(z, b) && t.in_t(z, b2) && t.in_t(z, gb.add(b, b2))) {
            auto lhs = gn.add(psi.psi(z, b, 1), psi.psi(z, b2, 1));
            auto rhs = psi.psi(z, gb.add(b, b2), 1);
            if (!gn.eq(lhs, rhs))
                throw AuditError("psi(z, .) not additive at z = " + ga.str(z));
        }
    };

    auto check_overlap = [&](const typename MA::Elem& z, const typename MB::Elem& w) {
        if (t.in_t(z, w)) {
            auto v1 = psi.psi(z, w, 1);
            auto v2 = psi.psi(z, w, 2);
            if (!gn.eq(v1, v2))
                throw AuditError("psi slot formulas disagree on the overlap at " + tuple_str(z, w) +
                                 ": " + gn.str(v1) + " vs " + gn.str(v2));
        }
    };

    bool enumerated = false;
    if (t.enum_a && t.enum_b) {
        auto as = t.enum_a();
        auto bs = t.enum_b();
        std::size_t quads = as.size() * as.size() * bs.size() * bs.size();
        if (quads <= cfg.exhaustive_limit) {
            enumerated = true;
            for (const auto& a : as)
                for (const auto& a2 : as)
                    for (const auto& b : bs)
                        for (const auto& b2 : bs) check_closure(a, a2, b, b2);
            for (const auto& z : as) {
                if (!t.in_ker_a(z)) continue;
                for (const auto& z2 : as) {
                    if (!t.in_ker_a(z2)) continue;
                    for (const auto& b : bs)
                        for (const auto& b2 : bs) check_bilinear(z, z2, b, b2);
                }
                for (const auto& w : bs)
                    if (t.in_ker_b(w)) check_overlap(z, w);
            }
        }
    }
    if (!enumerated) {
        if (!(t.sample_a && t.sample_b && t.sample_ker_a && t.sample_ker_b))
            throw AuditError("audit: instance provides neither enumeration nor samplers");
        Rng rng(cfg.seed);
        for (int i = 0; i < cfg.samples; ++i) {
            auto a = t.sample_a(rng);
            auto a2 = t.sample_a(rng);
            auto b = t.sample_b(rng);
            auto b2 = t.sample_b(rng);
            check_closure(a, a2, b, b2);
            auto z = t.sample_ker_a(rng);
            auto z2 = t.sample_ker_a(rng);
            check_bilinear(z, z2, b, b2);
            auto w = t.sample_ker_b(rng);
            check_overlap(z, w);
            // Mirror bilinearity for the slot-2 map.
            if (t.in_t(a, w)) {
                auto w2 = t.sample_ker_b(rng);
                if (t.in_t(a, w2) && t.in_t(a, gb.add(w, w2))) {
                    auto lhs = gn.add(psi.psi(a, w, 2), psi.psi(a, w2, 2));
                    auto rhs = psi.psi(a, gb.add(w, w2), 2);
                    if (!gn.eq(lhs, rhs))
                        throw AuditError("psi(., w) not additive at w = " + gb.str(w));
                }
            }
        }
    }
    return Biextension<MA, MB, MN>(std::move(t), std::move(psi));
}

}  // namespace biext::bx
