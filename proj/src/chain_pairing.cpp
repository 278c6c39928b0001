#include "biext/chain_pairing.hpp"

namespace biext {

GroupElement ChainPairing::apply(int i, const std::vector<mpz_class>& x,
                                 const std::vector<mpz_class>& y) const {
    auto it = phi.find(i);
    GroupElement acc = n->zero();
    if (it == phi.end()) return acc;
    const auto& table = it->second;
    if (table.size() != a.rank(i) || (table.size() && table[0].size() != b.rank(-i)))
        throw Error("chain pairing: table shape mismatch in degree " + std::to_string(i));
    if (x.size() != a.rank(i) || y.size() != b.rank(-i))
        throw Error("chain pairing: argument shape mismatch in degree " + std::to_string(i));
    for (std::size_t s = 0; s < x.size(); ++s) {
        if (x[s] == 0) continue;
        for (std::size_t t = 0; t < y.size(); ++t) {
            if (y[t] == 0) continue;
            acc = n->add(acc, n->scale(x[s] * y[t], table[s][t]));
        }
    }
    return acc;
}

void ChainPairing::validate() const {
    for (int i = a.lo(); i <= a.hi(); ++i) {
        std::size_t na = a.rank(i);
        std::size_t nb = b.rank(-i - 1);
        if (na == 0 || nb == 0) continue;
        IntMatrix da = a.diff(i);
        IntMatrix db = b.diff(-i - 1);
        for (std::size_t s = 0; s < na; ++s)
            for (std::size_t t = 0; t < nb; ++t) {
                std::vector<mpz_class> ea(na), eb(nb);
                ea[s] = 1;
                eb[t] = 1;
                GroupElement lhs = apply(i + 1, da.apply(ea), eb);
                GroupElement rhs = apply(i, ea, db.apply(eb));
                if (i % 2 != 0) rhs = n->neg(rhs);
                if (!n->is_zero(n->add(lhs, rhs)))
                    throw Error("chain-map condition fails at degree " + std::to_string(i) +
                                ", generator pair (" + std::to_string(s) + "," +
                                std::to_string(t) + ")");
            }
    }
}

namespace {

// Degrees outside the stored range carry the zero group.
Homology homology_or_trivial(const BoundedComplex& c, int p) {
    if (c.in_range(p)) return homology(c, p);
    return Homology{FgAbGroup::from_invariants({}, 0), IntMatrix(0, 0)};
}

// Columns generating { cocycles z in degree p : [z] lies in the primed
// subgroup }: lifts of the primed generators plus all boundaries.
IntMatrix primed_cocycle_lattice(const BoundedComplex& c, int p, const Homology& h,
                                 const Subgroup& primed) {
    std::vector<std::vector<mpz_class>> cols;
    const FgAbGroup& hg = h.group;
    for (std::size_t j = 0; j < primed.gens_in_parent.cols(); ++j) {
        GroupElement e(hg.coords());
        for (std::size_t i = 0; i < hg.coords(); ++i) e[i] = primed.gens_in_parent.at(i, j);
        cols.push_back(h.lift(hg.reduce(e)));
    }
    IntMatrix bd = c.diff(p - 1);
    for (std::size_t j = 0; j < bd.cols(); ++j) {
        std::vector<mpz_class> col(bd.rows());
        for (std::size_t i = 0; i < bd.rows(); ++i) col[i] = bd.at(i, j);
        cols.push_back(col);
    }
    IntMatrix out(c.rank(p), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < out.rows(); ++i) out.at(i, j) = cols[j][i];
    return out;
}

}  // namespace

ChainBiextensionResult biextension_from_chain_pairing(const ChainPairing& cp,
                                                      const bx::AuditConfig& cfg) {
    cp.validate();
    const int p = cp.p;
    Homology ha = homology_or_trivial(cp.a, p);
    Homology hb = homology_or_trivial(cp.b, 1 - p);
    Homology ha_low = homology_or_trivial(cp.a, p - 1);
    Homology hb_low = homology_or_trivial(cp.b, -p);

    // H^p(A)' annihilates H^{-p}(B) under phi_p; H^{1-p}(B)' annihilates
    // H^{p-1}(A) under phi_{p-1}.
    auto pair_values = [&](const Homology& x, const Homology& y, int deg, bool a_first) {
        std::vector<std::vector<GroupElement>> vals(x.group.coords());
        for (std::size_t i = 0; i < x.group.coords(); ++i) {
            GroupElement gi(x.group.coords());
            gi[i] = 1;
            Cocycle zi = x.lift(x.group.reduce(gi));
            vals[i].resize(y.group.coords());
            for (std::size_t j = 0; j < y.group.coords(); ++j) {
                GroupElement gj(y.group.coords());
                gj[j] = 1;
                Cocycle zj = y.lift(y.group.reduce(gj));
                vals[i][j] = a_first ? cp.apply(deg, zi, zj) : cp.apply(deg, zj, zi);
            }
        }
        return vals;
    };

    GeneratorPairing pa{&ha.group, &hb_low.group, cp.n.get(),
                        pair_values(ha, hb_low, p, /*a_first=*/true)};
    Subgroup ha_primed = annihilator_subgroup(pa);
    GeneratorPairing pb{&hb.group, &ha_low.group, cp.n.get(),
                        pair_values(hb, ha_low, p - 1, /*a_first=*/false)};
    Subgroup hb_primed = annihilator_subgroup(pb);

    IntMatrix alat = primed_cocycle_lattice(cp.a, p, ha, ha_primed);
    IntMatrix blat = primed_cocycle_lattice(cp.b, 1 - p, hb, hb_primed);

    bx::VecZModel ma{cp.a.rank(p)};
    bx::VecZModel mb{cp.b.rank(1 - p)};
    bx::FgModel mn{cp.n};

    IntMatrix da_prev = cp.a.diff(p - 1);
    IntMatrix db_prev = cp.b.diff(-p);
    IntMatrix da_p = cp.a.diff(p);
    IntMatrix db_1p = cp.b.diff(1 - p);

    bx::Bisubgroup<bx::VecZModel, bx::VecZModel> bis;
    bis.ga = ma;
    bis.gb = mb;
    // Ambient elements are validated primed cocycles; T is the full product.
    bis.in_t = [](const auto&, const auto&) { return true; };
    bis.in_ker_a = [da_prev](const std::vector<mpz_class>& z) {
        return solve(da_prev, z).has_value();
    };
    bis.in_ker_b = [db_prev](const std::vector<mpz_class>& w) {
        return solve(db_prev, w).has_value();
    };
    auto sampler = [](const IntMatrix& lat, std::size_t dim) {
        return [lat, dim](bx::Rng& rng) {
            std::uniform_int_distribution<long> coef(-4, 4);
            std::vector<mpz_class> c(lat.cols());
            for (auto& v : c) v = coef(rng);
            auto z = lat.apply(c);
            z.resize(dim);
            return z;
        };
    };
    bis.sample_a = sampler(alat, ma.dim);
    bis.sample_b = sampler(blat, mb.dim);
    auto ker_sampler = [](const IntMatrix& bd, std::size_t dim) {
        return [bd, dim](bx::Rng& rng) {
            std::uniform_int_distribution<long> coef(-4, 4);
            std::vector<mpz_class> c(bd.cols());
            for (auto& v : c) v = coef(rng);
            auto z = bd.apply(c);
            z.resize(dim);
            return z;
        };
    };
    bis.sample_ker_a = ker_sampler(da_prev, ma.dim);
    bis.sample_ker_b = ker_sampler(db_prev, mb.dim);

    const ChainPairing cpc = cp;  // captured by value below
    bx::Trivialization<bx::VecZModel, bx::VecZModel, bx::FgModel> triv;
    triv.gn = mn;
    triv.psi = [cpc, da_prev, db_prev, p](const std::vector<mpz_class>& z,
                                          const std::vector<mpz_class>& w, int slot) {
        if (slot == 1) {
            auto x = solve(da_prev, z);
            if (!x) throw bx::PreconditionError("chain psi: first argument is not a boundary");
            return cpc.apply(p - 1, *x, w);
        }
        auto y = solve(db_prev, w);
        if (!y) throw bx::PreconditionError("chain psi: second argument is not a boundary");
        GroupElement v = cpc.apply(p, z, *y);
        return p % 2 == 0 ? v : cpc.n->neg(v);
    };

    ChainBiextension be = bx::build_quotient_biextension(std::move(bis), std::move(triv), cfg);
    return ChainBiextensionResult{std::move(be), std::move(ha), std::move(hb),
                                  std::move(ha_primed), std::move(hb_primed), std::move(alat),
                                  std::move(blat)};
}

GroupElement massey_weil(const ChainPairing& cp, const std::vector<mpz_class>& a,
                         const std::vector<mpz_class>& b, long l,
                         const std::vector<mpz_class>& a_tilde,
                         const std::vector<mpz_class>& b_tilde) {
    const int p = cp.p;
    IntMatrix da_prev = cp.a.diff(p - 1);
    IntMatrix db_prev = cp.b.diff(-p);
    auto da = da_prev.apply(a_tilde);
    auto db = db_prev.apply(b_tilde);
    for (std::size_t i = 0; i < da.size(); ++i)
        if (da[i] != l * a[i])
            throw Error("massey_weil: d(a_tilde) != l*a (coordinate " + std::to_string(i) + ")");
    for (std::size_t i = 0; i < db.size(); ++i)
        if (db[i] != l * b[i])
            throw Error("massey_weil: d(b_tilde) != l*b (coordinate " + std::to_string(i) + ")");
    GroupElement first = cp.apply(p - 1, a_tilde, b);
    GroupElement second = cp.apply(p, a, b_tilde);
    if (p % 2 != 0) second = cp.n->neg(second);
    return cp.n->add(first, cp.n->neg(second));
}

}  // namespace biext
