#include "biext/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace biext {

FgAbGroup FgAbGroup::from_relations(const IntMatrix& rels) {
    // Generators index the columns; the subgroup of relations is the image of
    // rels^T as a column map.
    FgAbGroup g;
    g.ngens_ = rels.cols();
    IntMatrix m = rels.transpose();
    SnfResult snf = smith_normal_form(m);
    g.u_ = snf.u;
    g.uinv_ = snf.uinv;
    for (std::size_t i = 0; i < snf.rank; ++i) {
        const mpz_class& d = snf.s.at(i, i);
        if (d >= 2) {
            g.torsion_.push_back(d);
            g.keep_.push_back(i);
        }
    }
    for (std::size_t i = snf.rank; i < rels.cols(); ++i) g.keep_.push_back(i);
    g.rank_ = rels.cols() - snf.rank;
    return g;
}

FgAbGroup FgAbGroup::from_invariants(std::vector<mpz_class> torsion, std::size_t rank) {
    for (std::size_t i = 0; i + 1 < torsion.size(); ++i)
        if (torsion[i + 1] % torsion[i] != 0) throw Error("from_invariants: not a divisor chain");
    for (const auto& d : torsion)
        if (d < 2) throw Error("from_invariants: factor < 2");
    FgAbGroup g;
    g.torsion_ = std::move(torsion);
    g.rank_ = rank;
    g.ngens_ = g.torsion_.size() + rank;
    g.u_ = IntMatrix::identity(g.ngens_);
    g.uinv_ = g.u_;
    for (std::size_t i = 0; i < g.ngens_; ++i) g.keep_.push_back(i);
    return g;
}

mpz_class FgAbGroup::order() const {
    if (rank_ > 0) return 0;
    mpz_class o = 1;
    for (const auto& d : torsion_) o *= d;
    return o;
}

GroupElement FgAbGroup::reduce(const GroupElement& x) const {
    if (x.size() != coords()) throw Error("group element: wrong coordinate count");
    GroupElement out(x);
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        mpz_class r = out[i] % torsion_[i];
        if (r < 0) r += torsion_[i];
        out[i] = r;
    }
    return out;
}

GroupElement FgAbGroup::add(const GroupElement& x, const GroupElement& y) const {
    if (x.size() != coords() || y.size() != coords()) throw Error("add: wrong coordinates");
    GroupElement out(coords());
    for (std::size_t i = 0; i < coords(); ++i) out[i] = x[i] + y[i];
    return reduce(out);
}

GroupElement FgAbGroup::neg(const GroupElement& x) const {
    GroupElement out(coords());
    for (std::size_t i = 0; i < coords(); ++i) out[i] = -x[i];
    return reduce(out);
}

GroupElement FgAbGroup::scale(const mpz_class& k, const GroupElement& x) const {
    GroupElement out(coords());
    for (std::size_t i = 0; i < coords(); ++i) out[i] = k * x[i];
    return reduce(out);
}

bool FgAbGroup::eq(const GroupElement& x, const GroupElement& y) const {
    return reduce(x) == reduce(y);
}

bool FgAbGroup::is_zero(const GroupElement& x) const {
    GroupElement r = reduce(x);
    return std::all_of(r.begin(), r.end(), [](const mpz_class& v) { return v == 0; });
}

GroupElement FgAbGroup::from_generators(const std::vector<mpz_class>& x) const {
    if (x.size() != ngens_) throw Error("from_generators: wrong generator count");
    std::vector<mpz_class> y = u_.apply(x);
    GroupElement out(coords());
    for (std::size_t i = 0; i < keep_.size(); ++i) out[i] = y[keep_[i]];
    return reduce(out);
}

std::vector<mpz_class> FgAbGroup::to_generators(const GroupElement& e) const {
    GroupElement r = reduce(e);
    std::vector<mpz_class> y(ngens_);
    for (std::size_t i = 0; i < keep_.size(); ++i) y[keep_[i]] = r[i];
    return uinv_.apply(y);
}

std::vector<GroupElement> FgAbGroup::elements(std::size_t limit) const {
    mpz_class o = order();
    if (o == 0 || o > static_cast<long>(limit))
        throw Error("elements: group infinite or larger than limit (" + describe() + ")");
    std::vector<GroupElement> out;
    GroupElement cur(coords());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == coords()) {
            out.push_back(cur);
            return;
        }
        for (mpz_class v = 0; v < torsion_[i]; ++v) {
            cur[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::string FgAbGroup::str(const GroupElement& x) const {
    std::ostringstream os;
    os << "(";
    GroupElement r = reduce(x);
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i].get_str();
    os << ")";
    return os.str();
}

std::string FgAbGroup::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion_) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    if (rank_ > 0) {
        os << (first ? "" : " + ") << "Z^" << rank_;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

FgAbGroup group_from_relations(const IntMatrix& rels) { return FgAbGroup::from_relations(rels); }

GroupElement Subgroup::embed(const FgAbGroup& parent, const GroupElement& e) const {
    std::vector<mpz_class> z = group.to_generators(e);
    return parent.reduce(gens_in_parent.apply(z));
}

Subgroup subgroup_from_generators(const FgAbGroup& parent, const std::vector<GroupElement>& gens) {
    const std::size_t m = gens.size();
    const std::size_t nc = parent.coords();
    IntMatrix g(nc, m);
    for (std::size_t j = 0; j < m; ++j) {
        GroupElement r = parent.reduce(gens[j]);
        for (std::size_t i = 0; i < nc; ++i) g.at(i, j) = r[i];
    }
    // Relations among the generators: z with g*z = 0 in the parent, i.e.
    // g*z inside the lattice spanned by the torsion moduli.
    const auto& tors = parent.torsion();
    IntMatrix mods(nc, tors.size());
    for (std::size_t i = 0; i < tors.size(); ++i) mods.at(i, i) = tors[i];
    IntMatrix rel = preimage_lattice(g, mods);
    Subgroup s{FgAbGroup::from_relations(rel.transpose()), g};
    return s;
}

bool subgroup_contains(const FgAbGroup& parent, const Subgroup& s, const GroupElement& e) {
    // e is in the image iff gens * z = e modulo the parent's torsion lattice.
    const auto& tors = parent.torsion();
    IntMatrix mods(parent.coords(), tors.size());
    for (std::size_t i = 0; i < tors.size(); ++i) mods.at(i, i) = tors[i];
    IntMatrix block = s.gens_in_parent.hcat(mods);
    return solve(block, parent.reduce(e)).has_value();
}

Subgroup l_torsion(const FgAbGroup& g, const mpz_class& l) {
    if (l < 1) throw Error("l_torsion: l must be >= 1");
    // Free part contributes nothing; each Z/d contributes the subgroup of
    // order gcd(l, d) generated by (d/gcd)*e_i.
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < g.torsion().size(); ++i) {
        mpz_class d = g.torsion()[i];
        mpz_class gc;
        mpz_gcd(gc.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        if (gc < 2) continue;
        GroupElement e(g.coords());
        e[i] = d / gc;
        gens.push_back(e);
    }
    return subgroup_from_generators(g, gens);
}

GroupElement GeneratorPairing::apply(const GroupElement& x, const GroupElement& y) const {
    GroupElement xr = h->reduce(x), yr = k->reduce(y);
    GroupElement acc = n->zero();
    for (std::size_t i = 0; i < xr.size(); ++i) {
        if (xr[i] == 0) continue;
        for (std::size_t j = 0; j < yr.size(); ++j) {
            if (yr[j] == 0) continue;
            acc = n->add(acc, n->scale(xr[i] * yr[j], values[i][j]));
        }
    }
    return acc;
}

void GeneratorPairing::check_bilinear() const {
    if (values.size() != h->coords()) throw Error("pairing: wrong row count");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].size() != k->coords()) throw Error("pairing: wrong column count");
        mpz_class oi = i < h->torsion().size() ? h->torsion()[i] : 0;
        for (std::size_t j = 0; j < values[i].size(); ++j) {
            mpz_class oj = j < k->torsion().size() ? k->torsion()[j] : 0;
            if (oi != 0 && !n->is_zero(n->scale(oi, values[i][j])))
                throw Error("pairing not bilinear at generator pair (" + std::to_string(i) +
                            "," + std::to_string(j) + "): order of first argument not respected");
            if (oj != 0 && !n->is_zero(n->scale(oj, values[i][j])))
                throw Error("pairing not bilinear at generator pair (" + std::to_string(i) +
                            "," + std::to_string(j) + "): order of second argument not respected");
        }
    }
}

Subgroup annihilator_subgroup(const GeneratorPairing& pairing) {
    pairing.check_bilinear();
    const FgAbGroup& h = *pairing.h;
    const FgAbGroup& k = *pairing.k;
    const FgAbGroup& n = *pairing.n;
    // x annihilates k iff sum_i x_i * values[i][j] = 0 in N for every j.
    // Stack the constraints into one integer congruence system.
    const std::size_t nh = h.coords();
    const std::size_t rows = k.coords() * n.coords();
    IntMatrix m(rows, nh);
    for (std::size_t j = 0; j < k.coords(); ++j)
        for (std::size_t c = 0; c < n.coords(); ++c)
            for (std::size_t i = 0; i < nh; ++i)
                m.at(j * n.coords() + c, i) = pairing.values[i][j][c];
    // Right-hand lattice: torsion moduli of N (per constraint row) plus the
    // torsion moduli of h itself (x is only defined mod those).
    std::vector<IntMatrix> cols;
    IntMatrix mods(rows, k.coords() * n.torsion().size() + h.torsion().size());
    std::size_t col = 0;
    for (std::size_t j = 0; j < k.coords(); ++j)
        for (std::size_t c = 0; c < n.torsion().size(); ++c)
            mods.at(j * n.coords() + c, col++) = n.torsion()[c];
    for (std::size_t i = 0; i < h.torsion().size(); ++i) {
        // d_i * e_i pushed through the pairing rows.
        for (std::size_t r = 0; r < rows; ++r) mods.at(r, col) = m.at(r, i) * h.torsion()[i];
        ++col;
    }
    IntMatrix lat = preimage_lattice(m, mods);
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < lat.cols(); ++j) {
        GroupElement e(nh);
        for (std::size_t i = 0; i < nh; ++i) e[i] = lat.at(i, j);
        gens.push_back(h.reduce(e));
    }
    return subgroup_from_generators(h, gens);
}

FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b) {
    // Cyclic pieces: orders (d_i and 0 for each free generator); the tensor of
    // Z/m and Z/n is Z/gcd(m,n) with the convention gcd(m,0)=m, gcd(0,0)=0.
    std::vector<mpz_class> oa(a.torsion()), ob(b.torsion());
    oa.insert(oa.end(), a.rank(), mpz_class(0));
    ob.insert(ob.end(), b.rank(), mpz_class(0));
    std::vector<mpz_class> pieces;
    for (const auto& x : oa)
        for (const auto& y : ob) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            pieces.push_back(g);
        }
    IntMatrix rels(pieces.size(), pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) rels.at(i, i) = pieces[i];
    return FgAbGroup::from_relations(rels);
}

}  // namespace biext
