// Finitely generated abelian groups in Smith normal form, with explicit
// change-of-basis witnesses so elements can be moved between the original
// generators and the normal-form coordinates.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "biext/zmatrix.hpp"

namespace biext {

/// Coordinates in a group's normal-form basis: torsion slots first
/// (reduced into [0, d_i)), then free slots.
using GroupElement = std::vector<mpz_class>;

class FgAbGroup {
public:
    /// Cokernel of the relation matrix (rows = relations, one column per
    /// generator). Invariant factors of 1 are dropped.
    static FgAbGroup from_relations(const IntMatrix& rels);
    /// Direct construction of ⊕ Z/d_i ⊕ Z^rank; factors must form a chain.
    static FgAbGroup from_invariants(std::vector<mpz_class> torsion, std::size_t rank);

    std::size_t rank() const { return rank_; }
    const std::vector<mpz_class>& torsion() const { return torsion_; }
    std::size_t coords() const { return torsion_.size() + rank_; }
    std::size_t generators() const { return ngens_; }

    /// Order of the group; 0 when infinite, 1 when trivial.
    mpz_class order() const;
    bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }

    GroupElement zero() const { return GroupElement(coords()); }
    GroupElement add(const GroupElement& x, const GroupElement& y) const;
    GroupElement neg(const GroupElement& x) const;
    GroupElement scale(const mpz_class& k, const GroupElement& x) const;
    bool eq(const GroupElement& x, const GroupElement& y) const;
    bool is_zero(const GroupElement& x) const;
    /// Reduce arbitrary integer coordinates into normal form.
    GroupElement reduce(const GroupElement& x) const;

    /// Class of a vector expressed in the original generators.
    GroupElement from_generators(const std::vector<mpz_class>& x) const;
    /// A representative of e in the original generators (lift of the class).
    std::vector<mpz_class> to_generators(const GroupElement& e) const;

    /// All elements, in lexicographic coordinate order. Throws when the group
    /// is infinite or larger than `limit`.
    std::vector<GroupElement> elements(std::size_t limit = 100000) const;

    std::string str(const GroupElement& x) const;
    std::string describe() const;  // e.g. "Z/2 + Z/6 + Z^1"

private:
    std::size_t rank_ = 0;
    std::vector<mpz_class> torsion_;
    std::size_t ngens_ = 0;
    IntMatrix u_, uinv_;            // witness: y = u_ * x, x = uinv_ * y
    std::vector<std::size_t> keep_; // rows of u_ kept as coordinates (torsion then free)
};

/// A subgroup presented abstractly together with its embedding.
struct Subgroup {
    FgAbGroup group;
    // Column j = parent normal-form coordinates of the j-th subgroup generator.
    IntMatrix gens_in_parent;
    /// Embed a subgroup element into the parent.
    GroupElement embed(const FgAbGroup& parent, const GroupElement& e) const;
};

FgAbGroup group_from_relations(const IntMatrix& rels);

/// Structure of the subgroup of `parent` generated by the given elements
/// (each a normal-form coordinate vector).
Subgroup subgroup_from_generators(const FgAbGroup& parent, const std::vector<GroupElement>& gens);

/// Does e lie in the image of the subgroup's embedding?
bool subgroup_contains(const FgAbGroup& parent, const Subgroup& s, const GroupElement& e);

/// { a in g : l*a = 0 } with its embedding.
Subgroup l_torsion(const FgAbGroup& g, const mpz_class& l);

/// A bilinear pairing h x k -> n presented by its values on normal-form
/// generator pairs: values[i][j] = pairing(h_i, k_j).
struct GeneratorPairing {
    const FgAbGroup* h;
    const FgAbGroup* k;
    const FgAbGroup* n;
    std::vector<std::vector<GroupElement>> values;

    GroupElement apply(const GroupElement& x, const GroupElement& y) const;
    /// Bilinearity on generators: order(h_i)*values[i][j] = 0 and
    /// order(k_j)*values[i][j] = 0. Throws naming the offending pair.
    void check_bilinear() const;
};

/// { x in h : pairing(x, y) = 0 for all y in k }, with inclusion.
Subgroup annihilator_subgroup(const GeneratorPairing& pairing);

/// h ⊗ k in normal form.
FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b);

}  // namespace biext
