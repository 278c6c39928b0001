// Biextensions induced by a pairing between bounded complexes: the primed
// (annihilator) homology subgroups, the chain-level psi formulas
//   psi(d_A a, b) = phi(a ⊗ b),   psi(a, d_B b) = (-1)^p phi(a ⊗ b),
// and the Massey-triple-product form of the Weil pairing.
#pragma once

#include <map>
#include <memory>

#include "biext/biextension.hpp"
#include "biext/complexes.hpp"
#include "biext/models.hpp"

namespace biext {

/// Degreewise bilinear maps phi_i : A^i x B^{-i} -> N on generators:
/// table[i][s][t] is the value on the s-th generator of A^i and the t-th
/// generator of B^{-i}. Missing degrees are the zero map.
struct ChainPairing {
    BoundedComplex a;
    BoundedComplex b;
    std::shared_ptr<const FgAbGroup> n;
    std::map<int, std::vector<std::vector<GroupElement>>> phi;
    int p = 0;

    /// phi_i applied to arbitrary coordinate vectors.
    GroupElement apply(int i, const std::vector<mpz_class>& x,
                       const std::vector<mpz_class>& y) const;

    /// Chain-map condition phi_{i+1}(d_A a, b) + (-1)^i phi_i(a, d_B b) = 0
    /// on all generator pairs; throws naming the offending pair.
    void validate() const;
};

using ChainBiextension = bx::Biextension<bx::VecZModel, bx::VecZModel, bx::FgModel>;

struct ChainBiextensionResult {
    ChainBiextension biext;
    Homology ha;      // H^p(A)
    Homology hb;      // H^{1-p}(B)
    Subgroup ha_primed;
    Subgroup hb_primed;
    /// Generators of the primed cocycle lattices (columns), used by samplers.
    IntMatrix a_lattice;
    IntMatrix b_lattice;
};

/// T = Ker(d_A^p)' x Ker(d_B^{1-p})' with the paper's psi; base groups are
/// the primed homology subgroups.
ChainBiextensionResult biextension_from_chain_pairing(const ChainPairing& cp,
                                                      const bx::AuditConfig& cfg = {});

/// Weil pairing at chain level from user-supplied bounding chains:
/// requires d(a_tilde) = l*a and d(b_tilde) = l*b, and returns
/// phi(a_tilde ⊗ b) - (-1)^p phi(a ⊗ b_tilde) — the pushforward of the
/// Massey representative of <a, l, b>.
GroupElement massey_weil(const ChainPairing& cp, const std::vector<mpz_class>& a,
                         const std::vector<mpz_class>& b, long l,
                         const std::vector<mpz_class>& a_tilde,
                         const std::vector<mpz_class>& b_tilde);

}  // namespace biext
