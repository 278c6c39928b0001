// Bounded complexes of free abelian groups and their homology, with
// explicit class/lift maps between cocycles and normal-form classes.
#pragma once

#include "biext/abelian.hpp"
#include "biext/zmatrix.hpp"

namespace biext {

class BoundedComplex {
public:
    /// ranks[i] = rank of the degree (lo+i) term; diffs[i] is d^{lo+i} from
    /// degree lo+i to lo+i+1 (so diffs has one entry fewer than ranks).
    BoundedComplex(int lo, std::vector<std::size_t> ranks, std::vector<IntMatrix> diffs);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    bool in_range(int degree) const { return degree >= lo() && degree <= hi(); }
    std::size_t rank(int degree) const;
    /// d^degree; a zero map of the right shape outside the stored range.
    IntMatrix diff(int degree) const;

private:
    int lo_;
    std::vector<std::size_t> ranks_;
    std::vector<IntMatrix> diffs_;
};

/// Cocycles are integer vectors in the degree-p term.
using Cocycle = std::vector<mpz_class>;

struct Homology {
    FgAbGroup group;
    IntMatrix kernel;  // columns span Ker d^p

    /// Class of a cocycle (throws if z is not a cocycle).
    GroupElement class_of(const Cocycle& z) const;
    /// A cocycle representing e; class_of(lift(e)) = e.
    Cocycle lift(const GroupElement& e) const;
};

/// H^p = Ker(d^p) / Im(d^{p-1}).
Homology homology(const BoundedComplex& c, int p);

}  // namespace biext
