#include "biext/complexes.hpp"

namespace biext {

BoundedComplex::BoundedComplex(int lo, std::vector<std::size_t> ranks, std::vector<IntMatrix> diffs)
    : lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
    if (ranks_.empty()) throw Error("complex: empty degree range");
    if (diffs_.size() + 1 != ranks_.size())
        throw Error("complex: need one differential per adjacent degree pair");
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
        if (diffs_[i].rows() != ranks_[i + 1] || diffs_[i].cols() != ranks_[i])
            throw Error("complex: differential shape mismatch at degree " +
                        std::to_string(lo_ + static_cast<int>(i)));
    }
    for (std::size_t i = 0; i + 1 < diffs_.size(); ++i) {
        if (!(diffs_[i + 1] * diffs_[i]).is_zero())
            throw Error("complex: d = 0 fails at degree " + std::to_string(lo_ + static_cast<int>(i)));
    }
}

std::size_t BoundedComplex::rank(int degree) const {
    if (!in_range(degree)) return 0;
    return ranks_[static_cast<std::size_t>(degree - lo_)];
}

IntMatrix BoundedComplex::diff(int degree) const {
    if (degree >= lo_ && degree < hi()) return diffs_[static_cast<std::size_t>(degree - lo_)];
    return IntMatrix(rank(degree + 1), rank(degree));
}

GroupElement Homology::class_of(const Cocycle& z) const {
    auto c = solve(kernel, z);
    if (!c) throw Error("class_of: vector is not a cocycle");
    return group.from_generators(*c);
}

Cocycle Homology::lift(const GroupElement& e) const {
    return kernel.apply(group.to_generators(e));
}

Homology homology(const BoundedComplex& c, int p) {
    if (!c.in_range(p)) throw Error("homology: degree " + std::to_string(p) + " out of range");
    IntMatrix k = kernel_basis(c.diff(p));
    // Classes = kernel coordinates modulo coordinates of the boundaries.
    IntMatrix pre = preimage_lattice(k, c.diff(p - 1));
    Homology h{FgAbGroup::from_relations(pre.transpose()), k};
    return h;
}

}  // namespace biext
