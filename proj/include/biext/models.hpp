// Group models plugging the exact abelian-group types into the
// biextension machinery.
#pragma once

#include <memory>
#include <sstream>

#include "biext/abelian.hpp"
#include "biext/biextension.hpp"

namespace biext::bx {

/// Normal-form f.g. abelian group.
struct FgModel {
    std::shared_ptr<const FgAbGroup> g;
    using Elem = GroupElement;
    Elem add(const Elem& x, const Elem& y) const { return g->add(x, y); }
    Elem neg(const Elem& x) const { return g->neg(x); }
    Elem zero() const { return g->zero(); }
    bool eq(const Elem& x, const Elem& y) const { return g->eq(x, y); }
    std::string str(const Elem& x) const { return g->str(x); }
    std::vector<Elem> all() const { return g->elements(); }
};

/// The integers.
struct IntModel {
    using Elem = mpz_class;
    Elem add(const Elem& x, const Elem& y) const { return x + y; }
    Elem neg(const Elem& x) const { return -x; }
    Elem zero() const { return 0; }
    bool eq(const Elem& x, const Elem& y) const { return x == y; }
    std::string str(const Elem& x) const { return x.get_str(); }
};

/// Z^dim with componentwise operations (cocycle vectors).
struct VecZModel {
    std::size_t dim = 0;
    using Elem = std::vector<mpz_class>;
    Elem add(const Elem& x, const Elem& y) const {
        Elem out(dim);
        for (std::size_t i = 0; i < dim; ++i) out[i] = x[i] + y[i];
        return out;
    }
    Elem neg(const Elem& x) const {
        Elem out(dim);
        for (std::size_t i = 0; i < dim; ++i) out[i] = -x[i];
        return out;
    }
    Elem zero() const { return Elem(dim); }
    bool eq(const Elem& x, const Elem& y) const { return x == y; }
    std::string str(const Elem& x) const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i].get_str();
        os << ")";
        return os.str();
    }
};

}  // namespace biext::bx
