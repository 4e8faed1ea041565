#pragma once

#include <vector>

#include "cubic/eisenstein.hpp"

namespace cubic {

// Z[w]/c with a canonical box of representatives {x + y*w : 0 <= x < N/g, 0 <= y < g},
// g = gcd of the coordinates of c. Representatives are addressed by index x + (N/g)*y.
class ResidueRing {
public:
    explicit ResidueRing(const Eis& c);

    const Eis& modulus() const { return c_; }
    i64 size() const { return n_; }
    // index = x + row_length() * y with 0 <= y < rows()
    i64 row_length() const { return n1_; }
    i64 rows() const { return g_; }

    Eis element(i64 idx) const { return {idx % n1_, idx / n1_}; }
    i64 index(const Eis& z) const;
    Eis reduce(const Eis& z) const { return element(index(z)); }

    Eis mul(const Eis& x, const Eis& y) const;
    Eis add(const Eis& x, const Eis& y) const { return reduce({x.a + y.a, x.b + y.b}); }
    Eis pow(Eis x, u64 e) const;

    // numerator v of e(z/c) = exp(2 pi i v / N)
    i64 phase(const Eis& z) const;

    bool is_unit(const Eis& z) const;
    // inverse of a unit; throws if z is not invertible
    Eis inverse(const Eis& z) const;

    // indices of the reduced residues, in increasing index order
    std::vector<i64> units() const;
    // inverse index per index, -1 where not invertible
    std::vector<i64> inverse_table() const;

private:
    Eis c_;
    i64 n_;   // N(c)
    i64 n1_;  // N(c)/g
    i64 g_;
    i64 h_;   // c*Z[w] contains h + g*w
};

}  // namespace cubic
