#ifndef TATEKIT_ATLAS_HPP
#define TATEKIT_ATLAS_HPP

#include <map>
#include <string>

#include "tatekit/presentation.hpp"

namespace tatekit::atlas {

// Catalogued algebra with its predicted cohomology data. `expected_h` holds
// the published dimension table for H^n(A,k), n = 0.., where available;
// `oracle_h` holds independently derived values the engine must reproduce.
struct Entry {
    std::string name;
    std::map<std::string, u32> params;
    Presentation pres;
    std::vector<u32> expected_h;        // claimed dims (provenance: source text)
    std::vector<u32> oracle_h;          // independently derived dims (empty if none)
    bool expect_negative_products_zero = true;
    std::string notes;
};

// x, y, g with x^N = y^N = 0, g^N = 1, xg = w gx, gy = w yg, xy = w yx,
// over F_p with w a primitive N-th root of unity. Needs N | p-1, N > 1, p >= 5.
Entry radford(u32 n, u32 p);

// restricted enveloping algebra of sl2 over F_p, p > 3.
Entry vsl2(u32 p);

// commutative truncated polynomial algebra k[x,Y]/(x^N, Y^N), augmentation only.
Entry truncated(u32 n, u32 p);

// group algebra of Z/p as a p-truncated polynomial-style presentation with
// group-like generator; the periodic contrast case.
Entry cyclic(u32 p);

// Lookup by name with parameters; throws precondition_error on bad input.
Entry by_name(const std::string& name, const std::map<std::string, u32>& params);

}  // namespace tatekit::atlas

#endif
