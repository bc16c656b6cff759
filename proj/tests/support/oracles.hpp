// Independent reference computations used only by tests.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pgo/gpa.hpp"
#include "pgo/rational_function.hpp"
#include "pgo/temperley_lieb.hpp"
#include "pgo/zpoly.hpp"

namespace oracle {

// A Laurent rational function kept as raw coefficient lists, never normalised.
struct RawRational {
    std::vector<mpq_class> num;  // coefficient of q^(i + num_shift)
    int num_shift = 0;
    std::vector<mpq_class> den;
    int den_shift = 0;
};

RawRational random_raw(std::mt19937_64& rng, int max_deg = 4, int max_coeff = 5);
pgo::RationalFunction to_rf(const RawRational& r);
// Direct big-rational evaluation without any canonicalisation.
mpq_class eval(const RawRational& r, const mpq_class& q);

pgo::ZPoly random_zpoly(std::mt19937_64& rng, int deg, int max_coeff);
mpq_class random_q(std::mt19937_64& rng);

// Random well-formed bigraph string: every vertex meets the previous depth.
std::string random_bigraph_text(std::mt19937_64& rng, bool with_duals);

// Temperley-Lieb diagrams as perfect matchings of 2n points: top 0..n-1 and
// bottom n..2n-1, both read left to right.
using Matching = std::vector<int>;
// Brute force over all perfect matchings, keeping the planar ones.
std::vector<Matching> noncrossing_matchings(int n);
// `top` stacked on `bottom`: the matching and the number of closed loops.
std::pair<Matching, int> stack(const Matching& top, const Matching& bottom);
Matching from_core(const pgo::TLDiagram& d);
Matching e_matching(int n, int i);
// f^(n) at a rational q: the identity plus the unique combination of other
// diagrams killed by every e_i from above, by dense linear algebra.
std::map<Matching, mpq_class> jw_at(int n, const mpq_class& q);

// (e_i)_{top,bottom} from the state-sum formula: paths agree away from i,
// turn back at i, weight sqrt(dim p_i dim p'_i) / dim p_(i-1).
pgo::RadicalScalar e_entry(int i, const pgo::Path& top, const pgo::Path& bottom, const pgo::DimensionTable& dims);

}  // namespace oracle
