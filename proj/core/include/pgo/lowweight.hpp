#pragma once

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pgo/gpa.hpp"

namespace pgo {

// (v0, v2, v4, v6) with each entry in {2, P, Q}; the odd positions of the loop are all 3.
using CollapsedTuple = std::array<Vertex, 4>;

Loop collapsed_loop(const CollapsedTuple& t);
std::optional<CollapsedTuple> as_collapsed(const Loop& l);
std::string tuple_string(const CollapsedTuple& t);  // "2PQ2"
// All 81 tuples in lexicographic order (2 < P < Q).
std::vector<CollapsedTuple> collapsed_tuples();

struct CollapseOptions {
    // fault injection. The 2-1-2 / 2-3-2 sign is a diagonal gauge: flipping it
    // changes no component with an even number of 1s. The P term of the
    // relations at 3 is not.
    bool flip_lws2_sign = false;
    bool flip_lws3_p_sign = false;
    std::mt19937_64* rng = nullptr;   // pick rewrite sites in random order
};

// S(loop) = factor * S(target) for every lowest-weight 4-box S, or zero.
struct CollapseResult {
    bool zero = false;
    RadicalScalar factor;
    CollapsedTuple target{};
};
CollapseResult collapse(const Loop& l, const DimensionTable& dims, const CollapseOptions& opt = {});

// Rotation orbit of collapsed loops for the eigenvalue of `dims`:
// S(members[i]) = weights[i] * S(members[0]) for every rotational eigenvector.
struct Orbit {
    std::vector<CollapsedTuple> members;
    std::vector<RadicalScalar> weights;
    bool forced_zero = false;
    std::string reason;  // why forced_zero
};
std::vector<Orbit> orbit_decomposition(const DimensionTable& dims);

struct LinearEquation {
    std::string tag;
    std::vector<std::pair<int, RadicalScalar>> terms;  // orbit index, coefficient
};
// Every cap relation with a 3 on both sides of the apex, on collapsed loops, expressed in orbit unknowns.
std::vector<LinearEquation> lws3_system(const DimensionTable& dims, const std::vector<Orbit>& orbits,
                                        const CollapseOptions& opt = {});

// Affine expression c[0] + sum_i c[i] t_i.
struct AffineExpr {
    std::vector<RadicalScalar> c;
    bool is_zero() const;
};

// Box with entries affine in parameters: parts[0] is the constant part and
// parts[i] the coefficient box of parameter i.
class SymbolicBox {
public:
    SymbolicBox() = default;
    SymbolicBox(std::vector<std::string> params, std::vector<Box> parts);
    const std::vector<std::string>& params() const { return params_; }
    const std::vector<Box>& parts() const { return parts_; }
    int parameter_count() const { return static_cast<int>(params_.size()); }
    AffineExpr at(const Loop& l) const;
    std::vector<Loop> support() const;
    SymbolicBox restricted(const std::function<bool(const Loop&)>& keep) const;
    nlohmann::json to_json() const;

private:
    std::vector<std::string> params_;
    std::vector<Box> parts_;
};

struct SolutionSpace {
    Omega omega;
    int collapsed_loops = 0;
    int orbits = 0;
    int forced_zero_orbits = 0;
    int unknowns = 0;  // orbits not forced to zero
    int equations = 0;
    int rank = 0;
    int dimension = 0;
    std::vector<CollapsedTuple> parameter_tuples;
    std::vector<RationalFunction> side_conditions;  // norms of the pivots divided by
    SymbolicBox box;  // every loop of depth <= 5
    SymbolicBox on_subalgebra() const;
    nlohmann::json to_json() const;
};

SolutionSpace assemble_solution_space(const DimensionTable& dims, const CollapseOptions& opt = {});

// Caps whose sums lie entirely in the populated loops vanish on every part.
bool annihilated_by_caps(const SymbolicBox& s, const DimensionTable& dims);
// rotate(part) == omega * part for every part.
bool is_rotation_eigenvector(const SymbolicBox& s, const DimensionTable& dims);

}  // namespace pgo
