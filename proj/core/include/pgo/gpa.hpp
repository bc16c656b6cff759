#pragma once

#include <nlohmann/json.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pgo/radical.hpp"
#include "pgo/rational_function.hpp"

namespace pgo {

// Vertices of the template graph: the chain 0-1-2-3 branching to P-P' and Q-Q'.
enum Vertex : std::uint8_t { V0, V1, V2, V3, VP, VQ, VPp, VQp };
inline constexpr int kVertexCount = 8;

int depth_of(Vertex v);
const std::vector<Vertex>& neighbours(Vertex v);
std::string_view vertex_name(Vertex v);
// Depth-5 vertices have neighbours at depth 6 outside the template.
inline bool neighbourhood_complete(Vertex v) { return depth_of(v) <= 4; }

enum class Omega { Minus = -1, Plus = 1 };

// (a r + b) / (r + 1) with a, b in Q(q): dimensions as functions of q and a formal r.
struct RLinear {
    RationalFunction a, b;
    RLinear operator+(const RLinear& o) const { return {a + o.a, b + o.b}; }
    RLinear operator*(const RationalFunction& s) const { return {a * s, b * s}; }
    friend bool operator==(const RLinear& x, const RLinear& y) { return x.a == y.a && x.b == y.b; }
    RationalFunction at(const RationalFunction& r) const { return (a * r + b) / (r + 1); }
};
std::array<RLinear, kVertexCount> symbolic_dimensions();

class DimensionTable {
public:
    explicit DimensionTable(Omega omega);
    Omega omega() const { return omega_; }
    const RationalFunction& dim(Vertex v) const { return d_[v]; }
    const RationalFunction& r() const { return r_; }
    const RationalFunction& delta() const { return delta_; }  // [2]
    // (dim b / dim a)^kappa with kappa = 1 or 1/2
    const RadicalScalar& ratio(Vertex b, Vertex a, bool full) const { return full ? full_[b][a] : half_[b][a]; }

private:
    Omega omega_;
    std::array<RationalFunction, kVertexCount> d_;
    RationalFunction r_, delta_;
    std::array<std::array<RadicalScalar, kVertexCount>, kVertexCount> full_, half_;
};
DimensionTable dimension_table(Omega omega);

// k points on top, m on the bottom; a loop has k + m vertices: the base region
// at position 0, top regions 1..k-1, the mid region at k, bottom regions
// k+1..k+m-1 read right to left.
struct Shape {
    int k = 4, m = 4;
    int length() const { return k + m; }
    friend auto operator<=>(const Shape&, const Shape&) = default;
};

struct Loop {
    static constexpr int kMax = 12;
    std::array<std::uint8_t, kMax> v{};
    std::uint8_t n = 0;
    Vertex operator[](int i) const { return static_cast<Vertex>(v[i]); }
    int size() const { return n; }
    friend auto operator<=>(const Loop&, const Loop&) = default;
    friend bool operator==(const Loop&, const Loop&) = default;
};

using Path = std::vector<Vertex>;

Loop make_loop(const std::vector<Vertex>& vertices);
// A 4-box loop from its top path p and bottom path p' (both from base to mid).
Loop loop_from_paths(const Path& top, const Path& bottom);
std::pair<Path, Path> paths_of(const Loop& l);  // 4-box loops only
std::string path_string(const Path& p);
std::string loop_string(const Loop& l);  // "top|bottom" for 4-boxes
Path parse_path(std::string_view s);
// "23232,23P32" -> loop
Loop parse_entry(std::string_view s);

int max_depth(const Loop& l);
bool in_subalgebra(const Loop& l);  // base, mid in {0,2,P,Q}, excluding (P,P), (Q,Q)

// Paths of the given length from a to b through template vertices of depth <= depth_bound.
std::vector<Path> paths_between(Vertex a, Vertex b, int length, int depth_bound);
// All loops of block M_{a,b} (pairs of length-4 paths); throws for odd-depth a or b.
std::vector<Loop> enumerate_block(Vertex a, Vertex b, int depth_bound);
// All closed walks of a shape with even-depth base through depth <= depth_bound.
std::vector<Loop> enumerate_loops(Shape s, int depth_bound);

class Box {
public:
    Box() = default;
    explicit Box(Shape s) : shape_(s) {}

    Shape shape() const { return shape_; }
    const std::map<Loop, RadicalScalar>& entries() const { return entries_; }
    RadicalScalar at(const Loop& l) const;
    void set(const Loop& l, const RadicalScalar& x);
    void add(const Loop& l, const RadicalScalar& x);
    bool is_zero() const { return entries_.empty(); }

    Box operator+(const Box& o) const;
    Box operator-(const Box& o) const;
    Box operator*(const RadicalScalar& s) const;
    friend bool operator==(const Box& a, const Box& b) { return a.shape_ == b.shape_ && a.entries_ == b.entries_; }

    // Entries restricted to loops satisfying the predicate.
    Box restricted(const std::function<bool(const Loop&)>& keep) const;
    nlohmann::json to_json() const;

private:
    Shape shape_;
    std::map<Loop, RadicalScalar> entries_;
};

// Blockwise matrix product of 4-boxes over the stored entries. Exact on the
// subalgebra blocks, whose intermediate paths never leave depth 5.
Box multiply(const Box& x, const Box& y);
Box adjoint(const Box& x);

// Shape after capping at an apex, and the loop surgery used by caps and cups.
Shape cap_shape(Shape s, int apex);
bool cap_kappa_full(Shape s, int apex);
Loop remove_at(const Loop& l, Shape s, int apex);
Loop insert_at(const Loop& lower, Shape upper, int apex, Vertex beta);
Vertex cap_alpha(const Loop& upper, Shape s, int apex);  // the vertex on both sides of the apex
// Whether every loop that a cap at this apex sums over for `lower` is known.
bool cap_complete(const Loop& lower, Shape upper, int apex, const std::function<bool(const Loop&)>& known);

// (cap_j S)(l) = sum_beta (dim beta / dim alpha)^kappa S(l with beta inserted at j);
// kappa = 1 at the base or mid apex and 1/2 elsewhere.
Box cap(const Box& s, int apex, const DimensionTable& dims);
// Inverse insertion with weight (dim beta / dim alpha)^(1 - kappa), so that
// cap_j(cup_j T) = [2] T. `upper` is the shape of the result.
Box cup(const Box& t, Shape upper, int apex, const DimensionTable& dims);

// One click: bend a strand down on the left, then up on the right.
Box click(const Box& s, const DimensionTable& dims);
// Two clicks: the rotation of 4-boxes preserving shading.
Box rotate(const Box& s, const DimensionTable& dims);
// Rotation of a single basis loop: rotate(delta_source) = weight * delta_target.
struct RotationImage {
    Loop target;
    RadicalScalar weight;
};
RotationImage rotation_image(const Loop& source, const DimensionTable& dims);

Box identity_box(Shape s, const DimensionTable& dims);
Box identity_box(const DimensionTable& dims);  // 4-box
Box e_box(int i, const DimensionTable& dims);  // i = 1, 2, 3

}  // namespace pgo
