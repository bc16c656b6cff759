#pragma once

#include <map>
#include <string>
#include <vector>

#include "pgo/gpa.hpp"
#include "pgo/rational_function.hpp"

namespace pgo {

// Noncrossing perfect matching of 2n boundary points: 1..n on top left to
// right, n+1..2n on the bottom right to left (clockwise order).
class TLDiagram {
public:
    TLDiagram() = default;
    // partner[i] (0-based) for each of the 2n points
    explicit TLDiagram(std::vector<int> partner);
    static TLDiagram identity(int n);
    static TLDiagram e(int n, int i);

    int strands() const { return static_cast<int>(partner_.size()) / 2; }
    int partner(int point) const { return partner_[point - 1] + 1; }  // 1-based
    const std::vector<int>& matching() const { return partner_; }
    bool is_identity() const { return *this == identity(strands()); }

    // Stack this diagram on top of `below`; returns the result and the number of closed loops.
    std::pair<TLDiagram, int> compose(const TLDiagram& below) const;
    // Add a through strand on the right.
    TLDiagram tensor_id() const;

    std::string to_string() const;  // "[(1,2),(3,8),...]"
    friend auto operator<=>(const TLDiagram&, const TLDiagram&) = default;
    friend bool operator==(const TLDiagram&, const TLDiagram&) = default;

private:
    std::vector<int> partner_;
};

// All Catalan(n) diagrams, sorted.
std::vector<TLDiagram> enumerate_tl(int n);

using TLElement = std::map<TLDiagram, RationalFunction>;
TLElement tl_multiply(const TLElement& a, const TLElement& b, const RationalFunction& delta);

// f^(n) by the Wenzl recursion with loop value [2]; memoised.
const TLElement& jw_expansion(int n);

// Shortest word e_{i1} e_{i2} ... (top to bottom) realising the diagram; empty for the identity.
std::vector<int> e_word(const TLDiagram& d);

// Diagram realised in the subalgebra blocks as the product of e-generator boxes.
Box diagram_box(const TLDiagram& d, const DimensionTable& dims);
// f^(4) on the subalgebra blocks.
Box jw_box(const DimensionTable& dims);

}  // namespace pgo
