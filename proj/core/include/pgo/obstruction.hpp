#pragma once

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgo/bigraph.hpp"
#include "pgo/gpa.hpp"
#include "pgo/lowweight.hpp"
#include "pgo/roots.hpp"

namespace pgo {

// Sparse polynomial of low degree in indexed variables with RadicalScalar coefficients.
class QuadPoly {
public:
    using Monomial = std::vector<int>;  // sorted variable indices, with repetition

    QuadPoly() = default;
    QuadPoly(const RadicalScalar& c);
    static QuadPoly variable(int v);

    const std::map<Monomial, RadicalScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    RadicalScalar constant() const;
    RadicalScalar coefficient(const Monomial& m) const;
    std::set<int> variables() const;
    int degree() const;

    QuadPoly operator-() const;
    QuadPoly& operator+=(const QuadPoly& o);
    QuadPoly& operator-=(const QuadPoly& o);
    friend QuadPoly operator+(QuadPoly a, const QuadPoly& b) { return a += b; }
    friend QuadPoly operator-(QuadPoly a, const QuadPoly& b) { return a -= b; }
    friend QuadPoly operator*(const QuadPoly& a, const QuadPoly& b);
    friend bool operator==(const QuadPoly& a, const QuadPoly& b) { return a.terms_ == b.terms_; }

    QuadPoly substitute(int v, const RadicalScalar& value) const;
    std::string to_string(const std::vector<std::string>& names) const;

private:
    void add_term(const Monomial& m, const RadicalScalar& c);
    std::map<Monomial, RadicalScalar> terms_;
};

struct EliminationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The solution space rewritten in chosen coordinates: each target entry becomes
// a variable, the remaining free parameters stay as they are.
struct Target {
    std::string name;
    std::string entry;  // "top,bottom"
};

class EliminationContext {
public:
    EliminationContext(const DimensionTable& dims, const std::vector<Target>& targets, const CollapseOptions& opt = {});

    const DimensionTable& dims() const { return dims_; }
    const SolutionSpace& space() const { return space_; }
    const Box& jw() const { return jw_; }
    const std::vector<std::string>& variables() const { return names_; }
    int variable_index(const std::string& name) const;

    // The entry of S, affine in the variables; loops outside the subalgebra are rejected.
    QuadPoly entry(const Loop& l) const;
    // (S S - (1 - r) S - r f4) at the loop; intermediate paths stay within depth 5.
    QuadPoly component(const Loop& l) const;

private:
    DimensionTable dims_;
    SolutionSpace space_;
    Box jw_;
    std::vector<std::string> names_;
    std::vector<QuadPoly> param_in_vars_;  // old parameter -> new variables
};

QuadPoly component_poly(const EliminationContext& ctx, const Loop& l);

struct Stage {
    enum class Kind { Solve, Condition };
    Kind kind = Kind::Solve;
    std::string label;
    std::string component;  // "top,bottom"
    std::string variable;   // Solve only
    std::string requires_label;  // run only in branches whose trail has this label
    // labels for roots equal to known values; remaining roots take `other_labels` in order
    std::vector<std::pair<std::string, RadicalScalar>> known_roots;
    std::vector<std::string> other_labels;
    // a root that may be discarded, and the argument for doing so
    std::optional<std::pair<RadicalScalar, std::string>> prune;
};

std::vector<Target> default_targets();
std::vector<Stage> default_script(Omega omega);

struct StageRecord {
    std::string label;
    std::string component;
    std::string variable;
    std::string polynomial;  // after substitutions
    std::vector<std::pair<std::string, RadicalScalar>> values;  // branch label, value
    std::string note;
};

enum class Outcome { Open, Contradiction, Condition };
std::string outcome_name(Outcome o);

struct FactorInfo {
    ZPoly factor;
    int multiplicity = 1;
    int roots_gt1 = 0;
};

struct BranchState {
    std::map<int, RadicalScalar> substitutions;  // variable index -> value
    std::vector<std::string> trail;
    std::vector<std::pair<std::string, RationalFunction>> root_symbols;  // name, radicand
    std::vector<RationalFunction> side_conditions;
    std::vector<StageRecord> history;
    Outcome outcome = Outcome::Open;
    std::string final_stage;
    RationalFunction final_value;
    std::vector<FactorInfo> final_factors;  // of the numerator
    std::string error;  // diagnostic when a stage could not be carried out

    bool has_label(const std::string& l) const;
    std::string trail_string() const;
};

struct EliminationResult {
    Omega omega;
    std::vector<std::string> variables;
    std::vector<BranchState> leaves;
    std::vector<std::string> pruned;
    std::vector<RationalFunction> side_conditions;  // solution space and all stage divisors
    bool side_conditions_certified = false;
    SolutionSpace space;
    bool aborted() const;
    nlohmann::json to_json() const;
};

EliminationResult run_elimination(const EliminationContext& ctx, const std::vector<Stage>& script);
EliminationResult run_elimination(Omega omega, const CollapseOptions& opt = {});

// Value of an entry in a branch after all its substitutions.
QuadPoly evaluate_entry(const EliminationContext& ctx, const BranchState& b, const std::string& entry);

// Every root of a rational function (numerator or denominator) lies outside (1, oo).
bool root_free_gt1(const RationalFunction& f);

struct AdmissibleIndex {
    ZPoly factor;
    RationalInterval root;
    Interval index;
    bool haagerup = false;
    std::string exact;  // closed form when known
};

std::vector<AdmissibleIndex> admissible_indices(const std::vector<EliminationResult>& results, int digits = 30);

enum class VerdictKind { Obstructed, Consistent, HypothesisNotMet, Undecided };

struct Verdict {
    std::string graph;
    VerdictKind kind = VerdictKind::Undecided;
    HypothesisReport hypothesis;  // of the member that was checked
    std::optional<Interval> index;
    bool haagerup_index = false;  // Consistent: the matching admissible index is the Haagerup one
    std::string detail;
    std::string name() const;
    nlohmann::json to_json() const;
};

Verdict verdict(const GraphPair& g, const std::vector<AdmissibleIndex>& admissible, int digits = 30,
                double tol = 1e-20);

}  // namespace pgo
