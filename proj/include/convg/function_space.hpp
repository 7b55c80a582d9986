#pragma once

#include "convg/constructions.hpp"

namespace convg {

/// C(X,Y) with the continuous convergence: a set G of continuous maps
/// converges to f iff G[A] converges to f(x) whenever A converges to x.
/// Functions are listed in lexicographic graph order and labeled f0, f1, ...
struct FunctionSpace {
    Preconvergence source;
    Preconvergence target;
    std::vector<std::vector<int>> functions;
    Preconvergence space;

    int function_index(const std::vector<int>& graph) const;
    SpaceMap as_map(int index) const;
};

std::string function_label(int index);

/// All continuous maps X -> Y, lexicographic on graphs.
std::vector<std::vector<int>> continuous_maps(const Preconvergence& x, const Preconvergence& y);

FunctionSpace continuous_convergence(const Preconvergence& x, const Preconvergence& y);

/// ev : C(X,Y) × X -> Y over the product of the continuous convergence with X.
SpaceMap eval_map(const FunctionSpace& fs);

struct CurryResult {
    SpaceMap tilde;       // Z -> C(X,Y)
    FunctionSpace space;  // the C(X,Y) it lands in
};

/// Transposes a continuous h : Z×X -> Y to h̃ : Z -> C(X,Y), h̃(z) = h(z,·).
/// The factors must be passed because the product carrier alone does not
/// determine them. Requires h continuous.
CurryResult curry(const SpaceMap& h, const Preconvergence& z, const Preconvergence& x);

/// ev ∘ (k × id_X) : Z×X -> Y for a continuous k : Z -> C(X,Y).
SpaceMap uncurry(const SpaceMap& k, const FunctionSpace& fs);

/// Builds ∘ : C(X,Y) × C(Y,Z) -> C(X,Z) over continuous convergences and
/// reports its continuity (guaranteed for limit spaces).
bool verify_composition_continuity(const Preconvergence& x, const Preconvergence& y,
                                   const Preconvergence& z);

}  // namespace convg
