#ifndef POTTSLAB_TUTTE_HPP
#define POTTSLAB_TUTTE_HPP

#include "pottslab/bivar_poly.hpp"
#include "pottslab/dc_engine.hpp"
#include "pottslab/multigraph.hpp"

namespace pottslab {

/// Tutte polynomial t(G;x,y) by deletion-contraction. Edgeless graphs give
/// the constant 1; the result is multiplicative over components and
/// one-point joins.
BivarPoly tutte(const Multigraph& g, const EngineOptions& opt = {});

/// Spanning-subgraph expansion sum over all 2^|E| edge subsets A:
///   sum (x-1)^(k(A)-k(G)) (y-1)^(nullity(A)).
/// Independent route used to cross-check tutte(); refuses |E| > max_edges.
BivarPoly tutte_subgraph_expansion(const Multigraph& g, int max_edges = 20);

/// Dichromatic polynomial Z(G;u,v) = sum over edge subsets of u^k(A) v^|A|,
/// the convention under which u^k(G) v^(|V|-k(G)) t(G;(u+v)/v, v+1) = Z.
BivarPoly dichromatic(const Multigraph& g, const EngineOptions& opt = {});

/// Chromatic polynomial by direct deletion-contraction
/// (C(G;x) = C(G-e;x) - C(G/e;x), edgeless on n vertices -> x^n).
/// Returned as a BivarPoly in ("x","y") with zero y-degree.
BivarPoly chromatic(const Multigraph& g, const EngineOptions& opt = {});

/// Chromatic polynomial via the Tutte specialization
/// C(G;x) = (-1)^(|V|-k) x^k t(G;1-x,0). Independent of chromatic().
BivarPoly chromatic_via_tutte(const Multigraph& g, const EngineOptions& opt = {});

/// Generalized deletion-contraction invariant of Theorem-3.1 shape:
/// f(single vertex) = 1, f(G) = a f(G-e) + b f(G/e) away from loops and
/// bridges, multiplicative over unions/joins, f(K2) = x0, f(loop) = y0.
struct DCInvariantSpec {
    BigRat a;
    BigRat b;
    BigRat x0;
    BigRat y0;
};

/// Closed form a^nullity b^rank t(G; x0/b, y0/a), evaluated exactly.
BigRat dc_invariant_eval(const Multigraph& g, const DCInvariantSpec& spec,
                         const EngineOptions& opt = {});

/// The same invariant by direct recursion; independent checker for
/// dc_invariant_eval.
BigRat dc_invariant_recursion(const Multigraph& g, const DCInvariantSpec& spec,
                              const EngineOptions& opt = {});

}  // namespace pottslab

#endif
