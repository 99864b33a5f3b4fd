#pragma once

#include <string>
#include <vector>

#include "gkdim/graded_poly.hpp"
#include "gkdim/iwasawa_algebra.hpp"

namespace gkdim {

/// p^{N+2} pi^{e+R} x_rho (kinds e,f,h,z) or its square times the Casimir
/// element (kind 'D'), realized in the truncated algebra.
struct ScaledLieElement {
  char kind = 'e';
  int k = 0;
  int N = 0;
  Series series;
};

struct EpsKExpansion {
  std::vector<GradedPoly> c;  // c[i] multiplies eps_K^i
  int dC = 0;
};

/// Coefficients y_t of the scaled generator on psi(h_t^{p^N}) for every
/// basis index t (zero where unused), as elements of the coefficient field L.
std::vector<FieldElement> scaled_generator_coefficients(const GroupContext& G, char kind, int k);

ScaledLieElement scaled_generator(const AlgebraContext& A, char kind, int k, int N);
ScaledLieElement casimir_series(const AlgebraContext& A, int k, int N);
/// p^{N+2} pi^{e+R} as an element of L.
FieldElement generator_scale(const GroupContext& G, int N);

/// Closed-form symbol in the basis variables; kind in {e,f,h,z,D}.
GradedPoly predicted_symbol(const GroupContext& G, char kind, int k, int N);

/// Class variables x_{k,j}: GL2 kinds e,f,h,z with 0<=k<f; quaternion kinds
/// w (0<=k<2f), h, z (0<=k<f).
std::vector<std::string> class_variable_names(const GroupContext& G);
int class_variable_index(const GroupContext& G, char kind, int k, int j);
/// Linear form of each class variable in the basis variables.
GradedPoly class_variable_in_basis(const GroupContext& G, int index);
GradedPoly class_to_basis(const GroupContext& G, const GradedPoly& p);

/// eps_K-expansion of the predicted N = 0 symbol in the class variables;
/// kind 'D' (Casimir) or 'z'.
EpsKExpansion casimir_coefficients(const GroupContext& G, char kind, int k);
/// eps_K-expansion of a computed symbol; throws if it is not a polynomial
/// in eps of degree at most dC.
EpsKExpansion expand_in_eps(const GradedPoly& symbol, int dC);

}  // namespace gkdim
