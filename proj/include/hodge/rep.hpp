#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hodge/common.hpp"
#include "hodge/hyp.hpp"

namespace hodge::rep {

/// Homomorphism from the genus-g surface group to SL_n(C), given by the
/// images of a1, b1, ..., ag, bg.
struct Representation {
  int genus = 2;
  int n = 2;
  std::vector<CMat> images;

  /// Image of a letter in {±1..±2g}.
  CMat letter(int l) const;
  /// Image of a word, multiplied left to right.
  CMat image(const std::vector<int>& letters) const;
  CMat image(const hyp::GroupWord& w) const { return image(w.letters); }
};

/// The identity representation of the group's own generators (n = 2).
Representation from_group(const hyp::FuchsianGroup& g);
/// All generators sent to the identity.
Representation trivial(int n, int genus = 2);
/// emb o rho for a 2-dimensional rho.
Representation compose_principal(int n, const Representation& rho2);
/// Named data for experiments: "fuchsian" (octagon group, through the principal
/// embedding when n > 2), "trivial", "unitary" (commuting diagonal phases),
/// "diagonal" (a1 -> diag(2, 1/2, 1, ...)), "unipotent" (a1 -> I + E_12).
Representation named_representation(const std::string& name, int n);
/// g rho g^-1.
Representation conjugate(const Representation& rho, const CMat& g);

/// Max-entry norm of prod_i [A_i, B_i] - I, with [A, B] = A B A^-1 B^-1.
double relation_residual_rep(const Representation& rho);
/// Same, but the product compared to whichever of ±I is closer.
double relation_residual_signed(const Representation& rho);

/// Sym^{n-1} action on binary forms of degree n-1 in the monomial basis
/// x^{n-1}, x^{n-2} y, ..., y^{n-1}.
CMat principal_embedding(int n, const CMat& m);

/// dim of {X : X A_i = A_i X for all i}; 1 means irreducible.
int commutant_dimension(const Representation& rho, double rel_threshold = 1e-8);

/// max over word-ball images M of ||M^* M - I|| (max-entry norm).
double unitarity_margin(const Representation& rho, int radius);

/// 3, 5, ..., 2n-1: the trace-free part of End(Sym^{n-1}).
std::vector<int> clebsch_gordon_dims(int n);

struct ModuliDimensions {
  long long betti = 0;
  long long hitchin_base = 0;
  /// eichler_h1[q - 2] = dim H^1 with coefficients in Sym^{2q-2}, q = 2..n
  std::vector<long long> eichler_h1;
};
ModuliDimensions moduli_dimensions(int n, int g);
/// 2 (2q-1)(g-1)
long long eichler_h1(int q, int g);

nlohmann::json to_json(const Representation& rho);
Representation representation_from_json(const nlohmann::json& j);

}  // namespace hodge::rep
