#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdm/types.hpp"

namespace qdm {

/// Which state space an operator lives on.
///
/// Single-dot spaces are Dot3 = {0, 1, s} and Dot4 = {0, 1, s, t}. Product
/// spaces (Full9, Full16) are ordered with the second dot varying fastest.
/// Symmetric9/Symmetric16 are the same spaces rotated onto exchange
/// symmetric/antisymmetric combinations; their leading labels coincide with
/// Effective6/Effective8. Dressed8 is Effective8 with the single-trion block
/// replaced by tunneling-dressed states.
enum class BasisKind {
  Dot3,
  Dot4,
  Qubit,
  TwoQubit,
  Effective6,
  Effective8,
  Dressed8,
  Full9,
  Full16,
  Symmetric9,
  Symmetric16,
  Custom,
};

std::string_view to_string(BasisKind kind);

class ModelBasis {
 public:
  ModelBasis(BasisKind kind, std::vector<std::string> labels);

  static ModelBasis dot3();
  static ModelBasis dot4();
  static ModelBasis qubit();
  static ModelBasis two_qubit();
  /// |00>, |S01>, |A01>, |11>, |S0s>, |S1s>
  static ModelBasis effective6();
  /// effective6() followed by |S0t>, |S1t>
  static ModelBasis effective8();
  /// |00>, |S01>, |A01>, |11>, |psi1>, |psi3>, |psi2>, |psi4>
  static ModelBasis dressed8();
  static ModelBasis full9();
  static ModelBasis full16();
  static ModelBasis symmetric9();
  static ModelBasis symmetric16();
  static ModelBasis custom(std::vector<std::string> labels);

  BasisKind kind() const { return kind_; }
  const std::vector<std::string>& labels() const { return labels_; }
  Index dim() const { return static_cast<Index>(labels_.size()); }

  std::optional<Index> find(std::string_view label) const;
  /// Throws BasisError when the label is absent.
  Index index_of(std::string_view label) const;
  bool contains(std::string_view label) const { return find(label).has_value(); }

  bool operator==(const ModelBasis&) const = default;

 private:
  BasisKind kind_;
  std::vector<std::string> labels_;
};

/// Product-space basis of two single-dot bases of the same kind.
ModelBasis product_basis(const ModelBasis& a, const ModelBasis& b);

}  // namespace qdm
